#pragma once

// The locally navigable DAG on N = 2^n nodes. Every node v derives its
// parents from (a) a fixed window of the 4n immediately preceding nodes and
// (b) block-shifted copies of the truncated bipartite expander at every
// power-of-two scale below v: at scale 2^t the expander neighborhood of v's
// offset inside its block is replayed against up to 10 earlier blocks.
// Parent sets are computed on demand in polylogarithmic time, and the whole
// family is a delta-local expander (hence depth-robust) for the derived
// layer counts.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "drg/adjacency.hpp"
#include "drg/bipartite_expander.hpp"

namespace drg {

inline bool is_power_of_two(NodeIndex v) { return v >= 1 && (v & (v - 1)) == 0; }

namespace detail {

inline int log2_exact(NodeIndex v) {
    int t = 0;
    while ((NodeIndex(1) << t) < v) ++t;
    return t;
}

// Smallest t with 2^t >= v; 0 for v = 1.
inline int ceil_log2(NodeIndex v) { return log2_exact(v); }

inline void check_egs_args(double delta, NodeIndex n_nodes,
                           const std::optional<std::int64_t>& layer_override) {
    if (!is_power_of_two(n_nodes))
        throw std::domain_error("navigable dag: size must be a power of two");
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::domain_error("navigable dag: delta must lie in (0,1)");
    if (layer_override && *layer_override < 1)
        throw std::domain_error("navigable dag: layer override must be positive");
}

// Core parent derivation; `be` supplies (block size, offset) -> parent set
// in the truncated expander of that block size, so callers can memoize.
template <typename BeFn>
inline std::vector<NodeIndex> egs_parents_impl(NodeIndex v, NodeIndex n_nodes,
                                               int n_bits, BeFn&& be) {
    std::vector<NodeIndex> out;
    for (NodeIndex w = std::max<NodeIndex>(1, v - 4 * n_bits); w <= v - 1; ++w)
        out.push_back(w);
    const int t_max = ceil_log2(v);
    for (int t = 1; t <= t_max; ++t) {
        const NodeIndex block = NodeIndex(1) << t;
        const NodeIndex m = v / block;
        const NodeIndex x = v % block;
        const std::vector<NodeIndex>& b = be(block, x + 1);
        const NodeIndex shifts = std::min<NodeIndex>(m, 10);
        for (NodeIndex y : b)
            for (NodeIndex sh = 1; sh <= shifts; ++sh) {
                const NodeIndex cand = (m - sh) * block + y;
                if (cand >= 1 && cand < v) out.push_back(cand);
            }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    (void)n_nodes;  // candidates are < v <= n_nodes by construction
    return out;
}

}  // namespace detail

struct EgsParams {
    NodeIndex n_nodes = 0;
    double delta = 0.0;
    std::optional<std::int64_t> layer_override;  // voids the expansion guarantee

    void validate() const { detail::check_egs_args(delta, n_nodes, layer_override); }
};

// Target-gap to expander-parameter mapping: the navigable DAG built with
// delta(epsilon) withstands removing all but an epsilon fraction of nodes.
// The closed form solves (1+eps) = (1+2.1*delta)/(1-2.1*delta); inputs above
// 1/3 clamp to the value at 1/3.
inline double delta_for_epsilon(double epsilon) {
    if (!(epsilon > 0.0))
        throw std::domain_error("delta_for_epsilon: epsilon must be positive");
    const double e = std::min(epsilon, 1.0 / 3.0);
    return e / (2.1 * (2.0 + e));
}

inline std::vector<NodeIndex> get_parents_egs(
    double delta, NodeIndex v, NodeIndex n_nodes,
    std::optional<std::int64_t> layer_override = std::nullopt) {
    detail::check_egs_args(delta, n_nodes, layer_override);
    if (v < 1 || v > n_nodes)
        throw std::domain_error("get_parents_egs: node id out of range");
    const int n_bits = detail::log2_exact(n_nodes);
    std::vector<NodeIndex> buf;
    return detail::egs_parents_impl(
        v, n_nodes, n_bits,
        [&](NodeIndex block, NodeIndex j) -> const std::vector<NodeIndex>& {
            buf = get_parents_be(block, delta / 5.0, j, layer_override);
            return buf;
        });
}

// Upper bound on the indegree of any node, from the window size plus the
// shift copies of the largest possible expander neighborhood (5^L images,
// saturating at the block size). Clamped to >= 1 so downstream per-node
// paths are never empty.
inline std::int64_t max_indegree_bound(
    double delta, NodeIndex n_nodes,
    std::optional<std::int64_t> layer_override = std::nullopt) {
    detail::check_egs_args(delta, n_nodes, layer_override);
    const int n_bits = detail::log2_exact(n_nodes);
    const std::int64_t layers =
        layer_override ? *layer_override : layer_count(delta / 10.0);
    std::int64_t reach = 1;
    for (std::int64_t i = 0; i < layers && reach < n_nodes; ++i) {
        if (reach > n_nodes / 5 + 1)
            reach = n_nodes;
        else
            reach *= 5;
    }
    const std::int64_t branch = std::min<std::int64_t>(reach, n_nodes);
    const std::int64_t bound = 4LL * n_bits + 10LL * n_bits * branch;
    return std::max<std::int64_t>(bound, 1);
}

// Materializes the full DAG, memoizing the per-(block size, offset)
// expander neighborhoods shared across nodes.
inline DagAdjacency materialize_egs(const EgsParams& params) {
    params.validate();
    DagAdjacency g;
    g.n = params.n_nodes;
    g.parents.reserve(static_cast<std::size_t>(g.n));
    const int n_bits = detail::log2_exact(params.n_nodes);
    std::map<std::pair<NodeIndex, NodeIndex>, std::vector<NodeIndex>> cache;
    auto be = [&](NodeIndex block, NodeIndex j) -> const std::vector<NodeIndex>& {
        auto key = std::make_pair(block, j);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache
                     .emplace(key, get_parents_be(block, params.delta / 5.0, j,
                                                  params.layer_override))
                     .first;
        return it->second;
    };
    for (NodeIndex v = 1; v <= params.n_nodes; ++v)
        g.parents.push_back(
            detail::egs_parents_impl(v, params.n_nodes, n_bits, be));
    return g;
}

struct GraphStats {
    NodeIndex nodes = 0;
    std::uint64_t edges = 0;
    std::int64_t max_indegree = 0;
    double mean_indegree = 0.0;
    std::int64_t indegree_bound = 0;
};

inline GraphStats graph_stats(const EgsParams& params) {
    DagAdjacency g = materialize_egs(params);
    GraphStats st;
    st.nodes = g.n;
    st.edges = g.edge_count();
    st.max_indegree = g.max_indegree();
    st.mean_indegree =
        static_cast<double>(st.edges) / static_cast<double>(st.nodes);
    st.indegree_bound =
        max_indegree_bound(params.delta, params.n_nodes, params.layer_override);
    return st;
}

}  // namespace drg
