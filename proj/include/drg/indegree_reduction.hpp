#pragma once

// Indegree-2 transform of the navigable DAG: node v becomes a chain of
// 2*beta nodes (v,1)..(v,2*beta), chains are concatenated in node order,
// and the i-th expander parent of v attaches to chain position i from the
// end of its own chain. beta bounds the indegree of the base graph, so
// every expander edge finds a slot; each reduced node keeps at most two
// parents (its chain predecessor plus at most one expander edge).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "drg/adjacency.hpp"
#include "drg/egs_graph.hpp"

namespace drg {

struct ReducedNode {
    NodeIndex v = 0;     // base node, 1..N
    std::int64_t i = 0;  // chain position, 1..2*beta

    friend bool operator==(const ReducedNode&, const ReducedNode&) = default;
};

// Chains laid out consecutively: (v,i) -> (v-1)*2*beta + i.
inline NodeIndex flat_index(ReducedNode node, std::int64_t beta) {
    if (beta < 1) throw std::domain_error("flat_index: beta must be positive");
    if (node.v < 1 || node.i < 1 || node.i > 2 * beta)
        throw std::domain_error("flat_index: node out of range");
    return (node.v - 1) * (2 * beta) + node.i;
}

inline ReducedNode node_from_flat(NodeIndex idx, std::int64_t beta) {
    if (beta < 1) throw std::domain_error("node_from_flat: beta must be positive");
    if (idx < 1) throw std::domain_error("node_from_flat: index out of range");
    return ReducedNode{(idx - 1) / (2 * beta) + 1, (idx - 1) % (2 * beta) + 1};
}

// Parents of chain node (v,i): the chain predecessor ((v,i-1), or the tail
// of chain v-1 when i = 1), plus the i-th smallest expander parent of v
// when there is one. Returned in flat order, deduplicated; size <= 2.
inline std::vector<ReducedNode> get_parents_low_indeg(
    double delta, NodeIndex n_nodes, NodeIndex v, std::int64_t i,
    std::optional<std::int64_t> layer_override = std::nullopt) {
    const std::int64_t beta = max_indegree_bound(delta, n_nodes, layer_override);
    if (v < 1 || v > n_nodes)
        throw std::domain_error("get_parents_low_indeg: base node out of range");
    if (i < 1 || i > 2 * beta)
        throw std::domain_error("get_parents_low_indeg: chain position out of range");

    std::vector<ReducedNode> out;
    if (i > 1)
        out.push_back(ReducedNode{v, i - 1});
    else if (v > 1)
        out.push_back(ReducedNode{v - 1, 2 * beta});

    const std::vector<NodeIndex> base = get_parents_egs(delta, v, n_nodes, layer_override);
    if (i <= static_cast<std::int64_t>(base.size())) {
        ReducedNode u{base[static_cast<std::size_t>(i - 1)], 2 * beta};
        if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
    }
    std::sort(out.begin(), out.end(), [](const ReducedNode& a, const ReducedNode& b) {
        return a.v != b.v ? a.v < b.v : a.i < b.i;
    });
    return out;
}

// Full reduced graph over flat indices 1..2*N*beta. The chain predecessor
// of any node is exactly the previous flat index, and base node u's chain
// tail sits at u*2*beta.
inline DagAdjacency materialize_low_indeg(const EgsParams& params) {
    params.validate();
    const std::int64_t beta =
        max_indegree_bound(params.delta, params.n_nodes, params.layer_override);
    const std::int64_t chain = 2 * beta;
    const DagAdjacency base = materialize_egs(params);

    DagAdjacency g;
    g.n = params.n_nodes * chain;
    g.parents.assign(static_cast<std::size_t>(g.n), {});
    for (NodeIndex v = 1; v <= params.n_nodes; ++v) {
        const std::vector<NodeIndex>& bp = base.parents[v - 1];
        for (std::int64_t i = 1; i <= chain; ++i) {
            const NodeIndex flat = (v - 1) * chain + i;
            auto& dst = g.parents[flat - 1];
            if (flat > 1 && (i > 1 || v > 1)) dst.push_back(flat - 1);
            if (i <= static_cast<std::int64_t>(bp.size())) {
                const NodeIndex tail = bp[static_cast<std::size_t>(i - 1)] * chain;
                if (dst.empty() || dst.back() != tail) dst.push_back(tail);
            }
            // tail <= (v-1)*chain <= flat-1, so a sort is only needed when
            // both entries exist and arrived out of order
            if (dst.size() == 2 && dst[0] > dst[1]) std::swap(dst[0], dst[1]);
        }
    }
    return g;
}

}  // namespace drg
