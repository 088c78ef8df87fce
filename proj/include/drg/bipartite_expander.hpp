#pragma once

// Amplifies the base grid expander into a delta-bipartite expander by
// layering (iterated parent closure), then truncates the square graph down
// to an arbitrary side size N. Layering multiplies the neighborhood of any
// small set by at least (1 + d*delta) per layer, so a fixed number of layers
// L(delta) suffices; truncation works because m(N)^2 never exceeds 2N.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "drg/adjacency.hpp"
#include "drg/gabber_galil.hpp"

namespace drg {

// Layers needed for the layered grid graph to be a delta-bipartite
// expander. Clamped to >= 1: for delta > 0.5 the raw expression drops below
// one, and a single layer is already a ~0.49-bipartite expander, which
// covers that range.
inline std::int64_t layer_count(double delta) {
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::domain_error("layer_count: delta must lie in (0,1)");
    double ratio =
        std::log((1.0 - delta) / delta) / std::log1p(kGridExpansionD * delta);
    auto layers = static_cast<std::int64_t>(std::ceil(ratio)) + 1;
    return std::max<std::int64_t>(layers, 1);
}

// Smallest grid side whose square covers n. Guarantees n <= m^2 <= 2n - 1.
inline NodeIndex m_of(NodeIndex n) {
    if (n < 1) throw std::domain_error("m_of: size must be positive");
    auto m = static_cast<NodeIndex>(std::llround(std::sqrt(static_cast<double>(n))));
    while (m > 1 && (m - 1) * (m - 1) >= n) --m;
    while (m * m < n) ++m;
    return m;
}

// Parent set of j after `iterations` rounds of closure under the grid maps.
// Map 0 is the identity, so the sets only grow; a round that adds nothing
// is a fixed point and the loop stops early. Result is ascending-sorted.
inline std::vector<NodeIndex> get_parents_layered(NodeIndex m,
                                                  std::int64_t iterations,
                                                  NodeIndex j) {
    if (iterations < 1)
        throw std::domain_error("get_parents_layered: need at least one layer");
    detail::check_side(m);
    if (j < 1 || j > m * m)
        throw std::domain_error("get_parents_layered: node id out of range");
    const NodeIndex full = m * m;
    std::vector<NodeIndex> cur{j};
    std::vector<NodeIndex> next;
    for (std::int64_t step = 0; step < iterations; ++step) {
        next.clear();
        next.reserve(cur.size() * kGridMapCount);
        for (NodeIndex u : cur) {
            GridPair p = int_to_pair(m, u);
            for (int k = 0; k < kGridMapCount; ++k)
                next.push_back(pair_to_int(m, sigma(k, m, p)));
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next.size() == cur.size()) break;  // fixed point
        cur = next;
        if (static_cast<NodeIndex>(cur.size()) == full) break;  // saturated
    }
    return cur;
}

// Parent set of j in the truncated expander on [n]: the layered graph on
// the m(n) grid, long enough to be a (delta/2)-expander there, restricted
// to ids <= n. The halving absorbs the slack between n and m(n)^2, so the
// truncated graph is a delta-bipartite expander on [n].
// layer_override replaces the derived layer count; overridden graphs carry
// no expansion guarantee.
inline std::vector<NodeIndex> get_parents_be(
    NodeIndex n, double delta, NodeIndex j,
    std::optional<std::int64_t> layer_override = std::nullopt) {
    if (n < 1) throw std::domain_error("get_parents_be: size must be positive");
    if (j < 1 || j > n)
        throw std::domain_error("get_parents_be: node id out of range");
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::domain_error("get_parents_be: delta must lie in (0,1)");
    if (layer_override && *layer_override < 1)
        throw std::domain_error("get_parents_be: layer override must be positive");
    std::int64_t layers = layer_override ? *layer_override : layer_count(delta / 2.0);
    std::vector<NodeIndex> out = get_parents_layered(m_of(n), layers, j);
    out.erase(std::upper_bound(out.begin(), out.end(), n), out.end());
    return out;
}

inline BipartiteAdjacency materialize_layered(NodeIndex m, std::int64_t iterations) {
    detail::check_side(m);
    BipartiteAdjacency g;
    g.n = m * m;
    g.parents.reserve(static_cast<std::size_t>(g.n));
    for (NodeIndex j = 1; j <= g.n; ++j)
        g.parents.push_back(get_parents_layered(m, iterations, j));
    return g;
}

inline BipartiteAdjacency materialize_be(
    NodeIndex n, double delta,
    std::optional<std::int64_t> layer_override = std::nullopt) {
    BipartiteAdjacency g;
    g.n = n;
    g.parents.reserve(static_cast<std::size_t>(n));
    for (NodeIndex j = 1; j <= n; ++j)
        g.parents.push_back(get_parents_be(n, delta, j, layer_override));
    return g;
}

}  // namespace drg
