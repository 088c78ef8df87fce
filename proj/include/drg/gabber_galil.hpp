#pragma once

// Explicit bipartite expander on the m x m grid: both sides are the grid
// points, and output j is connected to the five inputs obtained by applying
// fixed modular-affine maps to j's coordinates. The resulting graph is an
// (N=m^2, k=5, d=(2-sqrt(3))/4)-expander, and that is the seed every other
// construction in this library amplifies.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "drg/adjacency.hpp"
#include "drg/types.hpp"

namespace drg {

// Number of affine maps, i.e. the indegree of every output node before
// deduplication.
inline constexpr int kGridMapCount = 5;

// Expansion constant d of the grid construction.
inline const double kGridExpansionD = (2.0 - std::sqrt(3.0)) / 4.0;

namespace detail {

inline void check_side(NodeIndex m) {
    if (m < 1) throw std::domain_error("grid: side length must be positive");
    if (m > (NodeIndex(1) << 31))
        throw std::domain_error("grid: side length too large");
}

}  // namespace detail

// Row-major ranking of grid points into node ids 1..m^2.
inline NodeIndex pair_to_int(NodeIndex m, GridPair p) {
    detail::check_side(m);
    if (p.x < 0 || p.x >= m || p.y < 0 || p.y >= m)
        throw std::domain_error("pair_to_int: pair out of range for m=" +
                                std::to_string(m));
    return p.x * m + p.y + 1;
}

inline GridPair int_to_pair(NodeIndex m, NodeIndex z) {
    detail::check_side(m);
    if (z < 1 || z > m * m)
        throw std::domain_error("int_to_pair: node id " + std::to_string(z) +
                                " out of range for m=" + std::to_string(m));
    return GridPair{(z - 1) / m, (z - 1) % m};
}

// The five maps: identity, two row shears, two column shears. Coordinate
// sums are reduced mod m, so each map is a permutation of the grid.
inline GridPair sigma(int k, NodeIndex m, GridPair p) {
    detail::check_side(m);
    if (p.x < 0 || p.x >= m || p.y < 0 || p.y >= m)
        throw std::domain_error("sigma: pair out of range");
    switch (k) {
        case 0: return p;
        case 1: return GridPair{p.x, (p.x + p.y) % m};
        case 2: return GridPair{p.x, (p.x + p.y + 1) % m};
        case 3: return GridPair{(p.x + p.y) % m, p.y};
        case 4: return GridPair{(p.x + p.y + 1) % m, p.y};
        default:
            throw std::domain_error("sigma: map index must be in [0,4]");
    }
}

// Parent set of output node j: the images of j under all five maps,
// deduplicated and ascending. Always contains j itself (map 0).
inline std::vector<NodeIndex> get_parents_gg(NodeIndex m, NodeIndex j) {
    GridPair p = int_to_pair(m, j);
    std::vector<NodeIndex> out;
    out.reserve(kGridMapCount);
    for (int k = 0; k < kGridMapCount; ++k)
        out.push_back(pair_to_int(m, sigma(k, m, p)));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline BipartiteAdjacency materialize_gg(NodeIndex m) {
    detail::check_side(m);
    BipartiteAdjacency g;
    g.n = m * m;
    g.parents.reserve(static_cast<std::size_t>(g.n));
    for (NodeIndex j = 1; j <= g.n; ++j) g.parents.push_back(get_parents_gg(m, j));
    return g;
}

}  // namespace drg
