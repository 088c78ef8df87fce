#pragma once

// Materialized graph forms consumed by the exact checkers and file IO.
// Both store, for every node, its ascending duplicate-free parent list.

#include <cstdint>
#include <string>
#include <vector>

#include "drg/types.hpp"

namespace drg {

namespace detail {

inline void check_parent_list(const std::vector<NodeIndex>& ps, NodeIndex lo,
                              NodeIndex hi, NodeIndex node) {
    NodeIndex prev = 0;
    for (NodeIndex u : ps) {
        if (u < lo || u > hi)
            throw std::invalid_argument("adjacency: parent " + std::to_string(u) +
                                        " of node " + std::to_string(node) +
                                        " out of range");
        if (u <= prev)
            throw std::invalid_argument("adjacency: parents of node " +
                                        std::to_string(node) +
                                        " not strictly ascending");
        prev = u;
    }
}

}  // namespace detail

// Bipartite graph ((A,B),E) with n nodes per side. parents[j-1] lists the
// A-side endpoints of the edges into B-side node j.
struct BipartiteAdjacency {
    NodeIndex n = 0;
    std::vector<std::vector<NodeIndex>> parents;

    void validate() const {
        if (n < 1) throw std::invalid_argument("adjacency: empty side");
        if (static_cast<NodeIndex>(parents.size()) != n)
            throw std::invalid_argument("adjacency: parent table size mismatch");
        for (NodeIndex j = 1; j <= n; ++j)
            detail::check_parent_list(parents[j - 1], 1, n, j);
    }

    std::uint64_t edge_count() const {
        std::uint64_t total = 0;
        for (const auto& ps : parents) total += ps.size();
        return total;
    }

    std::int64_t max_indegree() const {
        std::size_t best = 0;
        for (const auto& ps : parents) best = std::max(best, ps.size());
        return static_cast<std::int64_t>(best);
    }
};

// DAG on [n] whose node numbering is topological: parents[v-1] holds only
// ids strictly below v.
struct DagAdjacency {
    NodeIndex n = 0;
    std::vector<std::vector<NodeIndex>> parents;

    void validate() const {
        if (n < 1) throw std::invalid_argument("adjacency: empty graph");
        if (static_cast<NodeIndex>(parents.size()) != n)
            throw std::invalid_argument("adjacency: parent table size mismatch");
        for (NodeIndex v = 1; v <= n; ++v)
            detail::check_parent_list(parents[v - 1], 1, v - 1, v);
    }

    std::uint64_t edge_count() const {
        std::uint64_t total = 0;
        for (const auto& ps : parents) total += ps.size();
        return total;
    }

    std::int64_t max_indegree() const {
        std::size_t best = 0;
        for (const auto& ps : parents) best = std::max(best, ps.size());
        return static_cast<std::int64_t>(best);
    }
};

}  // namespace drg
