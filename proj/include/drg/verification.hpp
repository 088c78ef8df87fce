#pragma once

// Exact combinatorial oracles: longest path, delta-bipartite expansion,
// (N,k,d)-expansion, delta-local expansion, exact (e,d) depth-robustness,
// gamma-goodness, and the bit-partition depth-reduction attack.
//
// The subset checkers enumerate exhaustively and refuse instances that are
// too large (guard_error) instead of silently sampling. Every negative
// answer comes with a witness the caller can re-verify by direct scanning.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "drg/adjacency.hpp"
#include "drg/types.hpp"

namespace drg {

enum class RobustnessMode { exact, attack_upper_bound };

struct RobustnessReport {
    std::int64_t e = 0;  // removal budget that was requested / used
    std::vector<NodeIndex> worst_set;
    std::int64_t residual_depth = 0;  // edges on the longest surviving path
    RobustnessMode mode = RobustnessMode::exact;
};

// Failure evidence for the delta-bipartite property: an input set x of size
// ceil(delta*n) and an output set y of size >= delta*n with no edge from x
// into y. pass=true leaves both empty.
struct BipartiteWitness {
    bool pass = true;
    std::vector<NodeIndex> x;
    std::vector<NodeIndex> y;
};

struct NkdWitness {
    bool pass = true;
    bool edge_budget_ok = true;
    std::uint64_t edges = 0;
    char side = 'A';                // side holding the violating subset
    std::vector<NodeIndex> subset;  // subset whose neighborhood is too small
};

struct LocalExpanderWitness {
    bool pass = true;
    NodeIndex v = 0;  // window start
    NodeIndex r = 0;  // window radius
    std::vector<NodeIndex> x;  // absolute node ids in [v, v+r)
    std::vector<NodeIndex> y;  // absolute node ids in [v+r, v+2r)
};

// Longest path measured in edges, by one scan over the topological order.
inline std::int64_t longest_path(const DagAdjacency& g) {
    g.validate();
    std::vector<std::int64_t> depth(static_cast<std::size_t>(g.n) + 1, 0);
    std::int64_t best = 0;
    for (NodeIndex v = 1; v <= g.n; ++v) {
        std::int64_t dv = 0;
        for (NodeIndex u : g.parents[v - 1]) dv = std::max(dv, depth[u] + 1);
        depth[v] = dv;
        best = std::max(best, dv);
    }
    return best;
}

namespace detail {

// Advance a lexicographic size-s combination over {0,..,n-1}. Returns the
// lowest position that changed, or -1 when exhausted.
inline int advance_combination(std::vector<int>& c, int n) {
    int s = static_cast<int>(c.size());
    int idx = s - 1;
    while (idx >= 0 && c[idx] == n - s + idx) --idx;
    if (idx < 0) return -1;
    ++c[idx];
    for (int t = idx + 1; t < s; ++t) c[t] = c[t - 1] + 1;
    return idx;
}

// Union size of the smallest neighborhood among size-s subsets, tracked via
// prefix ORs so each advance costs only the suffix it invalidated. Calls
// visit(union_mask, comb) for every subset; stops early if visit returns
// false.
template <typename Visit>
inline void for_each_subset_union(const std::vector<std::uint32_t>& masks, int s,
                                  Visit&& visit) {
    const int n = static_cast<int>(masks.size());
    std::vector<int> comb(s);
    std::iota(comb.begin(), comb.end(), 0);
    std::vector<std::uint32_t> acc(static_cast<std::size_t>(s) + 1, 0);
    auto refresh = [&](int from) {
        for (int i = from; i < s; ++i) acc[i + 1] = acc[i] | masks[comb[i]];
    };
    refresh(0);
    while (true) {
        if (!visit(acc[s], comb)) return;
        int changed = advance_combination(comb, n);
        if (changed < 0) return;
        refresh(changed);
    }
}

inline std::vector<NodeIndex> ids_from_comb(const std::vector<int>& comb) {
    std::vector<NodeIndex> ids;
    ids.reserve(comb.size());
    for (int c : comb) ids.push_back(c + 1);
    return ids;
}

}  // namespace detail

// Exhaustive check of the delta-bipartite property: every input set of size
// ceil(delta*n) must see more than (1-delta)*n outputs. Equivalent to the
// pairwise form (any input set and output set of size >= delta*n share an
// edge): a violating pair prunes X down to exactly ceil(delta*n) inputs
// whose neighborhood misses all of Y. Refuses n > 26.
inline BipartiteWitness is_delta_bipartite(const BipartiteAdjacency& g,
                                           double delta) {
    g.validate();
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::domain_error("is_delta_bipartite: delta must lie in (0,1)");
    if (g.n > 26)
        throw guard_error("is_delta_bipartite: refusing side size above 26");
    const int n = static_cast<int>(g.n);
    const int s = static_cast<int>(std::ceil(delta * static_cast<double>(n)));
    std::vector<std::uint32_t> out_mask(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < n; ++j)
        for (NodeIndex i : g.parents[j]) out_mask[i - 1] |= (1u << j);
    const double need = (1.0 - delta) * static_cast<double>(n);

    BipartiteWitness w;
    detail::for_each_subset_union(
        out_mask, s, [&](std::uint32_t un, const std::vector<int>& comb) {
            if (static_cast<double>(std::popcount(un)) > need) return true;
            w.pass = false;
            w.x = detail::ids_from_comb(comb);
            for (int j = 0; j < n; ++j)
                if (!(un & (1u << j))) w.y.push_back(j + 1);
            return false;
        });
    return w;
}

// Exhaustive check of (n,k,d)-expansion: at most k*n edges, and every
// subset X of either side satisfies |N(X)| >= (1 + d*(1 - |X|/n)) * |X|.
// Refuses n > 26.
inline NkdWitness check_nkd_expansion(const BipartiteAdjacency& g,
                                      std::int64_t k, double d) {
    g.validate();
    if (k < 1) throw std::domain_error("check_nkd_expansion: k must be positive");
    if (!(d > 0.0)) throw std::domain_error("check_nkd_expansion: d must be positive");
    if (g.n > 26)
        throw guard_error("check_nkd_expansion: refusing side size above 26");
    const int n = static_cast<int>(g.n);

    NkdWitness w;
    w.edges = g.edge_count();
    if (w.edges > static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(n)) {
        w.pass = false;
        w.edge_budget_ok = false;
        return w;
    }

    std::vector<std::uint32_t> from_a(static_cast<std::size_t>(n), 0);
    std::vector<std::uint32_t> from_b(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < n; ++j)
        for (NodeIndex i : g.parents[j]) {
            from_a[i - 1] |= (1u << j);
            from_b[j] |= (1u << (i - 1));
        }

    for (char side : {'A', 'B'}) {
        const auto& masks = (side == 'A') ? from_a : from_b;
        for (int s = 1; s <= n; ++s) {
            const double required = static_cast<double>(s) +
                                    d * static_cast<double>(s) *
                                        static_cast<double>(n - s) /
                                        static_cast<double>(n);
            bool ok = true;
            detail::for_each_subset_union(
                masks, s, [&](std::uint32_t un, const std::vector<int>& comb) {
                    if (static_cast<double>(std::popcount(un)) >= required)
                        return true;
                    w.pass = false;
                    w.side = side;
                    w.subset = detail::ids_from_comb(comb);
                    ok = false;
                    return false;
                });
            if (!ok) return w;
        }
    }
    return w;
}

// Every window pair ([v, v+r), [v+r, v+2r)) inside [1,n] must induce a
// delta-bipartite expander on the edges crossing from the first half into
// the second. Scans v ascending, then r; the first failing window is
// returned. Refuses n > 20.
inline LocalExpanderWitness is_delta_local_expander(const DagAdjacency& g,
                                                    double delta) {
    g.validate();
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::domain_error("is_delta_local_expander: delta must lie in (0,1)");
    if (g.n > 20)
        throw guard_error("is_delta_local_expander: refusing graphs above 20 nodes");
    LocalExpanderWitness w;
    for (NodeIndex v = 1; v <= g.n; ++v) {
        for (NodeIndex r = 1; v + 2 * r - 1 <= g.n; ++r) {
            BipartiteAdjacency window;
            window.n = r;
            window.parents.assign(static_cast<std::size_t>(r), {});
            for (NodeIndex off = 0; off < r; ++off) {
                for (NodeIndex u : g.parents[v + r + off - 1])
                    if (u >= v && u < v + r)
                        window.parents[off].push_back(u - v + 1);
            }
            BipartiteWitness bw = is_delta_bipartite(window, delta);
            if (!bw.pass) {
                w.pass = false;
                w.v = v;
                w.r = r;
                for (NodeIndex i : bw.x) w.x.push_back(i + v - 1);
                for (NodeIndex j : bw.y) w.y.push_back(j + v + r - 1);
                return w;
            }
        }
    }
    return w;
}

namespace detail {

// Parent lists flattened to one array, for tight inner loops.
struct FlatDag {
    std::vector<std::int64_t> offset;  // n+1 entries
    std::vector<NodeIndex> parent;

    explicit FlatDag(const DagAdjacency& g) {
        offset.reserve(static_cast<std::size_t>(g.n) + 1);
        offset.push_back(0);
        parent.reserve(static_cast<std::size_t>(g.edge_count()));
        for (const auto& ps : g.parents) {
            parent.insert(parent.end(), ps.begin(), ps.end());
            offset.push_back(static_cast<std::int64_t>(parent.size()));
        }
    }
};

// Longest path with removed nodes flagged in rm; aborts once the running
// best reaches `cap` (the caller's current minimum) since the result can
// only grow during the scan. depth[] uses -1 for removed nodes.
inline std::int64_t longest_path_removed(const FlatDag& f, NodeIndex n,
                                         const std::vector<std::uint8_t>& rm,
                                         std::vector<std::int64_t>& depth,
                                         std::int64_t cap) {
    std::int64_t best = 0;
    for (NodeIndex v = 1; v <= n; ++v) {
        if (rm[v]) {
            depth[v] = -1;
            continue;
        }
        std::int64_t dv = 0;
        for (std::int64_t i = f.offset[v - 1]; i < f.offset[v]; ++i) {
            std::int64_t du = depth[f.parent[i]];
            if (du >= dv) dv = du + 1;  // du = -1 never passes
        }
        depth[v] = dv;
        if (dv > best) {
            best = dv;
            if (best >= cap) return best;
        }
    }
    return best;
}

inline long double binomial_estimate(NodeIndex n, std::int64_t e) {
    long double c = 1.0L;
    for (std::int64_t i = 0; i < e; ++i) {
        c *= static_cast<long double>(n - i);
        c /= static_cast<long double>(i + 1);
        if (c > 1e18L) return 1e18L;
    }
    return c;
}

}  // namespace detail

// Exact depth robustness at removal budget e: enumerate every size-e node
// set, recompute the longest surviving path, and return the lexicographically
// first minimizer. Refuses e > 5 and instances whose total work
// C(n,e) * (n + edges) exceeds a fixed budget.
inline RobustnessReport depth_robustness_exact(const DagAdjacency& g,
                                               std::int64_t e) {
    g.validate();
    if (e < 0)
        throw std::domain_error("depth_robustness_exact: negative budget");
    if (e > 5)
        throw guard_error("depth_robustness_exact: refusing budgets above 5");

    RobustnessReport rep;
    rep.e = e;
    rep.mode = RobustnessMode::exact;
    if (e == 0) {
        rep.residual_depth = longest_path(g);
        return rep;
    }
    if (e >= g.n) {
        rep.worst_set.resize(static_cast<std::size_t>(g.n));
        std::iota(rep.worst_set.begin(), rep.worst_set.end(), NodeIndex{1});
        rep.residual_depth = 0;
        return rep;
    }

    const long double combos = detail::binomial_estimate(g.n, e);
    const long double per_combo =
        static_cast<long double>(g.n) + static_cast<long double>(g.edge_count());
    if (combos * per_combo > 8e10L)
        throw guard_error("depth_robustness_exact: instance too large to enumerate");

    detail::FlatDag flat(g);
    std::vector<std::int64_t> depth(static_cast<std::size_t>(g.n) + 1, 0);
    std::vector<std::uint8_t> rm(static_cast<std::size_t>(g.n) + 1, 0);
    const int n = static_cast<int>(g.n);
    const int s = static_cast<int>(e);
    std::vector<int> comb(s);
    std::iota(comb.begin(), comb.end(), 0);

    std::int64_t best_depth = std::numeric_limits<std::int64_t>::max();
    std::vector<int> best_comb;
    while (true) {
        for (int c : comb) rm[c + 1] = 1;
        std::int64_t d = detail::longest_path_removed(flat, g.n, rm, depth, best_depth);
        for (int c : comb) rm[c + 1] = 0;
        if (d < best_depth) {
            best_depth = d;
            best_comb = comb;
            if (best_depth == 0) break;
        }
        if (detail::advance_combination(comb, n) < 0) break;
    }

    rep.worst_set = detail::ids_from_comb(best_comb);
    rep.residual_depth = best_depth;
    return rep;
}

namespace detail {

// Window conditions shared by gamma_good and count_gamma_good. pre[i] holds
// |s intersect [1,i]|.
inline bool windows_good(const std::vector<std::int64_t>& pre, NodeIndex x,
                         double gamma, NodeIndex n) {
    // Backward windows [x-r+1, x]; radii beyond x clip to [1, x] which the
    // r = x case already covers.
    for (NodeIndex r = 1; r <= x; ++r) {
        std::int64_t alive = r - (pre[x] - pre[x - r]);
        if (static_cast<double>(alive) < gamma * static_cast<double>(r))
            return false;
    }
    // Forward windows [x+1, x+r]; radii beyond n - x clip likewise.
    for (NodeIndex r = 1; r <= n - x; ++r) {
        std::int64_t alive = r - (pre[x + r] - pre[x]);
        if (static_cast<double>(alive) < gamma * static_cast<double>(r))
            return false;
    }
    return true;
}

inline std::vector<std::int64_t> removed_prefix(const std::vector<NodeIndex>& s,
                                                NodeIndex n) {
    std::vector<std::uint8_t> rm(static_cast<std::size_t>(n) + 1, 0);
    for (NodeIndex u : s) {
        if (u < 1 || u > n)
            throw std::invalid_argument("gamma_good: set element out of range");
        rm[u] = 1;
    }
    std::vector<std::int64_t> pre(static_cast<std::size_t>(n) + 1, 0);
    for (NodeIndex i = 1; i <= n; ++i) pre[i] = pre[i - 1] + rm[i];
    return pre;
}

inline void check_gamma(double gamma) {
    if (!(gamma > 0.0) || gamma > 1.0)
        throw std::domain_error("gamma_good: gamma must lie in (0,1]");
}

}  // namespace detail

// A node x survives s gamma-well if every interval ending at x and every
// interval starting just after x keeps at least a gamma fraction of its
// nodes outside s (intervals clipped to [1,n]).
inline bool gamma_good(NodeIndex x, const std::vector<NodeIndex>& s, double gamma,
                       NodeIndex n) {
    if (n < 1) throw std::domain_error("gamma_good: empty range");
    if (x < 1 || x > n) throw std::domain_error("gamma_good: node out of range");
    detail::check_gamma(gamma);
    return detail::windows_good(detail::removed_prefix(s, n), x, gamma, n);
}

inline std::int64_t count_gamma_good(const std::vector<NodeIndex>& s, double gamma,
                                     NodeIndex n) {
    if (n < 1) throw std::domain_error("count_gamma_good: empty range");
    detail::check_gamma(gamma);
    const std::vector<std::int64_t> pre = detail::removed_prefix(s, n);
    std::int64_t count = 0;
    for (NodeIndex x = 1; x <= n; ++x)
        if (detail::windows_good(pre, x, gamma, n)) ++count;
    return count;
}

// Depth-reduction attack: label node v with v-1, bucket every edge by the
// most significant bit where its endpoint labels differ, drop the i buckets
// with the fewest edges (ties to the lower bit), and remove the head of
// every dropped edge. Any i buckets force the surviving depth below
// n / 2^i when n is a power of two; picking the lightest keeps the removal
// set small. The reported depth is recomputed exactly.
inline RobustnessReport valiant_reduce(const DagAdjacency& g, std::int64_t i) {
    g.validate();
    if (i < 1) throw std::domain_error("valiant_reduce: class count must be >= 1");
    if (g.n < 2) throw std::domain_error("valiant_reduce: need at least two nodes");

    const int bits = std::bit_width(static_cast<std::uint64_t>(g.n - 1));
    std::vector<std::pair<std::uint64_t, int>> load(static_cast<std::size_t>(bits));
    for (int b = 0; b < bits; ++b) load[b] = {0, b};
    for (NodeIndex v = 1; v <= g.n; ++v)
        for (NodeIndex u : g.parents[v - 1]) {
            auto diff = static_cast<std::uint64_t>((u - 1) ^ (v - 1));
            load[std::bit_width(diff) - 1].first += 1;
        }
    std::sort(load.begin(), load.end());

    std::vector<std::uint8_t> chosen(static_cast<std::size_t>(bits), 0);
    for (std::int64_t t = 0; t < std::min<std::int64_t>(i, bits); ++t)
        chosen[load[t].second] = 1;

    std::vector<std::uint8_t> rm(static_cast<std::size_t>(g.n) + 1, 0);
    for (NodeIndex v = 1; v <= g.n; ++v)
        for (NodeIndex u : g.parents[v - 1]) {
            auto diff = static_cast<std::uint64_t>((u - 1) ^ (v - 1));
            if (chosen[std::bit_width(diff) - 1]) rm[v] = 1;
        }

    RobustnessReport rep;
    rep.mode = RobustnessMode::attack_upper_bound;
    for (NodeIndex v = 1; v <= g.n; ++v)
        if (rm[v]) rep.worst_set.push_back(v);
    rep.e = static_cast<std::int64_t>(rep.worst_set.size());

    detail::FlatDag flat(g);
    std::vector<std::int64_t> depth(static_cast<std::size_t>(g.n) + 1, 0);
    rep.residual_depth = detail::longest_path_removed(
        flat, g.n, rm, depth, std::numeric_limits<std::int64_t>::max());
    return rep;
}

}  // namespace drg
