#pragma once

// Line-oriented graph files:
//
//   drg v1
//   mode=<gg|layered|be|egs|lowindeg>
//   params=<key=value ...>            (keys sorted; layers= is the resolved count)
//   nodes=<count>
//   <v>: p1 p2 ...                    (one line per node, parents ascending)
//
// The header alone determines the body: regenerating from a parsed header
// reproduces the original file byte for byte. LF line endings, no trailing
// whitespace, an empty parent list renders as "<v>:".

#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "drg/adjacency.hpp"
#include "drg/bipartite_expander.hpp"
#include "drg/egs_graph.hpp"
#include "drg/gabber_galil.hpp"
#include "drg/indegree_reduction.hpp"

namespace drg {

class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class GraphMode { gg, layered, be, egs, lowindeg };

inline std::string_view mode_name(GraphMode mode) {
    switch (mode) {
        case GraphMode::gg: return "gg";
        case GraphMode::layered: return "layered";
        case GraphMode::be: return "be";
        case GraphMode::egs: return "egs";
        case GraphMode::lowindeg: return "lowindeg";
    }
    throw std::domain_error("mode_name: unknown mode");
}

inline GraphMode mode_from_name(std::string_view name) {
    if (name == "gg") return GraphMode::gg;
    if (name == "layered") return GraphMode::layered;
    if (name == "be") return GraphMode::be;
    if (name == "egs") return GraphMode::egs;
    if (name == "lowindeg") return GraphMode::lowindeg;
    throw format_error("unknown mode: " + std::string(name));
}

struct GraphFileHeader {
    GraphMode mode = GraphMode::gg;
    std::optional<NodeIndex> m;            // gg, layered
    std::optional<NodeIndex> n_nodes;      // be, egs, lowindeg (base size)
    std::optional<double> delta;           // be, egs, lowindeg
    std::optional<std::int64_t> layers;    // resolved layer count
    std::optional<std::int64_t> beta;      // lowindeg chain half-length
    bool layers_overridden = false;        // layer count was forced, not derived
    NodeIndex node_count = 0;              // lines in the body
};

struct GraphFile {
    GraphFileHeader header;
    std::vector<std::vector<NodeIndex>> parents;
};

// Shortest round-trip decimal form, the single spelling used everywhere a
// double is serialized.
inline std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
    double out = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw format_error("bad floating-point value: " + std::string(s));
    return out;
}

inline std::int64_t parse_int(std::string_view s) {
    std::int64_t out = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw format_error("bad integer value: " + std::string(s));
    return out;
}

// ---- header construction (resolves derived quantities) ----

inline GraphFileHeader make_gg_header(NodeIndex m) {
    detail::check_side(m);
    GraphFileHeader h;
    h.mode = GraphMode::gg;
    h.m = m;
    h.node_count = m * m;
    return h;
}

inline GraphFileHeader make_layered_header(NodeIndex m, std::int64_t layers) {
    detail::check_side(m);
    if (layers < 1) throw std::domain_error("layered: layer count must be positive");
    GraphFileHeader h;
    h.mode = GraphMode::layered;
    h.m = m;
    h.layers = layers;
    h.node_count = m * m;
    return h;
}

inline GraphFileHeader make_be_header(
    NodeIndex n, double delta,
    std::optional<std::int64_t> layer_override = std::nullopt) {
    if (n < 1) throw std::domain_error("be: size must be positive");
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::domain_error("be: delta must lie in (0,1)");
    if (layer_override && *layer_override < 1)
        throw std::domain_error("be: layer override must be positive");
    GraphFileHeader h;
    h.mode = GraphMode::be;
    h.n_nodes = n;
    h.delta = delta;
    h.layers = layer_override ? *layer_override : layer_count(delta / 2.0);
    h.layers_overridden = layer_override.has_value();
    h.node_count = n;
    return h;
}

inline GraphFileHeader make_egs_header(
    NodeIndex n, double delta,
    std::optional<std::int64_t> layer_override = std::nullopt) {
    detail::check_egs_args(delta, n, layer_override);
    GraphFileHeader h;
    h.mode = GraphMode::egs;
    h.n_nodes = n;
    h.delta = delta;
    h.layers = layer_override ? *layer_override : layer_count(delta / 10.0);
    h.layers_overridden = layer_override.has_value();
    h.node_count = n;
    return h;
}

inline GraphFileHeader make_lowindeg_header(
    NodeIndex n, double delta,
    std::optional<std::int64_t> layer_override = std::nullopt) {
    GraphFileHeader h = make_egs_header(n, delta, layer_override);
    h.mode = GraphMode::lowindeg;
    h.beta = max_indegree_bound(delta, n, layer_override);
    h.node_count = n * 2 * *h.beta;
    return h;
}

// ---- body materialization ----

// The recorded layer count is always fed back as an override: for derived
// headers it equals the derived count, so both cases reproduce identically.
inline std::vector<std::vector<NodeIndex>> materialize(const GraphFileHeader& h) {
    switch (h.mode) {
        case GraphMode::gg: {
            if (!h.m) throw format_error("gg: missing m");
            return materialize_gg(*h.m).parents;
        }
        case GraphMode::layered: {
            if (!h.m || !h.layers) throw format_error("layered: missing m or layers");
            return materialize_layered(*h.m, *h.layers).parents;
        }
        case GraphMode::be: {
            if (!h.n_nodes || !h.delta || !h.layers)
                throw format_error("be: missing n, delta, or layers");
            return materialize_be(*h.n_nodes, *h.delta, h.layers).parents;
        }
        case GraphMode::egs: {
            if (!h.n_nodes || !h.delta || !h.layers)
                throw format_error("egs: missing n, delta, or layers");
            EgsParams p{*h.n_nodes, *h.delta, h.layers};
            return materialize_egs(p).parents;
        }
        case GraphMode::lowindeg: {
            if (!h.n_nodes || !h.delta || !h.layers || !h.beta)
                throw format_error("lowindeg: missing n, delta, layers, or beta");
            if (*h.beta != max_indegree_bound(*h.delta, *h.n_nodes, h.layers))
                throw format_error("lowindeg: beta inconsistent with parameters");
            EgsParams p{*h.n_nodes, *h.delta, h.layers};
            return materialize_low_indeg(p).parents;
        }
    }
    throw format_error("unknown mode");
}

inline GraphFile generate(const GraphFileHeader& h) {
    GraphFile f;
    f.header = h;
    f.parents = materialize(h);
    if (static_cast<NodeIndex>(f.parents.size()) != h.node_count)
        throw format_error("node count mismatch in generated body");
    return f;
}

// ---- serialization ----

inline std::string serialize_params(const GraphFileHeader& h) {
    // keys in sorted order: beta delta layers m n override
    std::string out;
    auto add = [&](std::string_view key, const std::string& value) {
        if (!out.empty()) out += ' ';
        out += key;
        out += '=';
        out += value;
    };
    if (h.beta) add("beta", std::to_string(*h.beta));
    if (h.delta) add("delta", format_double(*h.delta));
    if (h.layers) add("layers", std::to_string(*h.layers));
    if (h.m) add("m", std::to_string(*h.m));
    if (h.n_nodes) add("n", std::to_string(*h.n_nodes));
    if (h.layers_overridden) add("override", "1");
    return out;
}

inline void write_graph(std::ostream& os, const GraphFile& f) {
    os << "drg v1\n";
    os << "mode=" << mode_name(f.header.mode) << '\n';
    os << "params=" << serialize_params(f.header) << '\n';
    os << "nodes=" << f.header.node_count << '\n';
    for (std::size_t idx = 0; idx < f.parents.size(); ++idx) {
        os << (idx + 1) << ':';
        for (NodeIndex p : f.parents[idx]) os << ' ' << p;
        os << '\n';
    }
}

inline std::string write_graph_string(const GraphFile& f) {
    std::ostringstream os;
    write_graph(os, f);
    return os.str();
}

// ---- parsing ----

namespace detail {

inline std::string next_line(std::istream& is, const char* what) {
    std::string line;
    if (!std::getline(is, line))
        throw format_error(std::string("unexpected end of file, expected ") + what);
    if (!line.empty() && line.back() == '\r')
        throw format_error("carriage return found; files must use LF endings");
    return line;
}

inline std::string_view expect_prefix(std::string_view line, std::string_view prefix) {
    if (line.substr(0, prefix.size()) != prefix)
        throw format_error("expected line starting with '" + std::string(prefix) +
                           "', got '" + std::string(line) + "'");
    return line.substr(prefix.size());
}

}  // namespace detail

inline GraphFile parse_graph(std::istream& is) {
    GraphFile f;
    if (detail::next_line(is, "magic") != "drg v1")
        throw format_error("bad magic line; expected 'drg v1'");
    f.header.mode = mode_from_name(
        detail::expect_prefix(detail::next_line(is, "mode"), "mode="));

    const std::string params_line = detail::next_line(is, "params");
    // split on single spaces into key=value tokens
    std::string_view rest = detail::expect_prefix(params_line, "params=");
    while (!rest.empty()) {
        auto space = rest.find(' ');
        std::string_view token = rest.substr(0, space);
        rest = (space == std::string_view::npos) ? std::string_view{}
                                                 : rest.substr(space + 1);
        if (token.empty()) throw format_error("empty params token");
        auto eq = token.find('=');
        if (eq == std::string_view::npos)
            throw format_error("params token missing '=': " + std::string(token));
        std::string_view key = token.substr(0, eq);
        std::string_view value = token.substr(eq + 1);
        if (key == "m") f.header.m = parse_int(value);
        else if (key == "n") f.header.n_nodes = parse_int(value);
        else if (key == "delta") f.header.delta = parse_double(value);
        else if (key == "layers") f.header.layers = parse_int(value);
        else if (key == "beta") f.header.beta = parse_int(value);
        else if (key == "override") {
            if (value != "1") throw format_error("override must be 1 when present");
            f.header.layers_overridden = true;
        } else
            throw format_error("unknown params key: " + std::string(key));
    }

    f.header.node_count = parse_int(
        detail::expect_prefix(detail::next_line(is, "nodes"), "nodes="));
    if (f.header.node_count < 1) throw format_error("node count must be positive");

    // cross-check the count against the parameters
    switch (f.header.mode) {
        case GraphMode::gg:
        case GraphMode::layered:
            if (!f.header.m || f.header.node_count != *f.header.m * *f.header.m)
                throw format_error("node count inconsistent with m");
            break;
        case GraphMode::be:
        case GraphMode::egs:
            if (!f.header.n_nodes || f.header.node_count != *f.header.n_nodes)
                throw format_error("node count inconsistent with n");
            break;
        case GraphMode::lowindeg:
            if (!f.header.n_nodes || !f.header.beta ||
                f.header.node_count != *f.header.n_nodes * 2 * *f.header.beta)
                throw format_error("node count inconsistent with n and beta");
            break;
    }

    f.parents.reserve(static_cast<std::size_t>(f.header.node_count));
    for (NodeIndex v = 1; v <= f.header.node_count; ++v) {
        std::string line = detail::next_line(is, "adjacency row");
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw format_error("adjacency row missing ':'");
        if (parse_int(std::string_view(line).substr(0, colon)) != v)
            throw format_error("adjacency rows must be numbered 1.." +
                               std::to_string(f.header.node_count) + " in order");
        std::vector<NodeIndex> ps;
        std::string_view tail = std::string_view(line).substr(colon + 1);
        while (!tail.empty()) {
            if (tail.front() != ' ')
                throw format_error("adjacency row: expected single space separator");
            tail.remove_prefix(1);
            auto space = tail.find(' ');
            std::string_view tok =
                (space == std::string_view::npos) ? tail : tail.substr(0, space);
            if (tok.empty()) throw format_error("adjacency row: empty parent token");
            ps.push_back(parse_int(tok));
            tail = (space == std::string_view::npos) ? std::string_view{}
                                                     : tail.substr(space);
        }
        const bool dag_mode =
            f.header.mode == GraphMode::egs || f.header.mode == GraphMode::lowindeg;
        const NodeIndex hi = dag_mode ? v - 1 : f.header.node_count;
        NodeIndex prev = 0;
        for (NodeIndex p : ps) {
            if (p < 1 || p > hi)
                throw format_error("parent out of range on row " + std::to_string(v));
            if (p <= prev)
                throw format_error("parents not strictly ascending on row " +
                                   std::to_string(v));
            prev = p;
        }
        f.parents.push_back(std::move(ps));
    }
    std::string extra;
    if (std::getline(is, extra))
        throw format_error("trailing content after adjacency rows");
    return f;
}

inline GraphFile parse_graph_string(const std::string& text) {
    std::istringstream is(text);
    return parse_graph(is);
}

}  // namespace drg
