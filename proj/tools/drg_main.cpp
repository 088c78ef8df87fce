// Command-line front end: generate graph files, verify combinatorial
// properties with the exact checkers, run the depth-reduction attack,
// benchmark parent derivation, and print derived constants.
//
// Exit codes: 0 = success / property holds, 1 = property counterexample or
// failed attack bound, 2 = parameter error, malformed input, or a checker
// refusing an instance as too large.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "drg/adjacency.hpp"
#include "drg/bipartite_expander.hpp"
#include "drg/egs_graph.hpp"
#include "drg/gabber_galil.hpp"
#include "drg/graph_file.hpp"
#include "drg/indegree_reduction.hpp"
#include "drg/verification.hpp"

namespace {

using drg::GraphFile;
using drg::GraphFileHeader;
using drg::GraphMode;
using drg::NodeIndex;

struct SourceOpts {
    std::string input;  // graph file path; empty means build from parameters
    std::string mode;
    NodeIndex m = 0;
    NodeIndex n_nodes = 0;
    std::optional<double> delta;
    std::optional<double> epsilon;
    std::optional<std::int64_t> layers;
};

void add_generation_flags(CLI::App* cmd, SourceOpts& s) {
    cmd->add_option("--mode", s.mode, "graph family: gg, layered, be, egs, lowindeg");
    cmd->add_option("--m", s.m, "grid side length (gg, layered)");
    cmd->add_option("--n-nodes", s.n_nodes, "node count (be, egs, lowindeg)");
    auto* d = cmd->add_option("--delta", s.delta, "expansion parameter in (0,1)");
    cmd->add_option("--epsilon", s.epsilon,
                    "robustness gap; sets delta via the closed-form map "
                    "(egs, lowindeg)")
        ->excludes(d);
    cmd->add_option("--layers", s.layers,
                    "force the layer count; overridden graphs carry no "
                    "expansion guarantee");
}

GraphFileHeader header_from_params(const SourceOpts& s) {
    if (s.mode.empty())
        throw std::domain_error("no input file given, so --mode is required");
    const GraphMode mode = drg::mode_from_name(s.mode);
    std::optional<double> delta = s.delta;
    if (s.epsilon) {
        if (mode != GraphMode::egs && mode != GraphMode::lowindeg)
            throw std::domain_error("--epsilon applies only to egs and lowindeg");
        delta = drg::delta_for_epsilon(*s.epsilon);
    }
    switch (mode) {
        case GraphMode::gg:
            if (s.m < 1) throw std::domain_error("gg requires --m");
            return drg::make_gg_header(s.m);
        case GraphMode::layered: {
            if (s.m < 1) throw std::domain_error("layered requires --m");
            std::int64_t layers;
            if (s.layers)
                layers = *s.layers;
            else if (delta)
                layers = drg::layer_count(*delta);
            else
                throw std::domain_error("layered requires --layers or --delta");
            return drg::make_layered_header(s.m, layers);
        }
        case GraphMode::be:
            if (s.n_nodes < 1) throw std::domain_error("be requires --n-nodes");
            if (!delta) throw std::domain_error("be requires --delta");
            return drg::make_be_header(s.n_nodes, *delta, s.layers);
        case GraphMode::egs:
            if (s.n_nodes < 1) throw std::domain_error("egs requires --n-nodes");
            if (!delta) throw std::domain_error("egs requires --delta or --epsilon");
            return drg::make_egs_header(s.n_nodes, *delta, s.layers);
        case GraphMode::lowindeg:
            if (s.n_nodes < 1)
                throw std::domain_error("lowindeg requires --n-nodes");
            if (!delta)
                throw std::domain_error("lowindeg requires --delta or --epsilon");
            return drg::make_lowindeg_header(s.n_nodes, *delta, s.layers);
    }
    throw std::domain_error("unknown mode");
}

GraphFile load_source(const SourceOpts& s) {
    if (!s.input.empty()) {
        std::ifstream in(s.input);
        if (!in)
            throw drg::format_error("cannot open input file: " + s.input);
        return drg::parse_graph(in);
    }
    return drg::generate(header_from_params(s));
}

bool dag_mode(GraphMode mode) {
    return mode == GraphMode::egs || mode == GraphMode::lowindeg;
}

drg::BipartiteAdjacency as_bipartite(GraphFile&& f) {
    if (dag_mode(f.header.mode))
        throw std::domain_error("property needs a bipartite-mode graph "
                                "(gg, layered, or be)");
    drg::BipartiteAdjacency g;
    g.n = f.header.node_count;
    g.parents = std::move(f.parents);
    return g;
}

drg::DagAdjacency as_dag(GraphFile&& f) {
    if (!dag_mode(f.header.mode))
        throw std::domain_error("property needs a dag-mode graph "
                                "(egs or lowindeg)");
    drg::DagAdjacency g;
    g.n = f.header.node_count;
    g.parents = std::move(f.parents);
    return g;
}

std::string join_ids(const std::vector<NodeIndex>& xs) {
    std::string out;
    for (NodeIndex x : xs) {
        if (!out.empty()) out += ' ';
        out += std::to_string(x);
    }
    return out;
}

std::string fnv64_hex(const std::vector<NodeIndex>& xs) {
    std::uint64_t h = 1469598103934665603ULL;
    for (NodeIndex x : xs) {
        auto u = static_cast<std::uint64_t>(x);
        for (int b = 0; b < 8; ++b) {
            h ^= (u >> (8 * b)) & 0xffULL;
            h *= 1099511628211ULL;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return std::string(buf);
}

// ---- subcommand handlers ----

int cmd_generate(const SourceOpts& s, const std::string& out_path) {
    GraphFile f = drg::generate(header_from_params(s));
    if (out_path.empty()) {
        drg::write_graph(std::cout, f);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::domain_error("cannot open output file: " + out_path);
        drg::write_graph(out, f);
        if (!out) throw std::domain_error("write failed: " + out_path);
    }
    return 0;
}

int cmd_verify(const SourceOpts& s, const std::string& property,
               std::optional<std::int64_t> e_budget, const std::string& format) {
    GraphFile f = load_source(s);
    const NodeIndex nodes = f.header.node_count;
    // --delta doubles as the property parameter; it falls back to the
    // graph's own generation delta when only a file was given
    std::optional<double> check_delta = s.delta;
    if (!check_delta && f.header.delta) check_delta = f.header.delta;
    const bool csv = format == "csv";

    bool pass = false;
    std::string detail;
    if (property == "bipartite") {
        if (!check_delta) throw std::domain_error("bipartite check requires --delta");
        auto w = drg::is_delta_bipartite(as_bipartite(std::move(f)), *check_delta);
        pass = w.pass;
        if (!pass)
            detail = "witness_x=" + join_ids(w.x) + "\nwitness_y=" + join_ids(w.y);
    } else if (property == "nkd") {
        auto w = drg::check_nkd_expansion(as_bipartite(std::move(f)), drg::kGridMapCount,
                                          drg::kGridExpansionD);
        pass = w.pass;
        if (!pass) {
            detail = w.edge_budget_ok
                         ? std::string("witness_side=") + w.side +
                               "\nwitness_subset=" + join_ids(w.subset)
                         : "edges=" + std::to_string(w.edges) + " over budget";
        }
    } else if (property == "local-expander") {
        if (!check_delta)
            throw std::domain_error("local-expander check requires --delta");
        auto w = drg::is_delta_local_expander(as_dag(std::move(f)), *check_delta);
        pass = w.pass;
        if (!pass)
            detail = "window_start=" + std::to_string(w.v) +
                     "\nwindow_radius=" + std::to_string(w.r) +
                     "\nwitness_x=" + join_ids(w.x) + "\nwitness_y=" + join_ids(w.y);
    } else if (property == "depth-robust") {
        if (!check_delta)
            throw std::domain_error("depth-robust check requires --delta");
        if (!e_budget) throw std::domain_error("depth-robust check requires --e-budget");
        const double gamma = 2.1 * *check_delta;
        if (!(gamma < 1.0))
            throw std::domain_error("depth-robust check requires delta < 1/2.1");
        auto rep = drg::depth_robustness_exact(as_dag(std::move(f)), *e_budget);
        double target_raw = static_cast<double>(nodes) -
                            static_cast<double>(*e_budget) * (1.0 + gamma) /
                                (1.0 - gamma);
        auto target = static_cast<std::int64_t>(std::ceil(std::max(target_raw, 0.0)));
        pass = rep.residual_depth >= target;
        detail = "target_depth=" + std::to_string(target) +
                 "\nresidual_depth=" + std::to_string(rep.residual_depth) +
                 "\nworst_set=" + join_ids(rep.worst_set);
    } else {
        throw std::domain_error("unknown property: " + property);
    }

    if (csv) {
        std::cout << "property,nodes,delta,e_budget,result\n";
        std::cout << property << ',' << nodes << ','
                  << (check_delta ? drg::format_double(*check_delta) : "") << ','
                  << (e_budget ? std::to_string(*e_budget) : "") << ','
                  << (pass ? "pass" : "fail") << '\n';
    } else {
        std::cout << "property=" << property << '\n';
        std::cout << "nodes=" << nodes << '\n';
        if (check_delta) std::cout << "delta=" << drg::format_double(*check_delta) << '\n';
        if (!detail.empty()) std::cout << detail << '\n';
        std::cout << "result=" << (pass ? "pass" : "fail") << '\n';
    }
    return pass ? 0 : 1;
}

int cmd_attack(const SourceOpts& s, std::int64_t classes, const std::string& format) {
    drg::DagAdjacency g = as_dag(load_source(s));
    drg::RobustnessReport rep = drg::valiant_reduce(g, classes);

    const auto n = static_cast<double>(g.n);
    const double size_bound = n * static_cast<double>(classes) *
                              static_cast<double>(g.max_indegree()) /
                              std::log2(n);
    const std::int64_t depth_bound =
        classes < 63 ? g.n / (NodeIndex(1) << classes) : 0;
    const bool size_ok = static_cast<double>(rep.e) <= size_bound;
    const bool depth_ok = rep.residual_depth <= depth_bound;
    const bool pass = size_ok && depth_ok;

    if (format == "csv") {
        std::cout << "nodes,classes,removed,removed_bound,residual_depth,"
                     "depth_bound,result\n";
        std::cout << g.n << ',' << classes << ',' << rep.e << ','
                  << drg::format_double(size_bound) << ',' << rep.residual_depth
                  << ',' << depth_bound << ',' << (pass ? "pass" : "fail") << '\n';
    } else {
        std::cout << "nodes=" << g.n << '\n';
        std::cout << "classes=" << classes << '\n';
        std::cout << "removed=" << rep.e << '\n';
        std::cout << "removed_bound=" << drg::format_double(size_bound) << '\n';
        std::cout << "residual_depth=" << rep.residual_depth << '\n';
        std::cout << "depth_bound=" << depth_bound << '\n';
        std::cout << "result=" << (pass ? "pass" : "fail") << '\n';
    }
    return pass ? 0 : 1;
}

int cmd_bench(const SourceOpts& s, std::int64_t samples, std::uint64_t seed,
              const std::string& format) {
    if (samples < 0) throw std::domain_error("bench: samples must be >= 0");
    std::optional<double> delta = s.delta;
    if (s.epsilon) delta = drg::delta_for_epsilon(*s.epsilon);
    if (!delta) throw std::domain_error("bench requires --delta or --epsilon");
    drg::detail::check_egs_args(*delta, s.n_nodes, s.layers);
    const std::int64_t layers =
        s.layers ? *s.layers : drg::layer_count(*delta / 10.0);
    const bool csv = format == "csv";

    std::ostream& summary = csv ? std::cerr : std::cout;
    if (csv)
        std::cout << "n,delta,layers,override,seed,samples,index,v,"
                     "parent_count,parents_fnv64\n";

    std::mt19937_64 rng(seed);
    std::vector<double> micros;
    micros.reserve(static_cast<std::size_t>(samples));
    for (std::int64_t idx = 0; idx < samples; ++idx) {
        const NodeIndex v =
            1 + static_cast<NodeIndex>(rng() % static_cast<std::uint64_t>(s.n_nodes));
        const auto t0 = std::chrono::steady_clock::now();
        const std::vector<NodeIndex> ps =
            drg::get_parents_egs(*delta, v, s.n_nodes, s.layers);
        const auto t1 = std::chrono::steady_clock::now();
        micros.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
        if (csv)
            std::cout << s.n_nodes << ',' << drg::format_double(*delta) << ','
                      << layers << ',' << (s.layers ? 1 : 0) << ',' << seed << ','
                      << samples << ',' << idx << ',' << v << ',' << ps.size()
                      << ',' << fnv64_hex(ps) << '\n';
    }

    summary << "n=" << s.n_nodes << '\n';
    summary << "delta=" << drg::format_double(*delta) << '\n';
    summary << "layers=" << layers << '\n';
    summary << "override=" << (s.layers ? 1 : 0) << '\n';
    summary << "seed=" << seed << '\n';
    summary << "samples=" << samples << '\n';
    if (samples > 0) {
        std::sort(micros.begin(), micros.end());
        const auto count = static_cast<std::size_t>(samples);
        summary << "min_us=" << drg::format_double(micros.front()) << '\n';
        summary << "median_us=" << drg::format_double(micros[count / 2]) << '\n';
        summary << "p99_us="
                << drg::format_double(
                       micros[std::min(count - 1, count * 99 / 100)])
                << '\n';
        summary << "max_us=" << drg::format_double(micros.back()) << '\n';
    }
    return 0;
}

int cmd_info(std::optional<double> delta_opt, std::optional<double> epsilon_opt,
             NodeIndex n_nodes, const std::string& format) {
    if (!delta_opt && !epsilon_opt)
        throw std::domain_error("info requires --delta or --epsilon");
    const double delta = epsilon_opt ? drg::delta_for_epsilon(*epsilon_opt)
                                     : *delta_opt;
    const std::int64_t l1 = drg::layer_count(delta);
    const std::int64_t l2 = drg::layer_count(delta / 2.0);
    const std::int64_t l10 = drg::layer_count(delta / 10.0);
    std::optional<std::int64_t> beta;
    if (n_nodes > 0) beta = drg::max_indegree_bound(delta, n_nodes);

    if (format == "csv") {
        std::cout << "epsilon,delta,L_delta,L_delta_half,L_delta_tenth,beta,d\n";
        std::cout << (epsilon_opt ? drg::format_double(*epsilon_opt) : "") << ','
                  << drg::format_double(delta) << ',' << l1 << ',' << l2 << ','
                  << l10 << ',' << (beta ? std::to_string(*beta) : "") << ','
                  << drg::format_double(drg::kGridExpansionD) << '\n';
    } else {
        if (epsilon_opt)
            std::cout << "epsilon=" << drg::format_double(*epsilon_opt) << '\n';
        std::cout << "delta=" << drg::format_double(delta) << '\n';
        std::cout << "L_delta=" << l1 << '\n';
        std::cout << "L_delta_half=" << l2 << '\n';
        std::cout << "L_delta_tenth=" << l10 << '\n';
        if (beta) std::cout << "beta=" << *beta << '\n';
        std::cout << "d=" << drg::format_double(drg::kGridExpansionD) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "drg: explicit depth-robust graphs with exact small-scale verification"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "write a graph file");
    SourceOpts gen_src;
    std::string gen_out;
    add_generation_flags(gen, gen_src);
    gen->add_option("--out", gen_out, "output path (default: stdout)");

    // verify
    auto* ver = app.add_subcommand(
        "verify",
        "check a property with the exact oracles; nkd uses the grid constants "
        "k=5, d=(2-sqrt(3))/4; depth-robust targets "
        "ceil(N - e*(1+g)/(1-g)) with g = 2.1*delta");
    SourceOpts ver_src;
    std::string ver_property, ver_format = "text";
    std::optional<std::int64_t> ver_e;
    ver->add_option("input", ver_src.input, "graph file to check");
    add_generation_flags(ver, ver_src);
    ver->add_option("--property", ver_property,
                    "nkd, bipartite, local-expander, or depth-robust")
        ->required();
    ver->add_option("--e-budget", ver_e, "removal budget for depth-robust");
    ver->add_option("--format", ver_format, "text or csv")
        ->check(CLI::IsMember({"text", "csv"}));

    // attack
    auto* att = app.add_subcommand(
        "attack",
        "bit-class depth reduction; the printed bounds assume a power-of-two "
        "node count");
    SourceOpts att_src;
    std::int64_t att_i = 0;
    std::string att_format = "text";
    att->add_option("input", att_src.input, "graph file to attack");
    add_generation_flags(att, att_src);
    att->add_option("--i", att_i, "number of bit classes to drop")->required();
    att->add_option("--format", att_format, "text or csv")
        ->check(CLI::IsMember({"text", "csv"}));

    // bench
    auto* ben = app.add_subcommand(
        "bench", "time on-demand parent derivation on random nodes");
    SourceOpts ben_src;
    std::int64_t ben_samples = 10000;
    std::uint64_t ben_seed = 1;
    std::string ben_format = "text";
    ben->add_option("--n-nodes", ben_src.n_nodes, "node count (power of two)")
        ->required();
    auto* bd = ben->add_option("--delta", ben_src.delta, "expansion parameter");
    ben->add_option("--epsilon", ben_src.epsilon,
                    "robustness gap; sets delta via the closed-form map")
        ->excludes(bd);
    ben->add_option("--layers", ben_src.layers, "force the layer count");
    ben->add_option("--samples", ben_samples, "number of sampled nodes");
    ben->add_option("--seed", ben_seed, "sampling seed");
    ben->add_option("--format", ben_format,
                    "text (summary to stdout) or csv (deterministic rows to "
                    "stdout, summary to stderr)")
        ->check(CLI::IsMember({"text", "csv"}));

    // info
    auto* inf = app.add_subcommand("info", "print derived constants");
    std::optional<double> inf_delta, inf_epsilon;
    NodeIndex inf_n = 0;
    std::string inf_format = "text";
    auto* id = inf->add_option("--delta", inf_delta, "expansion parameter");
    inf->add_option("--epsilon", inf_epsilon, "robustness gap")->excludes(id);
    inf->add_option("--n-nodes", inf_n,
                    "also print the indegree bound for this size");
    inf->add_option("--format", inf_format, "text or csv")
        ->check(CLI::IsMember({"text", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return cmd_generate(gen_src, gen_out);
        if (ver->parsed())
            return cmd_verify(ver_src, ver_property, ver_e, ver_format);
        if (att->parsed()) return cmd_attack(att_src, att_i, att_format);
        if (ben->parsed())
            return cmd_bench(ben_src, ben_samples, ben_seed, ben_format);
        if (inf->parsed()) return cmd_info(inf_delta, inf_epsilon, inf_n, inf_format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
