#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "drg/graph_file.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path();
    const std::string tag =
        std::to_string(::getpid()) + "_" + std::to_string(counter++);
    const auto out_path = dir / ("drg_test_out_" + tag);
    const auto err_path = dir / ("drg_test_err_" + tag);

    const std::string cmd = std::string("'") + DRG_CLI_PATH + "' " + args + " > '" +
                            out_path.string() + "' 2> '" + err_path.string() + "'";
    const int raw = std::system(cmd.c_str());

    RunResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::filesystem::remove(out_path);
    std::filesystem::remove(err_path);
    return r;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    const auto p = std::filesystem::temp_directory_path() /
                   (name + "_" + std::to_string(::getpid()));
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p;
}

const std::string kPathEight =
    "drg v1\nmode=egs\nparams=delta=0.25 layers=2191 n=8\nnodes=8\n"
    "1:\n2: 1\n3: 2\n4: 3\n5: 4\n6: 5\n7: 6\n8: 7\n";

}  // namespace

TEST_CASE("cli generate matches the library serializer") {
    auto r = run_cli("generate --mode gg --m 2");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == drg::write_graph_string(drg::generate(drg::make_gg_header(2))));

    const auto out_file = std::filesystem::temp_directory_path() /
                          ("drg_gen_" + std::to_string(::getpid()));
    auto rf = run_cli("generate --mode gg --m 2 --out '" + out_file.string() + "'");
    REQUIRE(rf.exit_code == 0);
    CHECK(rf.out.empty());
    CHECK(slurp(out_file) == r.out);
    std::filesystem::remove(out_file);
}

TEST_CASE("cli verify passes and fails with the right exit codes") {
    auto pass = run_cli("verify --mode gg --m 3 --property nkd");
    CHECK(pass.exit_code == 0);
    CHECK(pass.out.find("result=pass") != std::string::npos);

    auto csv = run_cli("verify --mode gg --m 2 --property nkd --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out == "property,nodes,delta,e_budget,result\nnkd,4,,,pass\n");

    // oversize instances are refused, not silently approximated
    auto guard = run_cli("verify --mode be --n-nodes 30 --delta 0.5 --property bipartite");
    CHECK(guard.exit_code == 2);
    CHECK(guard.err.find("error:") != std::string::npos);

    auto p8 = write_temp("drg_path8", kPathEight);
    auto fail = run_cli("verify '" + p8.string() +
                        "' --property local-expander --delta 0.4");
    CHECK(fail.exit_code == 1);
    CHECK(fail.out.find("window_start=1") != std::string::npos);
    CHECK(fail.out.find("window_radius=2") != std::string::npos);
    CHECK(fail.out.find("witness_x=1") != std::string::npos);
    CHECK(fail.out.find("witness_y=3 4") != std::string::npos);
    CHECK(fail.out.find("result=fail") != std::string::npos);

    auto dr = run_cli("verify '" + p8.string() +
                      "' --property depth-robust --delta 0.25 --e-budget 1");
    // a path is not depth robust: removing the midpoint leaves depth 3 < 5
    CHECK(dr.exit_code == 1);
    CHECK(dr.out.find("target_depth=5") != std::string::npos);
    CHECK(dr.out.find("residual_depth=3") != std::string::npos);
    CHECK(dr.out.find("worst_set=4") != std::string::npos);

    auto wrong_kind = run_cli("verify '" + p8.string() + "' --property bipartite");
    CHECK(wrong_kind.exit_code == 2);

    auto unknown = run_cli("verify --mode gg --m 2 --property sparsity");
    CHECK(unknown.exit_code == 2);
    std::filesystem::remove(p8);
}

TEST_CASE("cli attack reports the class removal") {
    auto p8 = write_temp("drg_attack8", kPathEight);

    auto one = run_cli("attack '" + p8.string() + "' --i 1");
    CHECK(one.exit_code == 0);
    CHECK(one.out.find("removed=1") != std::string::npos);
    CHECK(one.out.find("residual_depth=3") != std::string::npos);
    CHECK(one.out.find("depth_bound=4") != std::string::npos);
    CHECK(one.out.find("result=pass") != std::string::npos);

    auto three = run_cli("attack '" + p8.string() + "' --i 3 --format csv");
    CHECK(three.exit_code == 0);
    CHECK(three.out.find("nodes,classes,removed,removed_bound,residual_depth,"
                         "depth_bound,result") != std::string::npos);
    CHECK(three.out.find("8,3,7,") != std::string::npos);

    auto zero = run_cli("attack '" + p8.string() + "' --i 0");
    CHECK(zero.exit_code == 2);
    std::filesystem::remove(p8);
}

TEST_CASE("cli bench is deterministic in csv mode") {
    const std::string args =
        "bench --n-nodes 1024 --delta 0.25 --layers 2 --samples 50 --seed 7 "
        "--format csv";
    auto a = run_cli(args);
    auto b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("n,delta,layers,override,seed,samples,index,v,"
                     "parent_count,parents_fnv64") == 0);
    // summary goes to stderr in csv mode
    CHECK(a.err.find("median_us=") != std::string::npos);

    auto empty = run_cli("bench --n-nodes 1024 --delta 0.25 --samples 0");
    CHECK(empty.exit_code == 0);
    CHECK(empty.out.find("samples=0") != std::string::npos);
    CHECK(empty.out.find("median_us=") == std::string::npos);

    auto bad = run_cli("bench --n-nodes 1000 --delta 0.25 --samples 1");
    CHECK(bad.exit_code == 2);  // node count must be a power of two
}

TEST_CASE("cli info prints derived constants") {
    auto d = run_cli("info --delta 0.4");
    REQUIRE(d.exit_code == 0);
    CHECK(d.out.find("L_delta=17\n") != std::string::npos);
    CHECK(d.out.find("d=0.0669872981077807") != std::string::npos);

    auto e = run_cli("info --epsilon 0.3333333333333333 --n-nodes 16");
    REQUIRE(e.exit_code == 0);
    CHECK(e.out.find("delta=0.06802721088435373") != std::string::npos);
    CHECK(e.out.find("beta=656") != std::string::npos);

    auto both = run_cli("info --delta 0.4 --epsilon 0.2");
    CHECK(both.exit_code == 2);  // mutually exclusive
}

TEST_CASE("cli top-level behavior") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("").exit_code == 2);          // a subcommand is required
    CHECK(run_cli("generate --mode gg").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("verify missing_file_xyz --property nkd").exit_code == 2);
}
