#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <ddg/control.hpp>
#include <ddg/graph.hpp>
#include <ddg/io.hpp>

using nlohmann::json;

namespace {

std::string scratch_dir() {
    static std::string dir = [] {
        char tmpl[] = "/tmp/ddg_cli_XXXXXX";
        const char* d = mkdtemp(tmpl);
        REQUIRE(d != nullptr);
        return std::string(d);
    }();
    return dir;
}

std::string scratch(const std::string& name) { return scratch_dir() + "/" + name; }

struct RunResult {
    int code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string capture = scratch("capture" + std::to_string(counter++));
    std::string cmd =
        std::string(DDG_CLI_PATH) + " " + args + " > " + capture + " 2> /dev/null";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    std::ifstream in(capture);
    std::ostringstream buf;
    buf << in.rdbuf();
    return {WEXITSTATUS(status), buf.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(bool(in));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("gen turan round trips through the file format") {
    auto path = scratch("turan.g");
    auto r = run_cli("gen turan --parts 2 --size 3 --out " + path);
    CHECK(r.code == 0);

    auto g = ddg::read_graph_file(path);
    auto want = ddg::gen_turan(2, 3);
    REQUIRE(g.order() == 6);
    CHECK(g.edge_count() == 9);
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v) CHECK(g.has_edge(u, v) == want.has_edge(u, v));

    CHECK(slurp(path).rfind("p edge 6 9", 0) == 0);
}

TEST_CASE("gen gnp is seed deterministic") {
    auto a = scratch("gnp_a.g"), b = scratch("gnp_b.g"), c = scratch("gnp_c.g");
    CHECK(run_cli("gen gnp --n 20 --p 1/3 --seed 7 --out " + a).code == 0);
    CHECK(run_cli("gen gnp --n 20 --p 1/3 --seed 7 --out " + b).code == 0);
    CHECK(run_cli("gen gnp --n 20 --p 1/3 --seed 8 --out " + c).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) != slurp(c));
    CHECK(slurp(a).rfind("p edge 20 ", 0) == 0);
}

TEST_CASE("exact-f reports two distinct degrees for C_5") {
    auto path = scratch("c5.g");
    ddg::write_graph_file(
        path, ddg::Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}));

    auto r = run_cli("exact-f --input " + path + " --json");
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["n"] == 5);
    CHECK(j["f"] == 2);
    CHECK(j["witness"].size() >= 2);
}

TEST_CASE("verify accepts a genuine control witness") {
    auto gpath = scratch("match.g");
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < 9; i += 2) es.push_back({i, i + 1});
    auto g = ddg::Graph::from_edges(9, es);
    ddg::write_graph_file(gpath, g);

    ddg::VertexSet W(9), U(9);
    for (int v = 0; v < 9; ++v) W.set(v);
    auto w = ddg::control::build_control_greedy(g, 2, 8, 1, W, U);

    json doc{{"kind", "control"}, {"A", w.A}, {"Bparts", w.Bparts}, {"Cparts", w.Cparts}};
    auto wpath = scratch("control.json");
    std::ofstream(wpath) << doc.dump();

    auto r = run_cli("verify --input " + gpath + " --witness " + wpath);
    CHECK(r.code == 0);
    CHECK(r.out.rfind("OK:", 0) == 0);
}

TEST_CASE("verify rejects a non-homogeneous set") {
    auto gpath = scratch("c5v.g");
    ddg::write_graph_file(
        gpath, ddg::Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}));

    // {0,1,2} induces a path: neither clique nor independent
    json doc{{"kind", "homogeneous"}, {"vertices", {0, 1, 2}}};
    auto wpath = scratch("hom.json");
    std::ofstream(wpath) << doc.dump();

    auto r = run_cli("verify --input " + gpath + " --witness " + wpath + " --json");
    CHECK(r.code == 1);
    auto j = json::parse(r.out);
    CHECK(j["ok"] == false);
    CHECK(j["homkind"] == "neither");
}

TEST_CASE("error paths map to distinct exit codes") {
    // unreadable input file
    CHECK(run_cli("exact-f --input " + scratch("missing.g")).code == 3);

    // malformed fraction
    auto r = run_cli("gen gnp --n 5 --p nonsense --out " + scratch("junk.g"));
    CHECK(r.code == 2);

    // unknown subcommand
    CHECK(run_cli("frobnicate").code == 2);

    // past the exact-check cap the caller must go through the library API
    auto gpath = scratch("m70.g");
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < 70; i += 2) es.push_back({i, i + 1});
    ddg::write_graph_file(gpath, ddg::Graph::from_edges(70, es));
    CHECK(run_cli("control build --input " + gpath + " --k 2 --n 36 --delta-cap 1").code == 2);

    // a construction that fails mid-flight: K_50 recovers as one dense part,
    // whose complement is one big independent set
    auto kpath = scratch("k50.g");
    ddg::write_graph_file(kpath, ddg::gen_turan(50, 1));
    CHECK(run_cli("control assemble --input " + kpath + " --k 2 --n 24").code == 1);
}

TEST_CASE("control extract builds and samples in one call") {
    auto gpath = scratch("m40.g");
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < 40; i += 2) es.push_back({i, i + 1});
    ddg::write_graph_file(gpath, ddg::Graph::from_edges(40, es));

    auto r = run_cli("control extract --input " + gpath + " --k 2 --n 24 --json");
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["control"]["A"] == json::array({2, 0}));
    CHECK(j["distinct_count"].get<int>() >= 2);
    CHECK(j["verified"] == true);
}

TEST_CASE("anticonc computes the exact binomial atom") {
    auto r = run_cli("anticonc --n 4");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("pmax = 0.375", 0) == 0);

    auto j = json::parse(run_cli("anticonc --n 4 --json").out);
    CHECK(j["mode"] == "dp");
    CHECK(j["pmax"] == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(j["x_star"] == 2);
}

TEST_CASE("scaling emits the CSV schema and a summary") {
    auto csv = scratch("scale.csv");
    auto r = run_cli("scaling --sizes 64,96 --trials 1 --seed 3 --stable --csv " + csv);
    CHECK(r.code == 0);

    auto text = slurp(csv);
    CHECK(text.rfind("schema,v1\n", 0) == 0);
    CHECK(text.find("\n64,") != std::string::npos);
    CHECK(text.find("\n96,") != std::string::npos);

    auto j = json::parse(r.out);
    CHECK(j.contains("slope_valid"));
    CHECK(j["points"].size() == 2);
    CHECK(j["points"][0]["N"] == 64);
}

TEST_CASE("control theorem3 spots a clique from the command line") {
    auto gpath = scratch("k12.g");
    ddg::write_graph_file(gpath, ddg::gen_turan(12, 1));

    auto r = run_cli("control theorem3 --input " + gpath + " --k 2 --n 3 --json");
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["branch"] == "homogeneous");
    CHECK(j["value"] == 12);
    CHECK(j["witness"].size() == 12);
}

TEST_CASE("pipeline runs end to end on a random graph") {
    auto gpath = scratch("gnp120.g");
    CHECK(run_cli("gen gnp --n 120 --seed 11 --out " + gpath).code == 0);

    auto r = run_cli("pipeline --input " + gpath + " --json --seed 4");
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["N"] == 120);
    CHECK(j["verified"] == true);
    CHECK(j["distinct_count"].get<int>() >= 1);
}
