#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "ddg/errors.hpp"
#include "ddg/graph.hpp"
#include "ddg/oracle.hpp"
#include "ddg/rng.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace ddg;
using namespace ddg::oracle;

static Graph cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, e);
}

static Graph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph::from_edges(n, e);
}

TEST_CASE("exact_f on fixed instances") {
    CHECK(exact_f(cycle(5)).distinct_count == 2);
    CHECK(exact_f(complete(6)).distinct_count == 1);
    CHECK(exact_f(gen_turan(3, 2)).distinct_count == 2);
    CHECK(exact_f(Graph::from_edges(1, {})).distinct_count == 1);

    // the witness itself must realize the claimed count
    auto w = exact_f(gen_erdos_renyi(14, 0.5, 3));
    CHECK(testutil::distinct_degrees(gen_erdos_renyi(14, 0.5, 3), w.subset.to_vector()) ==
          w.distinct_count);
}

TEST_CASE("exact_f against brute force") {
    Rng rng(21);
    for (int rep = 0; rep < 20; ++rep) {
        int n = 6 + int(rng.below(7));
        Graph g = gen_erdos_renyi(n, 0.2 + 0.6 * rng.uniform01(), rng.next_u64());
        CHECK(exact_f(g).distinct_count == testutil::brute_f(g));
    }
    CHECK(exact_f(gen_erdos_renyi(13, 0.5, 9)).distinct_count ==
          exact_f_serial(gen_erdos_renyi(13, 0.5, 9)).distinct_count);
}

TEST_CASE("exact_f cap") {
    CHECK_THROWS_AS(exact_f(gen_erdos_renyi(25, 0.5, 1)), CapExceeded);
    CHECK_NOTHROW(exact_f(gen_erdos_renyi(25, 0.5, 1), 25));
}

TEST_CASE("exact_hom on fixed instances") {
    auto k7 = exact_hom(complete(7));
    CHECK(k7.size == 7);
    CHECK(k7.kind == HomKind::clique);

    CHECK(exact_hom(cycle(5)).size == 2);
    CHECK(exact_hom(gen_blowup({{false}}, {10})).size == 10);
    CHECK(exact_hom(gen_blowup({{false}}, {10})).kind == HomKind::independent);

    // one triangle beats the independent pairs
    CHECK(exact_hom(gen_turan(3, 2)).size == 3);
    CHECK(exact_hom(gen_turan(3, 2)).kind == HomKind::clique);

    // ties go to the clique side
    Graph p3 = Graph::from_edges(3, {{0, 1}, {1, 2}});
    auto h = exact_hom(p3);
    CHECK(h.size == 2);
    CHECK(h.kind == HomKind::clique);
}

TEST_CASE("exact_hom against brute force") {
    Rng rng(22);
    for (int rep = 0; rep < 20; ++rep) {
        int n = 6 + int(rng.below(7));
        Graph g = gen_erdos_renyi(n, 0.2 + 0.6 * rng.uniform01(), rng.next_u64());
        auto h = exact_hom(g);
        CHECK(h.size == testutil::brute_hom(g));
        auto verts = h.subset.to_vector();
        CHECK(int(verts.size()) == h.size);
        if (h.kind == HomKind::clique)
            CHECK(testutil::is_clique(g, verts));
        else
            CHECK(testutil::is_independent(g, verts));
    }
    CHECK_THROWS_AS(exact_hom(gen_erdos_renyi(65, 0.5, 1)), CapExceeded);
}

TEST_CASE("max_clique") {
    CHECK(max_clique(complete(5)).count() == 5);
    CHECK(max_clique(cycle(5)).count() == 2);
    CHECK(max_clique(gen_blowup({{false}}, {8})).count() == 1);
    Rng rng(23);
    for (int rep = 0; rep < 10; ++rep) {
        Graph g = gen_erdos_renyi(12, 0.5, rng.next_u64());
        auto c = max_clique(g);
        CHECK(testutil::is_clique(g, c.to_vector()));
        CHECK(int(c.count()) == testutil::brute_alpha(complement(g)));
    }
}

TEST_CASE("exact_max_diverse") {
    Graph t = gen_turan(3, 2);
    CHECK(exact_max_diverse(t, Fraction{0, 1}).count() == 6);
    // cross-part pairs differ in 4 >= 3 = delta*n coordinates, twins differ in 0
    CHECK(exact_max_diverse(t, Fraction{1, 2}).count() == 3);

    // output really is pairwise delta-diverse
    Graph g = gen_erdos_renyi(16, 0.5, 4);
    Fraction d{1, 4};
    auto s = exact_max_diverse(g, d).to_vector();
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
            CHECK(sym_diff_size(g, s[i], s[j], g.vertices()) * d.den >= d.num * 16);

    CHECK_THROWS_AS(exact_max_diverse(gen_erdos_renyi(41, 0.5, 1), Fraction{1, 5}),
                    CapExceeded);
}

TEST_CASE("verify_control_graph accepts valid witnesses") {
    // k = 1: single center, no B, no C
    Graph g = gen_erdos_renyi(6, 0.5, 5);
    ControlGraphWitness w1;
    w1.A = {2};
    w1.Bparts = {{}};
    CHECK(bool(verify_control_graph(g, w1)));

    // two centers split by B-degree, one C part isolated from A
    Graph h = Graph::from_edges(6, {{1, 2}, {3, 4}, {4, 5}});
    ControlGraphWitness w2;
    w2.A = {0, 1};
    w2.Bparts = {{}, {2}};
    w2.Cparts = {{3, 4, 5}};
    auto res = verify_control_graph(h, w2);
    CHECK(bool(res));
    CHECK(res.code == ControlCheck::ok);
}

TEST_CASE("verify_control_graph rejects each failure mode") {
    Graph h = Graph::from_edges(6, {{0, 2}, {1, 2}, {3, 4}, {4, 5}});
    // equal F[A u B] degrees with equal (empty) C-neighborhoods
    ControlGraphWitness w;
    w.A = {0, 1};
    w.Bparts = {{}, {2}};
    w.Cparts = {{3, 4, 5}};
    auto r = verify_control_graph(h, w);
    CHECK_FALSE(bool(r));
    CHECK(r.code == ControlCheck::condition_ii);

    ControlGraphWitness bad;
    bad.A = {};
    CHECK(verify_control_graph(h, bad).code == ControlCheck::empty_a);

    bad.A = {0, 9};
    bad.Bparts = {{}, {}};
    CHECK(verify_control_graph(h, bad).code == ControlCheck::vertex_out_of_range);

    bad.A = {0, 1};
    bad.Bparts = {{}};
    CHECK(verify_control_graph(h, bad).code == ControlCheck::shape_mismatch);

    bad.Bparts = {{}, {0}};
    CHECK(verify_control_graph(h, bad).code == ControlCheck::overlapping_sets);

    // |C_i| < k^2 - 1 = 3
    bad.Bparts = {{}, {2}};
    bad.Cparts = {{3, 4}};
    CHECK(verify_control_graph(h, bad).code == ControlCheck::c_part_too_small);

    // condition (i): a C part seeing a_1 partially
    Graph p = Graph::from_edges(6, {{0, 2}, {1, 5}});
    ControlGraphWitness wi;
    wi.A = {0, 1};
    wi.Bparts = {{}, {2}};
    wi.Cparts = {{3, 4, 5}};
    CHECK(verify_control_graph(p, wi).code == ControlCheck::condition_i);
}

TEST_CASE("degree profile matches oracle on witnesses") {
    Rng rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        Graph g = gen_erdos_renyi(12, 0.5, rng.next_u64());
        auto w = exact_f(g);
        CHECK(degree_profile(g, w.subset).distinct_count == w.distinct_count);
    }
}
