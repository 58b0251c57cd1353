#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "isospec/common.hpp"
#include "isospec/eigen.hpp"
#include "isospec/graph.hpp"
#include "isospec/graph_io.hpp"
#include "isospec/rng.hpp"

using namespace isospec;

namespace {

WeightedGraph weighted_k3() {
    return make_graph(3, {{0, 1, 1.0}, {0, 2, 2.0}, {1, 2, 2.0}});
}

}  // namespace

TEST_CASE("laplacian of the weighted triangle") {
    const Matrix l = build_laplacian(weighted_k3());
    const Matrix want = {{3, -1, -2}, {-1, 3, -2}, {-2, -2, 4}};
    CHECK(max_abs(l - want) == 0.0);
}

TEST_CASE("laplacian of a single edge") {
    const Matrix l = build_laplacian(make_graph(2, {{0, 1, 1.0}}));
    CHECK(max_abs(l - Matrix{{1, -1}, {-1, 1}}) == 0.0);
}

TEST_CASE("butterfly eigenvalues are 0,1,3,3,5") {
    const EigenBasis e = eig_sym(build_laplacian(butterfly_graph()));
    const Vec want = {0, 1, 3, 3, 5};
    REQUIRE(e.values.size() == want.size());
    for (size_t i = 0; i < want.size(); ++i)
        CHECK(e.values[i] == doctest::Approx(want[i]).epsilon(1e-9));
}

TEST_CASE("row sums of generated laplacians vanish") {
    const std::vector<WeightedGraph> graphs = {
        complete_graph(6), wheel_graph(8),  cube_graph(3),       barbell_graph(4),
        lollipop_graph(7, 5), path_graph(9), butterfly_graph(),  complete_minus_edge_graph(5),
    };
    for (const auto& g : graphs) {
        const Matrix l = build_laplacian(g);
        for (int i = 0; i < g.n; ++i) {
            double row = 0.0;
            for (int j = 0; j < g.n; ++j) row += l(i, j);
            CHECK(std::fabs(row) <= 1e-10);
        }
        CHECK(connected(g));
    }
}

TEST_CASE("connectivity") {
    CHECK(connected(path_graph(3)));
    CHECK_FALSE(connected(make_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}})));
    CHECK(connected(butterfly_graph()));
}

TEST_CASE("family shapes") {
    const WeightedGraph w9 = wheel_graph(8);
    CHECK(w9.n == 9);
    CHECK(w9.edge_count() == 16);

    const WeightedGraph q3 = cube_graph(3);
    CHECK(q3.n == 8);
    CHECK(q3.edge_count() == 12);

    const WeightedGraph lp = lollipop_graph(7, 5);
    CHECK(lp.n == 12);
    CHECK(lp.edge_count() == 26);

    CHECK(complete_graph(5).edge_count() == 10);
    CHECK(barbell_graph(5).n == 10);
    CHECK(barbell_graph(5).edge_count() == 2 * 10 + 1);
}

TEST_CASE("cube labels group parallel classes by bit") {
    // one parallel edge class per coordinate bit, in 1-based labels
    const WeightedGraph q3 = cube_graph(3);
    const std::set<std::pair<int, int>> expect = {
        {1, 2}, {3, 5}, {4, 6}, {7, 8},  // bit 0
        {1, 3}, {2, 5}, {4, 7}, {6, 8},  // bit 1
        {1, 4}, {2, 6}, {3, 7}, {5, 8},  // bit 2
    };
    std::set<std::pair<int, int>> got;
    for (const auto& e : q3.edges) got.insert({e.u + 1, e.v + 1});
    CHECK(got == expect);
}

TEST_CASE("cube eigenvalues 0, 2^(3), 4^(3), 6") {
    const EigenBasis e = eig_sym(build_laplacian(cube_graph(3)));
    const Vec want = {0, 2, 2, 2, 4, 4, 4, 6};
    for (size_t i = 0; i < want.size(); ++i)
        CHECK(e.values[i] == doctest::Approx(want[i]).epsilon(1e-9));
}

TEST_CASE("conditioned random graphs") {
    CHECK(erdos_renyi_conditioned(4, 6, 99) == complete_graph(4));
    CHECK(erdos_renyi_conditioned(4, 0, 7).edge_count() == 0);
    const WeightedGraph a = erdos_renyi_conditioned(12, 36, 1);
    const WeightedGraph b = erdos_renyi_conditioned(12, 36, 1);
    CHECK(a == b);
    CHECK(a.edge_count() == 36);
    CHECK(a != erdos_renyi_conditioned(12, 36, 2));
    CHECK_THROWS_AS(erdos_renyi_conditioned(4, 7, 1), Error);
}

TEST_CASE("parse basics") {
    const WeightedGraph g = parse_graph("2 1\n1 2 1.0\n");
    CHECK(g.n == 2);
    REQUIRE(g.edge_count() == 1);
    CHECK(g.edges[0].w == 1.0);
}

TEST_CASE("write format is fixed") {
    CHECK(write_graph(weighted_k3()) == "3 3\n1 2 1\n1 3 2\n2 3 2\n");
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_graph("2 1\n1 2 -1\n"), doctest::Contains("line 2"), Error);
    CHECK_THROWS_WITH_AS(parse_graph("2 1\n1 2 -1\n"), doctest::Contains("non-positive"), Error);
    CHECK_THROWS_WITH_AS(parse_graph("junk\n"), doctest::Contains("line 1"), Error);
    CHECK_THROWS_WITH_AS(parse_graph("3 2\n1 2 1\n1 2 2\n"), doctest::Contains("duplicate"), Error);
    CHECK_THROWS_WITH_AS(parse_graph("3 1\n1 4 1\n"), doctest::Contains("out of range"), Error);
    CHECK_THROWS_WITH_AS(parse_graph("3 1\n2 1 1\n"), doctest::Contains("u < v"), Error);
    CHECK_THROWS_AS(parse_graph("# only a comment\n"), Error);
}

TEST_CASE("parse/write round-trip on random graphs") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(10));
        const long long total = static_cast<long long>(n) * (n - 1) / 2;
        const int m = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(total) + 1));
        WeightedGraph g = erdos_renyi_conditioned(n, m, rng.next());
        for (auto& e : g.edges) e.w = rng.next_real(1e-3, 50.0);
        CHECK(parse_graph(write_graph(g)) == g);
    }
}

TEST_CASE("comments and blank lines are skipped") {
    const WeightedGraph g = parse_graph("# header\n\n3 2\n# edge block\n1 2 0.5\n2 3 2.25\n");
    CHECK(g.edge_count() == 2);
}

TEST_CASE("duplicate edges rejected by make_graph") {
    CHECK_THROWS_AS(make_graph(3, {{0, 1, 1.0}, {1, 0, 2.0}}), Error);
    CHECK_THROWS_AS(make_graph(3, {{0, 0, 1.0}}), Error);
    CHECK_THROWS_AS(make_graph(3, {{0, 1, 0.0}}), Error);
}

TEST_CASE("graph hash is order-insensitive and weight-sensitive") {
    const WeightedGraph a = make_graph(3, {{0, 1, 1.0}, {1, 2, 2.0}});
    const WeightedGraph b = make_graph(3, {{1, 2, 2.0}, {0, 1, 1.0}});
    CHECK(graph_hash(a) == graph_hash(b));
    const WeightedGraph c = make_graph(3, {{0, 1, 1.0}, {1, 2, 2.5}});
    CHECK(graph_hash(a) != graph_hash(c));
}
