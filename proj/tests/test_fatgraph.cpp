#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "obforge/fatgraph.hpp"
#include "obforge/page.hpp"

using namespace obforge;

TEST_CASE("thickened graph invariants of small examples") {
    // single loop with both ends in one rotation: an annulus
    FatGraph g;
    int v = g.add_vertex();
    g.add_edge(v, v);
    REQUIRE(g.euler() == 0);
    REQUIRE(g.num_boundary() == 2);
    REQUIRE(g.genus() == 0);
}

TEST_CASE("page boundary is connected exactly when the strip counts allow") {
    for (int p = 2; p <= 7; ++p)
        for (int q = p + 1; q <= 8; ++q) {
            if (std::gcd(p, q) != 1) continue;
            auto pg = build_page(p, q);
            INFO("p=" << p << " q=" << q);
            REQUIRE(pg.chi() == p + q - p * q);
            REQUIRE(pg.boundary_count() == 1);
            REQUIRE(pg.genus() == (p - 1) * (q - 1) / 2);
        }
    REQUIRE_THROWS_AS(build_page(2, 2), PageError);
    REQUIRE_THROWS_AS(build_page(4, 6), PageError);
}

TEST_CASE("rotation editing keeps the dart set") {
    FatGraph g;
    int v = g.add_vertex(), w = g.add_vertex();
    auto [a, b] = g.add_edge(v, w);
    auto [c, d] = g.add_edge(v, w);
    REQUIRE(g.degree(v) == 2);
    g.set_rotation(v, {c, a});
    REQUIRE(g.sigma(c) == a);
    REQUIRE_THROWS(g.set_rotation(v, {a, b}));
    (void)b;
    (void)d;
}

TEST_CASE("corner insertion lands the feet next to each other") {
    FatGraph g;
    int v = g.add_vertex(), w = g.add_vertex(), u = g.add_vertex();
    auto [a, b] = g.add_edge(v, w);
    (void)b;
    auto [f1, h1] = g.add_edge_foot(a, u);
    auto [f2, h2] = g.add_edge_foot(f1, u);
    (void)h1;
    (void)h2;
    REQUIRE(g.rotation(v) == std::vector<int>{a, f1, f2});
    REQUIRE(g.sigma(a) == f1);
    REQUIRE(g.sigma(f1) == f2);
}
