#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "obforge/analysis.hpp"
#include "obforge/openbook.hpp"
#include "obforge/page.hpp"
#include "obforge/pipeline.hpp"
#include "test_support.hpp"

using namespace obforge;

namespace {

// Independent check of the Seifert form: det(V - t V^T) evaluated at integer
// points must match the torus-knot Alexander polynomial
//   (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1)).
std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}
std::int64_t alexander_torus_at(int p, int q, std::int64_t t) {
    return (ipow(t, p * q) - 1) * (t - 1) / ((ipow(t, p) - 1) * (ipow(t, q) - 1));
}

}  // namespace

TEST_CASE("build anchors: fiber surface shape") {
    auto small = build_page(2, 3);
    REQUIRE(small.chi() == -1);
    REQUIRE(small.boundary_count() == 1);
    REQUIRE(small.genus() == 1);
    REQUIRE(small.face_curves.size() == 2);

    auto big = build_page(5, 6);
    REQUIRE(big.chi() == -19);
    REQUIRE(big.boundary_count() == 1);
    REQUIRE(big.genus() == 10);
    REQUIRE(big.face_curves.size() == 20);
}

TEST_CASE("seifert form matches the torus-knot alexander polynomial") {
    for (auto [p, q] : {std::pair{2, 3}, {2, 5}, {3, 4}, {3, 5}}) {
        auto pg = build_page(p, q);
        const auto& v = pg.seifert;
        std::size_t n = v.size();
        for (std::int64_t t : {2, 3}) {
            IntMatrix m(n, std::vector<std::int64_t>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m[i][j] = v[i][j] - t * v[j][i];
            std::int64_t det = mat_det(m);
            std::int64_t alex = alexander_torus_at(p, q, t);
            INFO("p=" << p << " q=" << q << " t=" << t);
            // det may differ from the normalized polynomial by +-t^k
            std::int64_t ratio_num = std::llabs(det), ratio_den = std::llabs(alex);
            std::int64_t big = std::max(ratio_num, ratio_den), small_ = std::min(ratio_num, ratio_den);
            REQUIRE(small_ != 0);
            REQUIRE(big % small_ == 0);
            std::int64_t u = big / small_;
            while (u % t == 0) u /= t;
            REQUIRE(u == 1);
        }
    }
}

TEST_CASE("seifert matrix anchors on the smallest page") {
    auto pg = build_page(2, 3);
    // the two Hopf cores: framings -1, one-sided pairing
    IntMatrix want = {{-1, 1}, {0, -1}};
    REQUIRE(pg.seifert == want);
    IntMatrix sym(2, std::vector<std::int64_t>(2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) sym[i][j] = pg.seifert[i][j] + pg.seifert[j][i];
    REQUIRE(mat_det(sym) == 3);

    // the engine's pairing agrees with the antisymmetrized form
    auto hb = pg.homology();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            REQUIRE(hb.pairing[i][j] == pg.seifert[i][j] - pg.seifert[j][i]);
}

TEST_CASE("embedded components realize their contact framing") {
    struct Anchor {
        GridDiagram g;
        int tb;
    };
    std::vector<Anchor> anchors = {
        {{2, {0, 1}, {1, 0}, {}}, -1},            // unknot
        {{5, {0, 4, 3, 2, 1}, {3, 2, 1, 0, 4}, {}}, 1},  // maximal right trefoil
        {{3, {0, 1, 2}, {2, 0, 1}, {}}, -2},      // stabilized unknot
    };
    for (auto& a : anchors) {
        a.g.validate();
        auto comps = components(a.g);
        auto sb = square_bridge(a.g);
        auto pg = build_page(sb.p, sb.q);
        auto hb = pg.homology();
        int id = embed_component(pg, comps[0], "c");
        REQUIRE(self_intersection(pg.graph, pg.curves[id].path) == 0);
        REQUIRE(pg.framing(hb, id) == a.tb);
        // nonseparating: nonzero class
        auto cls = pg.curve_class(hb, id);
        bool nonzero = false;
        for (auto x : cls) nonzero = nonzero || x != 0;
        REQUIRE(nonzero);
    }
}

TEST_CASE("random grids embed with framing = tb and linking = grid linking") {
    std::mt19937_64 rng(51);
    int done = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto g = testing::random_grid(rng, 2 + trial % 5);
        auto comps = components(g);
        auto sb = square_bridge(g);
        auto pg = build_page(sb.p, sb.q);
        auto hb = pg.homology();
        std::vector<int> ids;
        for (std::size_t i = 0; i < comps.size(); ++i)
            ids.push_back(embed_component(pg, comps[i], "c" + std::to_string(i)));
        for (std::size_t i = 0; i < comps.size(); ++i) {
            REQUIRE(pg.framing(hb, ids[i]) == classical_invariants(comps[i]).tb);
            for (std::size_t j = i + 1; j < comps.size(); ++j) {
                auto ci = pg.curve_class(hb, ids[i]);
                auto cj = pg.curve_class(hb, ids[j]);
                REQUIRE(pg.seifert_pair(ci, cj) == linking_number(comps[i], comps[j]));
                REQUIRE(geometric_intersection(pg.graph, pg.curves[ids[i]].path, pg.curves[ids[j]].path) == 0);
            }
        }
        ++done;
    }
    REQUIRE(done == 40);
}

TEST_CASE("push-offs are parallel, disjoint, and link by the framing") {
    GridDiagram g{5, {0, 4, 3, 2, 1}, {3, 2, 1, 0, 4}, {}};
    auto comps = components(g);
    auto pg = build_page(5, 6);
    auto hb = pg.homology();
    int t = embed_component(pg, comps[0], "t");
    int t1 = pushoff_curve(pg, t, "t1");
    int t2 = pushoff_curve(pg, t1, "t2");
    REQUIRE(geometric_intersection(pg.graph, pg.curves[t].path, pg.curves[t1].path) == 0);
    REQUIRE(geometric_intersection(pg.graph, pg.curves[t1].path, pg.curves[t2].path) == 0);
    REQUIRE(geometric_intersection(pg.graph, pg.curves[t].path, pg.curves[t2].path) == 0);
    auto ct = pg.curve_class(hb, t);
    auto c1 = pg.curve_class(hb, t1);
    REQUIRE(ct == c1);
    REQUIRE(pg.seifert_pair(ct, c1) == 1);  // tb of the maximal trefoil
}

TEST_CASE("stabilization bookkeeping: euler, boundary, framing, reroute") {
    GridDiagram g{5, {0, 4, 3, 2, 1}, {3, 2, 1, 0, 4}, {}};
    auto comps = components(g);
    auto pg = build_page(5, 6);
    int t = embed_component(pg, comps[0], "t");
    int p0 = pushoff_curve(pg, t, "p0");

    int chi0 = pg.chi();
    int b0 = pg.boundary_count();
    for (int round = 0; round < 2; ++round) {
        attach_stabilization(pg, p0, round == 0 ? -1 : +1);
        REQUIRE(pg.chi() == chi0 - 1 - round);
        // a 1-handle changes the boundary count by exactly one; feet in one
        // gap always split their circle
        REQUIRE(pg.boundary_count() == b0 + 1 + round);
        auto hb = pg.homology();
        REQUIRE(pg.framing(hb, p0) == 1 - 1 - round);
        REQUIRE(self_intersection(pg.graph, pg.curves[p0].path) == 0);
        // the rerouted curve crosses the fresh handle exactly once
        auto dl = cocore_arc(pg, pg.handles.back());
        REQUIRE(geometric_intersection(pg.graph, dl, pg.curves[p0].path) == 1);
        // and stays off the original
        REQUIRE(geometric_intersection(pg.graph, pg.curves[t].path, pg.curves[p0].path) == 0);
    }
    REQUIRE(pg.chi() == -21);
    REQUIRE(pg.boundary_count() == 3);
}

TEST_CASE("assemble composes torus, handle and surgery letters in order") {
    const std::string src = "grid 5\nX 0 4 3 2 1\nO 3 2 1 0 4\ncomponent t coeff -5/3\n";
    auto r = compile_input(parse(src));
    const auto& ob = r.ob;
    REQUIRE(ob.word.size() == 24);
    REQUIRE(ob.word.size() == ob.expected_word_length());
    for (const auto& l : ob.word) REQUIRE(l.sign == +1);
    // provenance layout: 20 torus, 2 handles, 2 surgery
    REQUIRE(ob.provenance[0].kind == LetterProvenance::Kind::TorusGenerator);
    REQUIRE(ob.provenance[19].kind == LetterProvenance::Kind::TorusGenerator);
    REQUIRE(ob.provenance[20].kind == LetterProvenance::Kind::HandleCore);
    REQUIRE(ob.provenance[21].kind == LetterProvenance::Kind::HandleCore);
    REQUIRE(ob.provenance[22].kind == LetterProvenance::Kind::SurgeryEntry);
    REQUIRE(ob.provenance[23].kind == LetterProvenance::Kind::SurgeryEntry);
}

TEST_CASE("a positive surgery coefficient contributes one left-handed letter") {
    const std::string src = "grid 2\nX 0 1\nO 1 0\ncomponent k coeff 5/2 stabs +\n";
    auto r = compile_input(parse(src));
    int neg = 0;
    for (const auto& l : r.ob.word)
        if (l.sign < 0) neg++;
    REQUIRE(neg == 1);
    REQUIRE(r.ob.word.size() == 2 + 3 + 3);
}

TEST_CASE("empty program leaves the bare torus word") {
    auto pg = build_page(2, 3);
    auto ob = assemble(std::move(pg), SurgeryProgram{}, {});
    REQUIRE(ob.word.size() == 2);
    for (const auto& l : ob.word) REQUIRE(l.sign == +1);
}

TEST_CASE("handle side convention flag mirrors the attachment") {
    const std::string src = "grid 2\nX 0 1\nO 1 0\ncomponent k coeff 5/2 stabs +\n";
    PipelineOptions flipped;
    flipped.flip_handle_side = true;
    auto a = compile_input(parse(src));
    auto b = compile_input(parse(src), flipped);
    REQUIRE(a.ob.page.handles[0].side == +1);
    REQUIRE(b.ob.page.handles[0].side == -1);
    // bookkeeping identical either way
    REQUIRE(a.ob.page.chi() == b.ob.page.chi());
    REQUIRE(h1_from_linking(a.ob.program).str() == h1_from_linking(b.ob.program).str());
}
