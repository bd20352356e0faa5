#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fatgraph.hpp"
#include "grid.hpp"
#include "mcg.hpp"
#include "smith.hpp"
#include "words.hpp"

namespace obforge {

struct PageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CurveKind { EmbeddedLink, Pushoff, HandleCore, MonodromyGenerator, ProbeArc };

struct PageCurve {
    int id = -1;
    CurveKind kind = CurveKind::EmbeddedLink;
    NormalPath path;
    std::string name;
};

struct Handle {
    int id = -1;
    int side = +1;           // +1 attached left of the curve, -1 right
    int core_curve = -1;     // registry id of the core circle
    int mid_vertex = -1;     // degree-2 disk in the middle of the handle band
    int cocore_start = -1;   // corners of that disk, anchoring the co-core arc
    int cocore_end = -1;
};

// The combinatorial page: plumbing squares of the slope +1 / slope -1 strips
// of the square bridge position, joined by bands along the strips, plus any
// stabilization handles. Every band carries a midpoint disk so co-core arcs
// and handle feet have boundary corners to anchor to. The Seifert form lives
// on the cycle basis (face circles of the grid, then handle cores); framings
// and linkings of page curves follow homologically from it.
struct Page {
    FatGraph graph;
    int p = 0, q = 0;
    enum class VertexKind { Square, BandMid, HandleMid };
    std::vector<std::vector<int>> square;  // [i][j] vertex ids
    std::vector<VertexKind> vertex_kind;
    // darts leaving square (i,j) toward each neighbor strip segment
    std::vector<std::vector<int>> east, west, north, south;

    std::vector<PageCurve> curves;
    std::vector<Handle> handles;
    std::vector<int> face_curves;  // registry ids, row-major (p-1)*(q-1)
    IntMatrix seifert;             // Seifert form on the cycle basis
    int next_rank = 0;             // arc endpoint disambiguator

    int chi() const { return graph.euler(); }
    int boundary_count() const { return graph.num_boundary(); }
    int genus() const { return graph.genus(); }
    std::size_t basis_rank() const { return face_curves.size() + handles.size(); }

    const PageCurve& curve(int id) const { return curves.at(id); }

    int register_curve(CurveKind kind, NormalPath path, std::string name) {
        PageCurve c;
        c.id = static_cast<int>(curves.size());
        c.kind = kind;
        c.path = std::move(path);
        c.name = std::move(name);
        curves.push_back(std::move(c));
        return curves.back().id;
    }

    std::vector<NormalPath> basis_cycles() const {
        std::vector<NormalPath> out;
        for (int id : face_curves) out.push_back(curves[id].path);
        for (const auto& h : handles) out.push_back(curves[h.core_curve].path);
        return out;
    }

    HomologyBasis homology() const { return make_basis(graph, basis_cycles()); }

    std::vector<std::int64_t> curve_class(const HomologyBasis& hb, int id) const {
        return homology_class(graph, hb, curves[id].path);
    }

    std::int64_t seifert_pair(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) const {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * seifert[i][j] * b[j];
        return s;
    }

    // Page framing of a closed curve: the Seifert self-pairing of its class.
    std::int64_t framing(const HomologyBasis& hb, int id) const {
        auto x = curve_class(hb, id);
        return seifert_pair(x, x);
    }
};

namespace detail {

// Seifert matrix of the bare torus-knot page in the face basis: the tensor
// square of the upper bidiagonal (1, -1) matrix, negated. Pinned against the
// Alexander polynomial of T(p,q) by tests.
inline IntMatrix torus_seifert(int p, int q) {
    int rp = p - 1, rq = q - 1;
    auto u = [](int m, int i, int k) -> std::int64_t {
        if (k == i) return 1;
        if (k == i + 1 && k < m) return -1;
        return 0;
    };
    IntMatrix v(rp * rq, std::vector<std::int64_t>(rp * rq, 0));
    for (int i = 0; i < rp; ++i)
        for (int j = 0; j < rq; ++j)
            for (int k = 0; k < rp; ++k)
                for (int l = 0; l < rq; ++l) v[i * rq + j][k * rq + l] = -(u(rp, i, k) * u(rq, j, l));
    return v;
}

inline void append_band_step(const FatGraph& g, NormalPath& p, int dart_from_square) {
    // a band crossing is two darts: into the midpoint disk and onward
    p.darts.push_back(dart_from_square);
    int mid = g.head(dart_from_square);
    for (int d : g.rotation(mid)) {
        if (g.edge_of(d) != g.edge_of(dart_from_square)) {
            p.darts.push_back(d);
            return;
        }
    }
    throw PageError("degenerate band midpoint");
}

}  // namespace detail

inline Page build_page(int p, int q) {
    if (p < 2 || q < 2) throw PageError("page needs at least two strips of each slope");
    if (std::gcd(p, q) != 1)
        throw PageError("strip counts must be coprime, got gcd " + std::to_string(std::gcd(p, q)));
    Page pg;
    pg.p = p;
    pg.q = q;
    auto& g = pg.graph;
    pg.square.assign(p, std::vector<int>(q, -1));
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) {
            pg.square[i][j] = g.add_vertex();
            pg.vertex_kind.push_back(Page::VertexKind::Square);
        }
    pg.east.assign(p, std::vector<int>(q, -1));
    pg.west.assign(p, std::vector<int>(q, -1));
    pg.north.assign(p, std::vector<int>(q, -1));
    pg.south.assign(p, std::vector<int>(q, -1));
    for (int i = 0; i < p; ++i)
        for (int j = 0; j + 1 < q; ++j) {
            int mid = g.add_vertex();
            pg.vertex_kind.push_back(Page::VertexKind::BandMid);
            auto [a1, m1] = g.add_edge(pg.square[i][j], mid);
            auto [m2, a2] = g.add_edge(mid, pg.square[i][j + 1]);
            (void)m1; (void)m2;
            pg.east[i][j] = a1;
            pg.west[i][j + 1] = a2;
        }
    for (int i = 0; i + 1 < p; ++i)
        for (int j = 0; j < q; ++j) {
            int mid = g.add_vertex();
            pg.vertex_kind.push_back(Page::VertexKind::BandMid);
            auto [a1, m1] = g.add_edge(pg.square[i][j], mid);
            auto [m2, a2] = g.add_edge(mid, pg.square[i + 1][j]);
            (void)m1; (void)m2;
            pg.north[i][j] = a1;
            pg.south[i + 1][j] = a2;
        }
    // the plumbing rotation: the two strip directions stay adjacent
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) {
            std::vector<int> rot;
            if (pg.east[i][j] >= 0) rot.push_back(pg.east[i][j]);
            if (pg.west[i][j] >= 0) rot.push_back(pg.west[i][j]);
            if (pg.north[i][j] >= 0) rot.push_back(pg.north[i][j]);
            if (pg.south[i][j] >= 0) rot.push_back(pg.south[i][j]);
            g.set_rotation(pg.square[i][j], rot);
        }
    // face circles: the Hopf-band cores of the plumbing grid
    for (int i = 0; i + 1 < p; ++i)
        for (int j = 0; j + 1 < q; ++j) {
            NormalPath c;
            c.closed = true;
            detail::append_band_step(g, c, pg.east[i][j]);
            detail::append_band_step(g, c, pg.north[i][j + 1]);
            detail::append_band_step(g, c, pg.west[i + 1][j + 1]);
            detail::append_band_step(g, c, pg.south[i + 1][j]);
            c = normalize(g, c);
            int id = pg.register_curve(CurveKind::MonodromyGenerator, std::move(c),
                                       "core(" + std::to_string(i) + "," + std::to_string(j) + ")");
            pg.face_curves.push_back(id);
        }
    pg.seifert = detail::torus_seifert(p, q);
    return pg;
}

// Embeds one traced grid component as a closed curve through the squares it
// occupies. Grid rows are the slope +1 strips, columns the slope -1 strips;
// the padded final column stays empty.
inline int embed_component(Page& pg, const OrientedComponent& comp, std::string name) {
    NormalPath path;
    path.closed = true;
    for (const auto& s : comp.segments()) {
        int step = s.to > s.from ? 1 : -1;
        if (s.horizontal) {
            for (int c = s.from; c != s.to; c += step)
                detail::append_band_step(pg.graph, path, step > 0 ? pg.east[s.line][c] : pg.west[s.line][c]);
        } else {
            for (int r = s.from; r != s.to; r += step)
                detail::append_band_step(pg.graph, path, step > 0 ? pg.north[r][s.line] : pg.south[r][s.line]);
        }
    }
    path = normalize(pg.graph, path);
    return pg.register_curve(CurveKind::EmbeddedLink, std::move(path), std::move(name));
}

// Parallel copy in the page; it realizes the page framing, so its linking
// with the original equals that framing.
inline int pushoff_curve(Page& pg, int curve_id, std::string name) {
    NormalPath path = pg.curves.at(curve_id).path;
    return pg.register_curve(CurveKind::Pushoff, std::move(path), std::move(name));
}

// Plumbs a stabilization handle beside the curve at its first band transit:
// both feet land in the boundary gap on the requested side and the curve is
// rerouted over the handle once. chi drops by one; the boundary circle
// holding the feet splits, so the boundary count moves by one as well. The
// fresh handle hangs off the old surface, so its core pairs to zero with
// every older class and carries self-framing -1.
inline int attach_stabilization(Page& pg, int curve_id, int side) {
    auto& g = pg.graph;
    NormalPath path = pg.curves.at(curve_id).path;
    if (!path.closed) throw PageError("only closed curves can be stabilized");
    std::size_t m = path.darts.size();
    std::size_t at = m;
    for (std::size_t k = 0; k < m; ++k) {
        int v = g.tail(path.darts[k]);
        if (pg.vertex_kind[v] != Page::VertexKind::Square) { at = k; break; }
    }
    if (at == m) throw PageError("curve never crosses a band");
    int d_in = path.darts[(at + m - 1) % m];  // arrives at the midpoint disk
    int d_out = path.darts[at];               // leaves it
    // travelling through the disk, the gap after the exit dart lies left of
    // the curve, the gap after the reversed entry dart lies right of it
    int corner = side > 0 ? d_out : g.mate(d_in);
    int hm = g.add_vertex();
    pg.vertex_kind.push_back(Page::VertexKind::HandleMid);
    auto [a_mid, a_hm] = g.add_edge_foot(corner, hm);
    auto [b_mid, b_hm] = g.add_edge_foot(a_mid, hm);
    NormalPath core;
    core.closed = true;
    core.darts = {a_mid, g.mate(b_mid)};
    core = normalize(g, core);
    int core_id = pg.register_curve(CurveKind::HandleCore, std::move(core),
                                    "handle" + std::to_string(pg.handles.size()));
    Handle h;
    h.id = static_cast<int>(pg.handles.size());
    h.side = side;
    h.core_curve = core_id;
    h.mid_vertex = hm;
    h.cocore_start = a_hm;
    h.cocore_end = b_hm;
    pg.handles.push_back(h);
    // Reroute the curve over the handle. The detour splits the old chord
    // into (arrival -> exit foot) and (return foot -> departure); the feet
    // must be taken in the order that keeps the two new chords nested in the
    // rotation, or the curve would cross itself in the disk.
    int v_mid = g.vertex_of(d_out);
    auto pos = [&](int d) { return g.index_in_rotation(d); };
    auto interleaved = [&](int w, int x, int y, int z) {
        int deg = g.degree(v_mid);
        auto rel = [&](int d) { return ((pos(d) - pos(w)) % deg + deg) % deg; };
        int rx = rel(x), ry = rel(y), rz = rel(z);
        return (ry < rx) != (rz < rx);
    };
    int exit_foot = a_mid, return_foot = b_mid;
    if (interleaved(g.mate(d_in), exit_foot, return_foot, d_out)) std::swap(exit_foot, return_foot);
    if (interleaved(g.mate(d_in), exit_foot, return_foot, d_out))
        throw PageError("handle feet cannot be nested");
    std::vector<int> darts;
    darts.reserve(m + 2);
    for (std::size_t k = 0; k < m; ++k) {
        if (k == at) {
            darts.push_back(exit_foot);
            darts.push_back(g.mate(return_foot));
        }
        darts.push_back(path.darts[k]);
    }
    path.darts = std::move(darts);
    pg.curves[curve_id].path = normalize(g, path);
    std::size_t r = pg.seifert.size();
    for (auto& row : pg.seifert) row.push_back(0);
    pg.seifert.push_back(std::vector<std::int64_t>(r + 1, 0));
    pg.seifert[r][r] = -1;
    return h.id;
}

// Co-core of a handle: the empty arc across its midpoint disk.
inline NormalPath cocore_arc(Page& pg, const Handle& h) {
    NormalPath arc;
    arc.base_vertex = h.mid_vertex;
    arc.start_corner = h.cocore_start;
    arc.end_corner = h.cocore_end;
    arc.start_rank = pg.next_rank++;
    arc.end_rank = pg.next_rank++;
    return arc;
}

// Dual arcs across the untouched band midpoints of the plumbing grid.
inline std::vector<NormalPath> spine_dual_arcs(Page& pg) {
    std::vector<NormalPath> out;
    for (int v = 0; v < pg.graph.num_vertices(); ++v) {
        if (pg.vertex_kind[v] != Page::VertexKind::BandMid) continue;
        if (pg.graph.degree(v) != 2) continue;  // handle feet were planted here
        NormalPath arc;
        arc.base_vertex = v;
        arc.start_corner = pg.graph.rotation(v)[0];
        arc.end_corner = pg.graph.rotation(v)[1];
        arc.start_rank = pg.next_rank++;
        arc.end_rank = pg.next_rank++;
        out.push_back(std::move(arc));
    }
    return out;
}

// Seifert pairing matrix over a list of registered curves: framings on the
// diagonal, linking numbers of disjoint curves off it.
inline IntMatrix seifert_matrix(const Page& pg, const HomologyBasis& hb, const std::vector<int>& curve_ids) {
    std::vector<std::vector<std::int64_t>> cls;
    for (int id : curve_ids) cls.push_back(pg.curve_class(hb, id));
    std::size_t n = cls.size();
    IntMatrix s(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s[i][j] = pg.seifert_pair(cls[i], cls[j]);
    return s;
}

}  // namespace obforge
