#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace obforge {

struct GridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rectangular diagram of a Legendrian link: one X and one O per row and per
// column, rows indexed bottom-to-top, columns left-to-right. Rotating the
// picture 45 degrees puts every strand on a slope +-1 line, which is the
// normal form the page construction consumes.
struct GridDiagram {
    int n = 0;
    std::vector<int> xs;  // xs[row] = column of X
    std::vector<int> os;  // os[row] = column of O
    std::map<int, std::string> labels;  // component id -> user name

    void validate() const {
        if (n < 2) throw GridError("grid size must be at least 2");
        if (static_cast<int>(xs.size()) != n || static_cast<int>(os.size()) != n)
            throw GridError("marker rows do not match grid size");
        std::vector<int> seen_x(n, 0), seen_o(n, 0);
        for (int r = 0; r < n; ++r) {
            if (xs[r] < 0 || xs[r] >= n || os[r] < 0 || os[r] >= n)
                throw GridError("marker column out of range in row " + std::to_string(r));
            if (xs[r] == os[r])
                throw GridError("marker collision in row " + std::to_string(r));
            seen_x[xs[r]]++;
            seen_o[os[r]]++;
        }
        for (int c = 0; c < n; ++c) {
            if (seen_x[c] != 1) throw GridError("X markers are not a permutation (column " + std::to_string(c) + ")");
            if (seen_o[c] != 1) throw GridError("O markers are not a permutation (column " + std::to_string(c) + ")");
        }
    }
};

// One traced component: corners alternate X,O along the orientation
// (X -> O along rows, O -> X along columns).
struct GridCorner {
    bool is_x;
    int row, col;
};

struct Segment {
    bool horizontal;
    int line;        // row index if horizontal, column index if vertical
    int from, to;    // column range if horizontal, row range if vertical; oriented
};

struct OrientedComponent {
    int id = 0;
    std::vector<GridCorner> corners;  // cyclic, alternating X,O
    std::vector<Segment> segments() const {
        std::vector<Segment> segs;
        std::size_t m = corners.size();
        for (std::size_t k = 0; k < m; k += 2) {
            const auto& x = corners[k];
            const auto& o = corners[k + 1];
            const auto& x2 = corners[(k + 2) % m];
            segs.push_back({true, x.row, x.col, o.col});
            segs.push_back({false, o.col, o.row, x2.row});
        }
        return segs;
    }
};

inline std::vector<OrientedComponent> components(const GridDiagram& g) {
    std::vector<int> x_row_of_col(g.n);
    for (int r = 0; r < g.n; ++r) x_row_of_col[g.xs[r]] = r;
    std::vector<bool> used(g.n, false);
    std::vector<OrientedComponent> out;
    for (int r0 = 0; r0 < g.n; ++r0) {
        if (used[r0]) continue;
        OrientedComponent comp;
        comp.id = static_cast<int>(out.size());
        int r = r0;
        do {
            used[r] = true;
            comp.corners.push_back({true, r, g.xs[r]});
            comp.corners.push_back({false, r, g.os[r]});
            r = x_row_of_col[g.os[r]];
        } while (r != r0);
        out.push_back(std::move(comp));
    }
    return out;
}

struct ClassicalInvariants {
    int tb = 0;
    int rot = 0;
    int writhe = 0;
    int up_cusps = 0;
    int down_cusps = 0;
};

namespace detail {

// After the 45-degree rotation, horizontal E/W motion maps to slope +1 and
// vertical N/S to slope -1. A corner is a cusp exactly when the rotated
// x-motion reverses; the cusp is traversed up or down with the (unchanged)
// rotated y-motion. In corner-shape terms: NW and SE corners are cusps,
// NE and SW are smooth.
inline int rotated_x_dir(const Segment& s) {
    if (s.horizontal) return s.to > s.from ? 1 : -1;  // E:+, W:-
    return s.to > s.from ? -1 : 1;                    // N:-, S:+
}
inline int rotated_y_dir(const Segment& s) {
    return s.to > s.from ? 1 : -1;  // E,N:+  W,S:-
}

// Crossing sign with the grid convention that vertical strands cross over
// horizontal ones. The sign is pinned so that the page framing of an
// embedded component reproduces tb: the maximal right trefoil grid must
// come out at tb = +1 to match its framing on the torus-knot page.
inline int crossing_sign(int hdir, int vdir) { return vdir == hdir ? -1 : 1; }

inline int signed_crossings(const std::vector<Segment>& hs, const std::vector<Segment>& vs) {
    int w = 0;
    for (const auto& h : hs) {
        int c1 = std::min(h.from, h.to), c2 = std::max(h.from, h.to);
        int hdir = h.to > h.from ? 1 : -1;
        for (const auto& v : vs) {
            int r1 = std::min(v.from, v.to), r2 = std::max(v.from, v.to);
            int vdir = v.to > v.from ? 1 : -1;
            if (c1 < v.line && v.line < c2 && r1 < h.line && h.line < r2)
                w += crossing_sign(hdir, vdir);
        }
    }
    return w;
}

}  // namespace detail

// Same cycle with the opposite orientation.
inline std::vector<Segment> reversed_segments(const OrientedComponent& c) {
    auto segs = c.segments();
    std::reverse(segs.begin(), segs.end());
    for (auto& s : segs) std::swap(s.from, s.to);
    return segs;
}

inline ClassicalInvariants classical_invariants_of_segments(const std::vector<Segment>& segs) {
    ClassicalInvariants inv;
    std::size_t m = segs.size();
    for (std::size_t k = 0; k < m; ++k) {
        const auto& a = segs[k];
        const auto& b = segs[(k + 1) % m];
        if (detail::rotated_x_dir(a) != detail::rotated_x_dir(b)) {
            if (detail::rotated_y_dir(a) > 0) inv.up_cusps++;
            else inv.down_cusps++;
        }
    }
    std::vector<Segment> hs, vs;
    for (const auto& s : segs) (s.horizontal ? hs : vs).push_back(s);
    inv.writhe = detail::signed_crossings(hs, vs);
    inv.tb = inv.writhe - (inv.up_cusps + inv.down_cusps) / 2;
    inv.rot = (inv.down_cusps - inv.up_cusps) / 2;
    return inv;
}

inline ClassicalInvariants classical_invariants(const OrientedComponent& c) {
    return classical_invariants_of_segments(c.segments());
}

// Linking number of two distinct components: half the signed count of
// inter-component crossings.
inline int linking_number(const OrientedComponent& a, const OrientedComponent& b) {
    std::vector<Segment> ha, va, hb, vb;
    for (const auto& s : a.segments()) (s.horizontal ? ha : va).push_back(s);
    for (const auto& s : b.segments()) (s.horizontal ? hb : vb).push_back(s);
    int total = detail::signed_crossings(ha, vb) + detail::signed_crossings(hb, va);
    return total / 2;
}

// Grid-level Legendrian stabilization at the component's first X corner.
// Positive stabilization is the X:NW marker split, negative is X:SE; the
// other two splits are not Legendrian stabilizations (they change tb by 0
// or -2). The (delta tb, delta rot) table is pinned by tests.
inline GridDiagram stabilize(const GridDiagram& g, const OrientedComponent& c, int sign) {
    int r = c.corners.at(0).row;
    int col = g.xs[r];
    int r_o = -1;
    for (int rr = 0; rr < g.n; ++rr)
        if (g.os[rr] == col) r_o = rr;
    GridDiagram out;
    out.n = g.n + 1;
    out.xs.assign(out.n, -1);
    out.os.assign(out.n, -1);
    out.labels = g.labels;
    auto sc = [&](int x) { return x >= col ? x + 1 : x; };
    for (int rr = 0; rr < g.n; ++rr) {
        int tr = rr < r ? rr : rr + 1;
        if (rr != r) {
            out.xs[tr] = sc(g.xs[rr]);
            out.os[tr] = sc(g.os[rr]);
        }
    }
    // block rows {r, r+1}, cols {col, col+1}; O corner NW for positive, SE for negative
    int ro = sign > 0 ? r + 1 : r;
    int co = sign > 0 ? col : col + 1;
    int rp = ro == r + 1 ? r : r + 1;
    int cp = co == col + 1 ? col : col + 1;
    out.xs[ro] = cp;
    out.xs[rp] = co;
    out.os[ro] = co;
    out.os[rp] = sc(g.os[r]);
    int tr_o = r_o < r ? r_o : r_o + 1;
    out.os[tr_o] = cp;
    out.validate();
    return out;
}

// Square bridge position: after rotation the n rows become slope +1 lines and
// the n columns slope -1 lines; one unused slope -1 line is appended so the
// line counts are coprime and the ambient binding is a torus knot.
struct SquareBridgePosition {
    int p = 0;  // slope +1 lines (rows)
    int q = 0;  // slope -1 lines (columns, after padding)
    // per component, cyclic alternating (plus-line, minus-line) visits
    std::vector<std::vector<std::pair<int, int>>> incidence;
};

inline SquareBridgePosition square_bridge(const GridDiagram& g) {
    SquareBridgePosition sb;
    sb.p = g.n;
    sb.q = g.n + 1;  // gcd(n, n+1) = 1
    for (const auto& comp : components(g)) {
        std::vector<std::pair<int, int>> inc;
        std::size_t m = comp.corners.size();
        for (std::size_t k = 0; k < m; k += 2) {
            const auto& x = comp.corners[k];
            const auto& o = comp.corners[k + 1];
            inc.emplace_back(x.row, o.col);  // row segment then column segment
        }
        sb.incidence.push_back(std::move(inc));
    }
    return sb;
}

}  // namespace obforge
