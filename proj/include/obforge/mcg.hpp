#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fatgraph.hpp"
#include "smith.hpp"
#include "words.hpp"

namespace obforge {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct McgLimits {
    std::size_t max_word_length = 200000;
    std::size_t max_alignment_work = 50000000;
    // iterated monodromy images past this size stop the deepening of a probe
    // without raising an error; the hard ceilings above stay fatal
    std::size_t iterate_word_cap = 4000;

    void charge(std::size_t& used, std::size_t amount) const {
        used += amount;
        if (used > max_alignment_work) throw BudgetExceeded("curve engine work ceiling exceeded");
    }
};

// A direction at a vertex: an outgoing dart, or a boundary corner (the gap
// after `id` in the rotation) refined by an endpoint rank.
struct Elem {
    bool corner = false;
    int id = -1;
    int rank = 0;

    bool operator==(const Elem& o) const { return corner == o.corner && id == o.id && rank == o.rank; }
    bool operator!=(const Elem& o) const { return !(*this == o); }
};

inline Elem dart_elem(int d) { return {false, d, 0}; }
inline Elem corner_elem(int corner, int rank) { return {true, corner, rank}; }

// Sweep key of x at the vertex of ref, counterclockwise from ref. The
// reference is never produced as a key of 0-equivalent unless x == ref.
inline std::pair<int, int> sweep_key(const FatGraph& g, const Elem& ref, const Elem& x) {
    if (!ref.corner) {
        int base = g.sweep_from_dart(ref.id, x.id, x.corner);
        return {base, x.corner ? x.rank : 0};
    }
    int v = g.vertex_of(ref.id);
    if (x.corner && x.id == ref.id) {
        if (x.rank > ref.rank) return {0, x.rank - ref.rank};
        return {2 * g.degree(v) + 2, x.rank};
    }
    int base = g.sweep_from_corner(ref.id, x.id, x.corner);
    return {base, x.corner ? x.rank : 0};
}

// Transit of a path through a vertex disk: arrival direction (as the dart
// pointing back along the arrival band, or the start corner) and departure.
struct Transit {
    int vertex = -1;
    Elem in, out;
    std::size_t pos = 0;  // insertion index into the dart word
};

inline std::vector<Transit> transits_of(const FatGraph& g, const NormalPath& p) {
    std::vector<Transit> ts;
    std::size_t m = p.darts.size();
    if (p.closed) {
        for (std::size_t k = 0; k < m; ++k) {
            int prev = p.darts[(k + m - 1) % m];
            ts.push_back({g.tail(p.darts[k]), dart_elem(g.mate(prev)), dart_elem(p.darts[k]), k});
        }
        return ts;
    }
    if (m == 0) {
        ts.push_back({p.base_vertex, corner_elem(p.start_corner, p.start_rank),
                      corner_elem(p.end_corner, p.end_rank), 0});
        return ts;
    }
    ts.push_back({g.tail(p.darts[0]), corner_elem(p.start_corner, p.start_rank), dart_elem(p.darts[0]), 0});
    for (std::size_t k = 1; k < m; ++k)
        ts.push_back({g.tail(p.darts[k]), dart_elem(g.mate(p.darts[k - 1])), dart_elem(p.darts[k]), k});
    ts.push_back({g.head(p.darts[m - 1]), dart_elem(g.mate(p.darts[m - 1])),
                  corner_elem(p.end_corner, p.end_rank), m});
    return ts;
}

// One transverse crossing of `x` with a closed curve `c`, carrying what the
// twist needs: where to cut x, how to rotate c, and the local sign (measured
// against c's orientation).
struct Crossing {
    std::size_t x_insert = 0;
    std::size_t c_start = 0;
    int sigma = 0;
    std::pair<int, int> order_key{0, 0};  // nesting order among same-index insertions
};

namespace detail {

// Element just past the given word position: the next dart, or the arc's
// terminal corner.
inline std::optional<Elem> elem_after(const NormalPath& p, std::size_t idx) {
    std::size_t m = p.darts.size();
    if (p.closed) return dart_elem(p.darts[(idx + 1) % m]);
    if (idx + 1 < m) return dart_elem(p.darts[idx + 1]);
    return corner_elem(p.end_corner, p.end_rank);
}
inline std::optional<Elem> elem_before(const NormalPath& p, std::size_t idx) {
    std::size_t m = p.darts.size();
    if (p.closed) {
        // backward germ: the dart leaving this vertex along the previous band
        std::size_t j = (idx + m - 1) % m;
        return dart_elem(p.darts[j] ^ 1);
    }
    if (idx > 0) return dart_elem(p.darts[idx - 1] ^ 1);
    return corner_elem(p.start_corner, p.start_rank);
}

// Side of b's germ relative to a's germ, swept counterclockwise from ref.
// 0 means the germs are the same boundary endpoint.
inline int side_of(const FatGraph& g, const Elem& ref, const Elem& a, const Elem& b) {
    if (a == b) return 0;
    auto ka = sweep_key(g, ref, a);
    auto kb = sweep_key(g, ref, b);
    return kb > ka ? +1 : -1;
}

struct Run {
    std::size_t ai = 0, bi = 0, len = 0;
};

// Maximal runs of shared darts between a and b (same orientation). Closed
// diagonals (fully parallel wrap) are dropped: parallel strands never cross.
inline std::vector<Run> shared_runs(const NormalPath& a, const NormalPath& b, bool same_object,
                                    const McgLimits& lim, std::size_t& work) {
    std::vector<Run> runs;
    std::size_t m = a.darts.size(), n = b.darts.size();
    if (m == 0 || n == 0) return runs;
    std::unordered_map<int, std::vector<std::size_t>> where;
    for (std::size_t j = 0; j < n; ++j) where[b.darts[j]].push_back(j);
    std::set<std::pair<std::size_t, std::size_t>> visited;
    for (std::size_t i = 0; i < m; ++i) {
        auto it = where.find(a.darts[i]);
        if (it == where.end()) continue;
        for (std::size_t j : it->second) {
            if (same_object && i == j) continue;
            if (visited.count({i, j})) continue;
            lim.charge(work, 4);
            // walk back to the start of this diagonal
            std::size_t bi_ = i, bj = j, steps = 0;
            bool closed_diag = false;
            while (true) {
                bool can_a = a.closed ? true : bi_ > 0;
                bool can_b = b.closed ? true : bj > 0;
                if (!can_a || !can_b) break;
                std::size_t pa = a.closed ? (bi_ + m - 1) % m : bi_ - 1;
                std::size_t pb = b.closed ? (bj + n - 1) % n : bj - 1;
                if (a.darts[pa] != b.darts[pb]) break;
                if (same_object && pa == pb) break;
                bi_ = pa;
                bj = pb;
                lim.charge(work, 1);
                if (++steps > m + n) { closed_diag = true; break; }
                if (bi_ == i && bj == j) { closed_diag = true; break; }
            }
            if (closed_diag) {
                std::size_t ci = i, cj = j;
                do {
                    visited.insert({ci, cj});
                    ci = (ci + 1) % m;
                    cj = (cj + 1) % n;
                } while (!(ci == i && cj == j));
                continue;
            }
            // walk forward from the start, collecting the run
            std::size_t len = 1;
            visited.insert({bi_, bj});
            std::size_t fi = bi_, fj = bj;
            while (true) {
                bool can_a = a.closed ? true : fi + 1 < m;
                bool can_b = b.closed ? true : fj + 1 < n;
                if (!can_a || !can_b) break;
                std::size_t na = a.closed ? (fi + 1) % m : fi + 1;
                std::size_t nb = b.closed ? (fj + 1) % n : fj + 1;
                if (a.darts[na] != b.darts[nb]) break;
                if (same_object && na == nb) break;
                fi = na;
                fj = nb;
                visited.insert({fi, fj});
                ++len;
                lim.charge(work, 1);
                if (len > m + n) break;  // safety; closed diagonals were caught above
            }
            runs.push_back({bi_, bj, len});
        }
    }
    return runs;
}

}  // namespace detail

// All transverse crossings of x with the closed curve c_view (one of the two
// orientations of a twisting curve). Pass same_object when x and c_view hold
// the identical dart word of one curve.
inline std::vector<Crossing> crossings_oriented(const FatGraph& g, const NormalPath& x,
                                                const NormalPath& c_view, bool same_object,
                                                bool include_chords, const McgLimits& lim,
                                                std::size_t& work) {
    std::vector<Crossing> out;
    std::size_t m = x.darts.size(), n = c_view.darts.size();

    // shared-band runs
    for (const auto& run : detail::shared_runs(x, c_view, same_object, lim, work)) {
        std::size_t ax_end = x.closed ? (run.ai + run.len - 1) % m : run.ai + run.len - 1;
        std::size_t bc_end = c_view.closed ? (run.bi + run.len - 1) % n : run.bi + run.len - 1;
        auto a_next = detail::elem_after(x, ax_end);
        auto b_next = detail::elem_after(c_view, bc_end);
        auto a_prev = detail::elem_before(x, run.ai);
        auto b_prev = detail::elem_before(c_view, run.bi);
        if (!a_next || !b_next || !a_prev || !b_prev) continue;
        Elem fwd_ref = dart_elem(g.mate(x.darts[ax_end]));
        Elem bwd_ref = dart_elem(x.darts[run.ai]);
        int side_fwd = detail::side_of(g, fwd_ref, *a_next, *b_next);
        int side_bwd = detail::side_of(g, bwd_ref, *a_prev, *b_prev);
        if (side_fwd == 0 || side_bwd == 0) continue;      // merges into a shared endpoint
        if (side_fwd != side_bwd) continue;                // band sides glue with a flip
        Crossing cr;
        cr.x_insert = run.ai;
        cr.c_start = run.bi;
        cr.sigma = side_fwd;
        cr.order_key = sweep_key(g, bwd_ref, *b_prev);
        out.push_back(cr);
    }

    if (!include_chords) return out;

    // chord pairs at shared vertices, away from shared bands
    auto tx = transits_of(g, x);
    auto tc = transits_of(g, c_view);
    std::map<int, std::vector<const Transit*>> by_vertex;
    for (const auto& t : tc) by_vertex[t.vertex].push_back(&t);
    auto edge_of = [&](const Elem& e) { return e.corner ? -1 - e.id : (e.id >> 1); };
    for (const auto& ta : tx) {
        auto it = by_vertex.find(ta.vertex);
        if (it == by_vertex.end()) continue;
        for (const Transit* tbp : it->second) {
            const Transit& tb = *tbp;
            if (same_object && ta.pos == tb.pos) continue;
            lim.charge(work, 2);
            int ea1 = edge_of(ta.in), ea2 = edge_of(ta.out);
            int eb1 = edge_of(tb.in), eb2 = edge_of(tb.out);
            if ((ea1 >= 0 && (ea1 == eb1 || ea1 == eb2)) || (ea2 >= 0 && (ea2 == eb1 || ea2 == eb2)))
                continue;  // shares a band: handled by runs
            if ((ta.in.corner && (ta.in == tb.in || ta.in == tb.out)) ||
                (ta.out.corner && (ta.out == tb.in || ta.out == tb.out)))
                continue;  // shared boundary endpoint is not a crossing
            auto k_out = sweep_key(g, ta.in, ta.out);
            auto k_bin = sweep_key(g, ta.in, tb.in);
            auto k_bout = sweep_key(g, ta.in, tb.out);
            bool bin_in = k_bin < k_out;
            bool bout_in = k_bout < k_out;
            if (bin_in == bout_in) continue;  // chords do not interleave
            Crossing cr;
            cr.x_insert = ta.pos;
            cr.c_start = tb.pos;  // transit pos == index of the outgoing dart
            cr.sigma = bin_in ? +1 : -1;
            cr.order_key = bin_in ? k_bin : k_bout;
            out.push_back(cr);
        }
    }
    return out;
}

// Geometric intersection number of two reduced paths in canonical position.
inline int geometric_intersection(const FatGraph& g, const NormalPath& a, const NormalPath& b,
                                  const McgLimits& lim = {}) {
    std::size_t work = 0;
    if (a.closed && b.closed && closed_words_equal(a, b)) return 0;  // parallel copies
    auto c1 = crossings_oriented(g, a, b, false, true, lim, work);
    auto b_rev = reverse_path(g, b);
    auto c2 = crossings_oriented(g, a, b_rev, false, false, lim, work);
    return static_cast<int>(c1.size() + c2.size());
}

inline int self_intersection(const FatGraph& g, const NormalPath& a, const McgLimits& lim = {}) {
    std::size_t work = 0;
    auto c1 = crossings_oriented(g, a, a, true, true, lim, work);
    auto a_rev = reverse_path(g, a);
    auto c2 = crossings_oriented(g, a, a_rev, false, false, lim, work);
    // every self-crossing shows up once per ordered occurrence pair
    return static_cast<int>(c1.size() + c2.size()) / 2;
}

// Algebraic intersection number <a, b>.
inline std::int64_t algebraic_intersection(const FatGraph& g, const NormalPath& a, const NormalPath& b,
                                           const McgLimits& lim = {}) {
    std::size_t work = 0;
    std::int64_t s = 0;
    if (a.closed && b.closed && closed_words_equal(a, b)) return 0;
    for (const auto& cr : crossings_oriented(g, a, b, false, true, lim, work)) s += cr.sigma;
    auto b_rev = reverse_path(g, b);
    for (const auto& cr : crossings_oriented(g, a, b_rev, false, false, lim, work)) s -= cr.sigma;
    return s;
}

// Dehn twist along an embedded closed curve, applied to a path. sign +1 is
// the twist realized by surgery letters of positive sign; its inverse undoes
// it. Each transverse crossing splices one full copy of the twisting curve
// into the target.
inline NormalPath apply_twist(const FatGraph& g, const NormalPath& curve, int sign, NormalPath target,
                              const McgLimits& lim = {}) {
    if (!curve.closed) throw PathError("twists run along closed curves only");
    std::size_t work = 0;
    struct Ins {
        std::size_t at;
        std::pair<int, int> order_key;
        std::vector<int> loop;
    };
    std::vector<Ins> ins;
    bool same = target.closed && closed_words_equal(target, curve);
    auto add = [&](const Crossing& cr, const NormalPath& view) {
        // Exponent of the loop in the coordinates of the view it was found in:
        // both view orientations reduce to the same rule.
        int e_view = sign * cr.sigma;
        std::vector<int> loop;
        std::size_t n = view.size();
        loop.reserve(n);
        for (std::size_t k = 0; k < n; ++k) loop.push_back(view.darts[(cr.c_start + k) % n]);
        if (e_view < 0) {
            // based loop traversed backwards: mate-reverse keeps the basepoint
            std::vector<int> rev;
            rev.reserve(n);
            for (std::size_t k = 0; k < n; ++k) rev.push_back(g.mate(loop[n - 1 - k]));
            loop = std::move(rev);
        }
        ins.push_back({cr.x_insert, cr.order_key, std::move(loop)});
    };
    if (!same) {
        for (const auto& cr : crossings_oriented(g, target, curve, false, true, lim, work))
            add(cr, curve);
        auto curve_rev = reverse_path(g, curve);
        for (const auto& cr : crossings_oriented(g, target, curve_rev, false, false, lim, work))
            add(cr, curve_rev);
    }
    if (ins.empty()) return target;
    std::stable_sort(ins.begin(), ins.end(), [](const Ins& a, const Ins& b) {
        if (a.at != b.at) return a.at < b.at;
        return a.order_key < b.order_key;
    });
    std::vector<int> darts;
    darts.reserve(target.size() + ins.size() * curve.size());
    std::size_t next = 0;
    for (std::size_t k = 0; k <= target.size(); ++k) {
        while (next < ins.size() && ins[next].at == k) {
            for (int d : ins[next].loop) darts.push_back(d);
            ++next;
        }
        if (k < target.size()) darts.push_back(target.darts[k]);
    }
    target.darts = std::move(darts);
    if (target.darts.size() > lim.max_word_length)
        throw BudgetExceeded("twisted path exceeds the word length ceiling");
    return normalize(g, target);
}

struct MonodromyLetter {
    int curve = -1;  // registry id, resolved by callers
    int sign = +1;   // +1 right-handed, -1 left-handed
};

// Letters act right to left: the last letter is applied first.
template <typename CurveLookup>
inline NormalPath apply_word_letters(const FatGraph& g, const std::vector<MonodromyLetter>& letters,
                                     const CurveLookup& lookup, NormalPath target,
                                     const McgLimits& lim = {}) {
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        target = apply_twist(g, lookup(it->curve), it->sign, std::move(target), lim);
    return target;
}

enum class Side { Left, Right, Equal };

inline const char* side_name(Side s) {
    switch (s) {
        case Side::Left: return "Left";
        case Side::Right: return "Right";
        default: return "Equal";
    }
}

// Side of arc b relative to arc a at their shared start endpoint, looking
// into the surface. Callers compare h(a) against a by passing b = h(a).
inline Side side_at_start(const FatGraph& g, const NormalPath& a, const NormalPath& b) {
    if (a.closed || b.closed) throw PathError("side comparison needs boundary arcs");
    if (a.start_corner != b.start_corner || a.start_rank != b.start_rank)
        throw PathError("arcs do not share the endpoint");
    if (a.darts == b.darts && a.same_endpoints(b)) return Side::Equal;
    Elem ref = corner_elem(a.start_corner, a.start_rank);
    std::size_t k = 0;
    while (k <= a.size() && k <= b.size()) {
        Elem ea = k < a.size() ? dart_elem(a.darts[k]) : corner_elem(a.end_corner, a.end_rank);
        Elem eb = k < b.size() ? dart_elem(b.darts[k]) : corner_elem(b.end_corner, b.end_rank);
        if (ea == eb) {
            if (ea.corner) return Side::Equal;  // same word, same far endpoint
            ref = dart_elem(g.mate(ea.id));
            ++k;
            continue;
        }
        int side = detail::side_of(g, ref, ea, eb);
        if (side == 0) return Side::Equal;
        // the counterclockwise sweep from the corner crosses the disk from
        // the forward boundary direction to the backward one, so earlier
        // keys sit to the left of later ones
        return side > 0 ? Side::Right : Side::Left;
    }
    return Side::Equal;
}

inline Side side_at_end(const FatGraph& g, const NormalPath& a, const NormalPath& b) {
    return side_at_start(g, reverse_path(g, a), reverse_path(g, b));
}

// ---------------------------------------------------------------------------
// First homology of the thickened graph over a fixed cycle basis.

struct HomologyBasis {
    std::vector<NormalPath> cycles;   // basis curves
    IntMatrix edge_vectors;           // rows: undirected edges, cols: basis cycles
    IntMatrix pairing;                // algebraic intersection matrix J
};

inline std::vector<std::int64_t> edge_vector(const FatGraph& g, const NormalPath& p) {
    std::vector<std::int64_t> v(g.num_edges(), 0);
    for (int d : p.darts) v[d >> 1] += (d & 1) ? -1 : +1;
    return v;
}

inline HomologyBasis make_basis(const FatGraph& g, std::vector<NormalPath> cycles) {
    HomologyBasis hb;
    hb.cycles = std::move(cycles);
    std::size_t r = hb.cycles.size();
    hb.edge_vectors.assign(g.num_edges(), std::vector<std::int64_t>(r, 0));
    for (std::size_t c = 0; c < r; ++c) {
        auto ev = edge_vector(g, hb.cycles[c]);
        for (int e = 0; e < g.num_edges(); ++e) hb.edge_vectors[e][c] = ev[e];
    }
    hb.pairing.assign(r, std::vector<std::int64_t>(r, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            std::int64_t s = algebraic_intersection(g, hb.cycles[i], hb.cycles[j]);
            hb.pairing[i][j] = s;
            hb.pairing[j][i] = -s;
        }
    return hb;
}

inline std::vector<std::int64_t> homology_class(const FatGraph& g, const HomologyBasis& hb,
                                                const NormalPath& p) {
    return solve_in_lattice(hb.edge_vectors, edge_vector(g, p));
}

// Action of one twist letter on basis coordinates: x + sign * <x, c> * c.
inline std::vector<std::int64_t> transvect(const HomologyBasis& hb, const std::vector<std::int64_t>& c,
                                           int sign, const std::vector<std::int64_t>& x) {
    std::size_t r = c.size();
    std::int64_t pair = 0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) pair += x[i] * hb.pairing[i][j] * c[j];
    std::vector<std::int64_t> out(x);
    for (std::size_t i = 0; i < r; ++i) out[i] += sign * pair * c[i];
    return out;
}

template <typename CurveLookup>
inline IntMatrix homology_action(const FatGraph& g, const HomologyBasis& hb,
                                 const std::vector<MonodromyLetter>& letters, const CurveLookup& lookup) {
    std::size_t r = hb.cycles.size();
    std::vector<std::vector<std::int64_t>> classes;
    for (const auto& l : letters) classes.push_back(homology_class(g, hb, lookup(l.curve)));
    IntMatrix m = identity_matrix(r);
    // columns are images of basis vectors under the whole word
    for (std::size_t col = 0; col < r; ++col) {
        std::vector<std::int64_t> x(r, 0);
        x[col] = 1;
        for (std::size_t li = letters.size(); li-- > 0;)
            x = transvect(hb, classes[li], letters[li].sign, x);
        for (std::size_t rowi = 0; rowi < r; ++rowi) m[rowi][col] = x[rowi];
    }
    return m;
}

}  // namespace obforge
