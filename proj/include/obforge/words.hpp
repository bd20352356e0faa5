#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "fatgraph.hpp"

namespace obforge {

struct PathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A curve or arc carried by the thickened graph: a reduced dart word. Closed
// words are cyclic; arcs anchor their ends at boundary corners, with a rank
// separating multiple endpoints in one corner. An empty arc word is a chord
// across a single vertex disk (the co-core of a band, for instance).
struct NormalPath {
    std::vector<int> darts;
    bool closed = false;
    int start_corner = -1;
    int start_rank = 0;
    int end_corner = -1;
    int end_rank = 0;
    int base_vertex = -1;  // vertex of an empty arc; ignored otherwise

    bool empty() const { return darts.empty(); }
    std::size_t size() const { return darts.size(); }

    bool same_endpoints(const NormalPath& o) const {
        return start_corner == o.start_corner && start_rank == o.start_rank &&
               end_corner == o.end_corner && end_rank == o.end_rank;
    }
};

inline void check_path(const FatGraph& g, const NormalPath& p) {
    for (int d : p.darts)
        if (d < 0 || d >= g.num_darts()) throw PathError("path references a missing cell");
    for (std::size_t i = 0; i + 1 < p.darts.size(); ++i)
        if (g.head(p.darts[i]) != g.tail(p.darts[i + 1])) throw PathError("path is not connected");
    if (p.closed) {
        if (p.darts.empty()) throw PathError("closed path must traverse at least one band");
        if (g.head(p.darts.back()) != g.tail(p.darts.front())) throw PathError("closed path does not close up");
    } else {
        if (p.start_corner < 0 || p.end_corner < 0) throw PathError("arc endpoints missing");
        int sv = p.darts.empty() ? p.base_vertex : g.tail(p.darts.front());
        int ev = p.darts.empty() ? p.base_vertex : g.head(p.darts.back());
        if (g.vertex_of(p.start_corner) != sv) throw PathError("arc start corner not at start vertex");
        if (g.vertex_of(p.end_corner) != ev) throw PathError("arc end corner not at end vertex");
    }
}

// Backtrack removal. Idempotent; for closed words also reduces across the
// wrap-around position.
inline NormalPath normalize(const FatGraph& g, NormalPath p) {
    std::vector<int> out;
    out.reserve(p.darts.size());
    for (int d : p.darts) {
        if (!out.empty() && out.back() == g.mate(d)) out.pop_back();
        else out.push_back(d);
    }
    if (p.closed) {
        std::size_t a = 0, b = out.size();
        while (b - a >= 2 && out[a] == g.mate(out[b - 1])) { ++a; --b; }
        out = std::vector<int>(out.begin() + a, out.begin() + b);
        if (out.empty()) throw PathError("closed path reduced to nothing");
    } else if (!p.darts.empty() && out.empty()) {
        // arc collapsed onto its basepoint vertex
        p.base_vertex = g.tail(p.darts.front());
    }
    p.darts = std::move(out);
    check_path(g, p);
    return p;
}

inline NormalPath reverse_path(const FatGraph& g, NormalPath p) {
    std::reverse(p.darts.begin(), p.darts.end());
    for (int& d : p.darts) d = g.mate(d);
    std::swap(p.start_corner, p.end_corner);
    std::swap(p.start_rank, p.end_rank);
    return p;
}

// Canonical rotation of a closed word, for dedup and equality checks.
inline std::vector<int> canonical_rotation(const std::vector<int>& w) {
    if (w.empty()) return w;
    std::vector<int> best = w;
    std::vector<int> cur = w;
    for (std::size_t k = 1; k < w.size(); ++k) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

inline bool closed_words_equal(const NormalPath& a, const NormalPath& b) {
    if (a.darts.size() != b.darts.size()) return false;
    return canonical_rotation(a.darts) == canonical_rotation(b.darts);
}

}  // namespace obforge
