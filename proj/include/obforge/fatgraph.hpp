#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace obforge {

// Oriented ribbon graph. Darts come in mate pairs (2e, 2e+1); each vertex
// holds its incident darts in counterclockwise order. Thickening the graph
// gives a compact oriented surface with boundary; boundary circles are the
// orbits of d -> sigma(mate(d)).
//
// A "corner" is the boundary gap following a dart in its vertex rotation;
// corners are identified by the dart id and serve as arc endpoint anchors.
class FatGraph {
public:
    int add_vertex() {
        rot_.emplace_back();
        return static_cast<int>(rot_.size()) - 1;
    }

    // Appends the new darts at the end of both rotations.
    std::pair<int, int> add_edge(int v, int w) {
        int a = new_dart(v), b = new_dart(w);
        rot_[v].push_back(a);
        rot_[w].push_back(b);
        return {a, b};
    }

    // Inserts the dart ends directly after the corners `corner_v` and
    // `corner_w` (darts of v and w respectively).
    std::pair<int, int> add_edge_in_corners(int corner_v, int corner_w) {
        int v = vertex_of_[corner_v];
        int a = new_dart(v);
        insert_after(v, corner_v, a);
        int w = vertex_of_[corner_w];
        int b = new_dart(w);
        insert_after(w, corner_w, b);
        return {a, b};
    }

    // Edge between v and w with the v-side dart inserted right after the
    // corner dart; the w side is appended.
    std::pair<int, int> add_edge_foot(int corner_v, int w) {
        int v = vertex_of_[corner_v];
        int a = new_dart(v);
        insert_after(v, corner_v, a);
        int b = new_dart(w);
        rot_[w].push_back(b);
        return {a, b};
    }

    // Replaces the rotation at v; must be a permutation of the current darts.
    void set_rotation(int v, std::vector<int> darts) {
        auto a = rot_[v];
        auto b = darts;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) throw std::logic_error("rotation is not a permutation of incident darts");
        rot_[v] = std::move(darts);
    }

    int mate(int d) const { return d ^ 1; }
    int edge_of(int d) const { return d >> 1; }
    int vertex_of(int d) const { return vertex_of_[d]; }
    int tail(int d) const { return vertex_of_[d]; }
    int head(int d) const { return vertex_of_[mate(d)]; }

    int degree(int v) const { return static_cast<int>(rot_[v].size()); }
    const std::vector<int>& rotation(int v) const { return rot_[v]; }

    int index_in_rotation(int d) const {
        const auto& r = rot_[vertex_of_[d]];
        for (std::size_t i = 0; i < r.size(); ++i)
            if (r[i] == d) return static_cast<int>(i);
        throw std::logic_error("dart missing from rotation");
    }

    int sigma(int d) const {  // next dart counterclockwise
        const auto& r = rot_[vertex_of_[d]];
        int i = index_in_rotation(d);
        return r[(i + 1) % r.size()];
    }

    int num_vertices() const { return static_cast<int>(rot_.size()); }
    int num_edges() const { return num_darts_ / 2; }
    int num_darts() const { return num_darts_; }
    int euler() const { return num_vertices() - num_edges(); }

    std::vector<std::vector<int>> boundary_orbits() const {
        std::vector<bool> seen(num_darts_, false);
        std::vector<std::vector<int>> orbits;
        for (int d0 = 0; d0 < num_darts_; ++d0) {
            if (seen[d0]) continue;
            std::vector<int> orb;
            int d = d0;
            while (!seen[d]) {
                seen[d] = true;
                orb.push_back(d);
                d = sigma(mate(d));
            }
            orbits.push_back(std::move(orb));
        }
        return orbits;
    }

    int num_boundary() const { return static_cast<int>(boundary_orbits().size()); }

    int genus() const {
        int chi = euler();
        int b = num_boundary();
        return (2 - b - chi) / 2;
    }

    // Sweep position of a direction at vertex v, measured from a reference.
    // Directions are darts (even positions) and corners (odd positions); the
    // reference dart itself sits at 0, a reference corner starts its sweep at
    // the next dart counterclockwise.
    int sweep_from_dart(int ref, int d, bool d_is_corner) const {
        int v = vertex_of_[ref];
        int deg = degree(v);
        int base = 2 * (((index_in_rotation(d) - index_in_rotation(ref)) % deg + deg) % deg);
        return d_is_corner ? base + 1 : base;
    }
    int sweep_from_corner(int ref_corner, int d, bool d_is_corner) const {
        int v = vertex_of_[ref_corner];
        int deg = degree(v);
        int rel = ((index_in_rotation(d) - index_in_rotation(ref_corner) - 1) % deg + deg) % deg;
        int base = 2 * (rel + 1);
        return d_is_corner ? base + 1 : base;
    }

private:
    int new_dart(int v) {
        vertex_of_.push_back(v);
        return num_darts_++;
    }
    void insert_after(int v, int after_dart, int d) {
        auto& r = rot_[v];
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (r[i] == after_dart) {
                r.insert(r.begin() + i + 1, d);
                return;
            }
        }
        throw std::logic_error("corner dart missing from rotation");
    }

    std::vector<std::vector<int>> rot_;
    std::vector<int> vertex_of_;
    int num_darts_ = 0;
};

}  // namespace obforge
