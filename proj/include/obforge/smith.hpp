#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace obforge {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

inline IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IntMatrix c(n, std::vector<std::int64_t>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            std::int64_t s = 0;
            for (std::size_t l = 0; l < k; ++l) s += a[i][l] * b[l][j];
            c[i][j] = s;
        }
    return c;
}

inline IntMatrix mat_transpose(const IntMatrix& a) {
    if (a.empty()) return {};
    IntMatrix t(a[0].size(), std::vector<std::int64_t>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

inline std::int64_t mat_det(const IntMatrix& a) {
    // Bareiss fraction-free elimination; intermediates are exact minors, so
    // they get 128-bit headroom.
    std::size_t n = a.size();
    if (n == 0) return 1;
    std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
    __int128 prev = 1;
    std::int64_t sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    __int128 det = m[n - 1][n - 1];
    if (sign < 0) det = -det;
    if (det > std::numeric_limits<std::int64_t>::max() || det < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("determinant exceeds 64 bits");
    return static_cast<std::int64_t>(det);
}

// Cokernel of an integer matrix in Smith normal form terms.
struct AbelianGroupPresentation {
    std::vector<std::int64_t> invariant_factors;  // each >= 2, successive divisibility
    int free_rank = 0;

    bool trivial() const { return invariant_factors.empty() && free_rank == 0; }
    bool operator==(const AbelianGroupPresentation& o) const {
        return invariant_factors == o.invariant_factors && free_rank == o.free_rank;
    }
    std::string str() const {
        std::string s;
        for (auto f : invariant_factors) {
            if (!s.empty()) s += " + ";
            s += "Z/" + std::to_string(f);
        }
        for (int i = 0; i < free_rank; ++i) {
            if (!s.empty()) s += " + ";
            s += "Z";
        }
        return s.empty() ? "0" : s;
    }
};

struct SmithDecomposition {
    IntMatrix d;  // diagonal form
    IntMatrix u;  // row ops, u * a * v = d
    IntMatrix v;  // column ops
};

inline SmithDecomposition smith_decompose(IntMatrix a) {
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    SmithDecomposition s{a, identity_matrix(rows), identity_matrix(cols)};
    auto& m = s.d;

    auto row_swap = [&](std::size_t i, std::size_t j) { std::swap(m[i], m[j]); std::swap(s.u[i], s.u[j]); };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        for (auto& r : m) std::swap(r[i], r[j]);
        for (auto& r : s.v) std::swap(r[i], r[j]);
    };
    auto row_add = [&](std::size_t dst, std::size_t src, std::int64_t c) {
        for (std::size_t j = 0; j < cols; ++j) m[dst][j] += c * m[src][j];
        for (std::size_t j = 0; j < rows; ++j) s.u[dst][j] += c * s.u[src][j];
    };
    auto col_add = [&](std::size_t dst, std::size_t src, std::int64_t c) {
        for (std::size_t i = 0; i < rows; ++i) m[i][dst] += c * m[i][src];
        for (std::size_t i = 0; i < cols; ++i) s.v[i][dst] += c * s.v[i][src];
    };
    auto row_neg = [&](std::size_t i) {
        for (auto& x : m[i]) x = -x;
        for (auto& x : s.u[i]) x = -x;
    };

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // find pivot of minimal absolute value in the remaining block
        std::size_t pi = t, pj = t;
        std::int64_t best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                std::int64_t v = std::llabs(m[i][j]);
                if (v != 0 && (best == 0 || v < best)) { best = v; pi = i; pj = j; }
            }
        if (best == 0) break;
        row_swap(t, pi);
        col_swap(t, pj);
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                std::int64_t q = m[i][t] / m[t][t];
                row_add(i, t, -q);
                if (m[i][t] != 0) { row_swap(t, i); dirty = true; }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                std::int64_t q = m[t][j] / m[t][t];
                col_add(j, t, -q);
                if (m[t][j] != 0) { col_swap(t, j); dirty = true; }
            }
        }
        ++t;
    }
    // enforce successive divisibility
    for (std::size_t i = 0; i + 1 < t; ++i) {
        for (std::size_t j = i + 1; j < t; ++j) {
            if (m[j][j] % m[i][i] != 0) {
                // fold m[j][j] into column i and redo the corner
                col_add(i, j, 1);
                std::size_t k = i;
                while (k < rows && k < cols) {
                    std::size_t pi2 = k, pj2 = k;
                    std::int64_t best2 = 0;
                    for (std::size_t a2 = k; a2 < rows; ++a2)
                        for (std::size_t b2 = k; b2 < cols; ++b2) {
                            std::int64_t v = std::llabs(m[a2][b2]);
                            if (v != 0 && (best2 == 0 || v < best2)) { best2 = v; pi2 = a2; pj2 = b2; }
                        }
                    if (best2 == 0) break;
                    row_swap(k, pi2);
                    col_swap(k, pj2);
                    bool d2 = true;
                    while (d2) {
                        d2 = false;
                        for (std::size_t a2 = k + 1; a2 < rows; ++a2) {
                            if (m[a2][k] == 0) continue;
                            row_add(a2, k, -(m[a2][k] / m[k][k]));
                            if (m[a2][k] != 0) { row_swap(k, a2); d2 = true; }
                        }
                        for (std::size_t b2 = k + 1; b2 < cols; ++b2) {
                            if (m[k][b2] == 0) continue;
                            col_add(b2, k, -(m[k][b2] / m[k][k]));
                            if (m[k][b2] != 0) { col_swap(k, b2); d2 = true; }
                        }
                    }
                    ++k;
                }
                j = i;  // re-check this row of factors
            }
        }
    }
    for (std::size_t i = 0; i < t; ++i)
        if (m[i][i] < 0) row_neg(i);
    return s;
}

// Cokernel of a square (or rectangular) presentation matrix: Z^rows / im(a).
inline AbelianGroupPresentation cokernel(const IntMatrix& a) {
    AbelianGroupPresentation g;
    if (a.empty()) return g;
    auto s = smith_decompose(a);
    std::size_t rows = a.size();
    std::size_t cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t i = 0; i < rows && i < cols; ++i) {
        std::int64_t d = s.d[i][i];
        if (d == 0) continue;
        ++r;
        if (d > 1) g.invariant_factors.push_back(d);
    }
    g.free_rank = static_cast<int>(rows - r);
    return g;
}

// Solve b * x = target over Z where the columns of b are a lattice basis of the
// span. Throws if target is not in the lattice.
inline std::vector<std::int64_t> solve_in_lattice(const IntMatrix& b, const std::vector<std::int64_t>& target) {
    auto s = smith_decompose(b);
    std::size_t rows = b.size();
    std::size_t cols = rows ? b[0].size() : 0;
    // u * b * v = d  =>  x = v * d^{-1} * u * target
    std::vector<std::int64_t> ut(rows, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < rows; ++j) acc += s.u[i][j] * target[j];
        ut[i] = acc;
    }
    std::vector<std::int64_t> y(cols, 0);
    for (std::size_t i = 0; i < cols; ++i) {
        if (i < rows && i < cols && s.d[i][i] != 0) {
            if (ut[i] % s.d[i][i] != 0) throw std::domain_error("vector not in lattice");
            y[i] = ut[i] / s.d[i][i];
        } else if (i < rows && ut[i] != 0) {
            throw std::domain_error("vector not in lattice");
        }
    }
    for (std::size_t i = cols; i < rows; ++i)
        if (ut[i] != 0) throw std::domain_error("vector not in lattice");
    std::vector<std::int64_t> x(cols, 0);
    for (std::size_t i = 0; i < cols; ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < cols; ++j) acc += s.v[i][j] * y[j];
        x[i] = acc;
    }
    return x;
}

}  // namespace obforge
