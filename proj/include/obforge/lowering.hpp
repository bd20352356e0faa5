#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsl.hpp"
#include "grid.hpp"
#include "rational.hpp"
#include "smith.hpp"

namespace obforge {

struct LoweringError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Expansion r = a0 - 1/(a1 - 1/(... - 1/ak)) with a0 <= -1 and ai <= -2 for
// i >= 1; unique, defined for every rational r < 0. The first coefficient is
// -1 exactly when -1 <= r < 0.
inline std::vector<std::int64_t> neg_continued_fraction(Rational r) {
    if (r.num >= 0) throw LoweringError("negative continued fraction needs r < 0");
    std::vector<std::int64_t> out;
    while (true) {
        if (r.is_integer()) {
            out.push_back(r.num);
            break;
        }
        std::int64_t a = floor_int(r);
        out.push_back(a);
        r = Rational(1) / (Rational(a) - r);  // lies in (-inf, -1)
    }
    return out;
}

inline Rational eval_neg_continued_fraction(const std::vector<std::int64_t>& a) {
    Rational v(a.back());
    for (auto it = a.rbegin() + 1; it != a.rend(); ++it)
        v = Rational(*it) - Rational(1) / v;
    return v;
}

// One (+-1)-surgery curve: an iterated push-off of a base component carrying
// zig-zag stabilizations. Contact (-1) becomes a right-handed twist in the
// monodromy, contact (+1) a left-handed one.
struct SurgeryCurveSpec {
    int base = 0;
    int pushoff_index = 0;
    std::vector<int> zigzags;  // signs; empty for (+1) entries
    int twist_sign = -1;       // -1 = contact (-1), +1 = contact (+1)
    int tb = 0;                // tb of the curve itself (push-off chain bookkeeping)
    std::int64_t smooth_framing = 0;  // tb + contact coefficient
};

struct SurgeryProgram {
    std::vector<SurgeryCurveSpec> entries;
    IntMatrix linking;  // smooth framings on the diagonal

    std::size_t size() const { return entries.size(); }
};

namespace detail {

// Zig-zag counts per push-off for a negative coefficient: the expansion
// [a0,...,ak] encodes stabilization counts |a0 - 1 + 2|, |a1 + 2|, ...
inline std::vector<int> zigzag_counts(const std::vector<std::int64_t>& cf) {
    std::vector<int> z;
    z.push_back(static_cast<int>(std::llabs((cf[0] - 1) + 2)));
    for (std::size_t i = 1; i < cf.size(); ++i)
        z.push_back(static_cast<int>(std::llabs(cf[i] + 2)));
    return z;
}

}  // namespace detail

// Entries for contact (r)-surgery, r < 0: one contact (-1)-surgery per
// expansion coefficient, on successive push-offs with the listed zig-zags.
inline std::vector<SurgeryCurveSpec> lower_negative(Rational r, int base, int base_tb,
                                                    const std::vector<int>& policy,
                                                    int first_pushoff_index = 0) {
    if (r.num >= 0) throw LoweringError("lower_negative needs r < 0");
    auto cf = neg_continued_fraction(r);
    auto zz = detail::zigzag_counts(cf);
    std::size_t need = 0;
    for (int z : zz) need += z;
    if (policy.size() != need)
        throw LoweringError("zig-zag policy length mismatch: need " + std::to_string(need) +
                            ", got " + std::to_string(policy.size()));
    std::vector<SurgeryCurveSpec> out;
    int tb = base_tb;
    std::size_t pol = 0;
    for (std::size_t i = 0; i < zz.size(); ++i) {
        SurgeryCurveSpec e;
        e.base = base;
        e.pushoff_index = first_pushoff_index + static_cast<int>(i);
        for (int z = 0; z < zz[i]; ++z) e.zigzags.push_back(policy[pol++]);
        e.twist_sign = -1;
        tb -= zz[i];  // push-off keeps tb, each zig-zag drops it by one
        e.tb = tb;
        e.smooth_framing = tb - 1;
        out.push_back(std::move(e));
    }
    return out;
}

// Prop.-k style reduction for r = p/q > 0: k push-offs with contact (+1),
// then the residual coefficient p/(q - kp) on a further push-off. q - kp = 0
// only happens for r = 1/k, where the program is the k (+1)-entries alone.
inline std::vector<SurgeryCurveSpec> lower_positive(Rational r, int k, int base, int base_tb,
                                                    const std::vector<int>& policy) {
    if (r.num <= 0) throw LoweringError("lower_positive needs r > 0");
    if (k < 1) throw LoweringError("k must be positive");
    std::int64_t p = r.num, q = r.den;
    std::int64_t rem_den = q - static_cast<std::int64_t>(k) * p;
    if (rem_den > 0)
        throw LoweringError("invalid k: " + std::to_string(k) + " leaves a positive residual coefficient");
    std::vector<SurgeryCurveSpec> out;
    for (int i = 0; i < k; ++i) {
        SurgeryCurveSpec e;
        e.base = base;
        e.pushoff_index = i;
        e.twist_sign = +1;
        e.tb = base_tb;
        e.smooth_framing = base_tb + 1;
        out.push_back(std::move(e));
    }
    if (rem_den == 0) {
        // reduced fraction with q = kp forces p = 1: exactly the (1/k) case
        if (!policy.empty()) throw LoweringError("zig-zag policy length mismatch: need 0");
        return out;
    }
    auto tail = lower_negative(Rational(p, rem_den), base, base_tb, policy, k);
    for (auto& e : tail) out.push_back(std::move(e));
    return out;
}

inline int default_k(Rational r) {
    // smallest k >= 1 with q - kp <= 0
    std::int64_t p = r.num, q = r.den;
    std::int64_t k = (q + p - 1) / p;  // ceil(q/p)
    return static_cast<int>(k < 1 ? 1 : k);
}

inline std::size_t zigzag_total(Rational r, int k) {
    if (r.num < 0) {
        auto zz = detail::zigzag_counts(neg_continued_fraction(r));
        return std::accumulate(zz.begin(), zz.end(), std::size_t{0});
    }
    std::int64_t rem_den = r.den - static_cast<std::int64_t>(k) * r.num;
    if (rem_den == 0) return 0;
    auto zz = detail::zigzag_counts(neg_continued_fraction(Rational(r.num, rem_den)));
    return std::accumulate(zz.begin(), zz.end(), std::size_t{0});
}

// Full program over all components. base_tbs must already account for the
// requested base-knot stabilizations; base_lk gives pairwise linking numbers
// of the base components.
inline SurgeryProgram lower(const SurgerySpecTable& table, const std::vector<int>& base_tbs,
                            const IntMatrix& base_lk) {
    SurgeryProgram prog;
    for (std::size_t ci = 0; ci < table.specs.size(); ++ci) {
        const auto& spec = table.specs[ci];
        int base = static_cast<int>(ci);
        int tb = base_tbs[ci];
        if (spec.k && spec.coeff.num < 0)
            throw LoweringError("component " + spec.name + ": k override only applies to positive coefficients");
        int k = spec.k ? *spec.k : (spec.coeff.num > 0 ? default_k(spec.coeff) : 1);
        std::size_t need = spec.coeff.num > 0 ? zigzag_total(spec.coeff, k) : zigzag_total(spec.coeff, 0);
        std::vector<int> policy = spec.policy ? *spec.policy : std::vector<int>(need, -1);
        std::vector<SurgeryCurveSpec> part;
        if (spec.coeff.num < 0)
            part = lower_negative(spec.coeff, base, tb, policy);
        else
            part = lower_positive(spec.coeff, k, base, tb, policy);
        for (auto& e : part) prog.entries.push_back(std::move(e));
    }

    // Linking matrix: within a component every later curve is an iterated
    // push-off separated after the earlier one existed, so lk = tb of the
    // earlier curve; across components push-offs inherit the base linking.
    std::size_t n = prog.entries.size();
    prog.linking.assign(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        prog.linking[i][i] = prog.entries[i].smooth_framing;
        for (std::size_t j = i + 1; j < n; ++j) {
            std::int64_t lk;
            if (prog.entries[i].base == prog.entries[j].base)
                lk = prog.entries[i].tb;
            else
                lk = base_lk[prog.entries[i].base][prog.entries[j].base];
            prog.linking[i][j] = prog.linking[j][i] = lk;
        }
    }
    return prog;
}

}  // namespace obforge
