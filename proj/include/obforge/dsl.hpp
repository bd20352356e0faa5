#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "grid.hpp"
#include "rational.hpp"

namespace obforge {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int ln, const std::string& msg)
        : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

// Per-component surgery request. `stabs` are stabilizations of the base knot
// itself, realized later as page 1-handles; `policy` fixes the signs of the
// zig-zags the lowering step adds to the push-offs (default all negative).
struct SurgerySpec {
    std::string name;
    Rational coeff;
    std::vector<int> stabs;               // +1 / -1 per base stabilization
    std::optional<std::vector<int>> policy;
    std::optional<int> k;                 // override for positive coefficients
};

struct SurgerySpecTable {
    std::vector<SurgerySpec> specs;  // one per component, in trace order
};

struct ParsedInput {
    GridDiagram grid;
    SurgerySpecTable table;
};

namespace detail {

inline std::vector<int> parse_sign_string(int ln, const std::string& s) {
    std::vector<int> out;
    for (char ch : s) {
        if (ch == '+') out.push_back(1);
        else if (ch == '-') out.push_back(-1);
        else throw ParseError(ln, std::string("invalid sign character '") + ch + "'");
    }
    if (out.empty()) throw ParseError(ln, "empty sign sequence");
    return out;
}

inline Rational parse_coeff(int ln, const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(std::stoll(s));
        }
        std::int64_t num = std::stoll(s.substr(0, slash));
        std::int64_t den = std::stoll(s.substr(slash + 1));
        return Rational(num, den);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError(ln, "malformed coefficient '" + s + "'");
    }
}

}  // namespace detail

inline ParsedInput parse(const std::string& text) {
    ParsedInput out;
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    bool have_grid = false, have_x = false, have_o = false;
    std::vector<SurgerySpec> specs;

    while (std::getline(in, line)) {
        ++ln;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;

        if (kw == "grid") {
            if (have_grid) throw ParseError(ln, "duplicate grid line");
            if (!(ls >> out.grid.n)) throw ParseError(ln, "grid: expected size");
            if (out.grid.n < 2) throw ParseError(ln, "grid: size must be at least 2");
            have_grid = true;
        } else if (kw == "X" || kw == "O") {
            if (!have_grid) throw ParseError(ln, "marker row before grid line");
            std::vector<int>& dst = (kw == "X") ? out.grid.xs : out.grid.os;
            bool& flag = (kw == "X") ? have_x : have_o;
            if (flag) throw ParseError(ln, "duplicate " + kw + " line");
            int c;
            while (ls >> c) dst.push_back(c);
            if (static_cast<int>(dst.size()) != out.grid.n)
                throw ParseError(ln, kw + ": expected " + std::to_string(out.grid.n) + " columns, got " +
                                         std::to_string(dst.size()));
            flag = true;
        } else if (kw == "component") {
            SurgerySpec spec;
            if (!(ls >> spec.name)) throw ParseError(ln, "component: expected name");
            std::string tok;
            bool have_coeff = false;
            while (ls >> tok) {
                if (tok == "coeff") {
                    std::string v;
                    if (!(ls >> v)) throw ParseError(ln, "coeff: expected value");
                    spec.coeff = detail::parse_coeff(ln, v);
                    have_coeff = true;
                } else if (tok == "stabs") {
                    std::string v;
                    if (!(ls >> v)) throw ParseError(ln, "stabs: expected sign sequence");
                    spec.stabs = detail::parse_sign_string(ln, v);
                } else if (tok == "policy") {
                    std::string v;
                    if (!(ls >> v)) throw ParseError(ln, "policy: expected sign sequence");
                    spec.policy = detail::parse_sign_string(ln, v);
                } else if (tok == "k") {
                    int k;
                    if (!(ls >> k)) throw ParseError(ln, "k: expected integer");
                    if (k < 1) throw ParseError(ln, "k must be positive");
                    spec.k = k;
                } else {
                    throw ParseError(ln, "unknown component field '" + tok + "'");
                }
            }
            if (!have_coeff) throw ParseError(ln, "component " + spec.name + ": missing coeff");
            if (spec.coeff.num == 0)
                throw ParseError(ln, "component " + spec.name + ": contact 0-surgery is unsupported");
            specs.push_back(std::move(spec));
        } else {
            throw ParseError(ln, "unknown directive '" + kw + "'");
        }
    }

    if (!have_grid) throw ParseError(ln, "missing grid line");
    if (!have_x || !have_o) throw ParseError(ln, "missing X or O line");
    try {
        out.grid.validate();
    } catch (const GridError& e) {
        throw ParseError(ln, e.what());
    }

    auto comps = components(out.grid);
    if (specs.size() != comps.size())
        throw ParseError(ln, "diagram has " + std::to_string(comps.size()) + " component(s) but " +
                                 std::to_string(specs.size()) + " component line(s)");
    for (std::size_t i = 0; i < specs.size(); ++i)
        out.grid.labels[static_cast<int>(i)] = specs[i].name;
    out.table.specs = std::move(specs);
    return out;
}

}  // namespace obforge
