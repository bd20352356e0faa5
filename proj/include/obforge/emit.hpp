#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "analysis.hpp"
#include "pipeline.hpp"

namespace obforge {

using ordered_json = nlohmann::ordered_json;

inline ordered_json json_report(const CompileResult& r, const RVReport& rv, const SelfCheckReport& checks) {
    ordered_json j;
    j["schema_version"] = 1;
    const Page& pg = r.ob.page;
    j["page"] = {{"p", pg.p},          {"q", pg.q},
                 {"chi", pg.chi()},    {"boundary", pg.boundary_count()},
                 {"genus", pg.genus()}, {"handles", pg.handles.size()}};
    ordered_json word = ordered_json::array();
    for (std::size_t i = 0; i < r.ob.word.size(); ++i) {
        word.push_back({{"curve", pg.curve(r.ob.word[i].curve).name},
                        {"sign", r.ob.word[i].sign},
                        {"provenance", r.ob.provenance[i].str()}});
    }
    j["word"] = std::move(word);

    ordered_json analysis;
    analysis["h1_linking"] = h1_from_linking(r.ob.program).str();
    auto hb = pg.homology();
    analysis["h1_page"] = h1_from_page(r.ob, hb).str();
    ordered_json rvj;
    rvj["verdict"] = rv.verdict == RVVerdict::OvertwistedCertificate ? "OvertwistedCertificate" : "Inconclusive";
    rvj["budget_used"] = rv.budget_used;
    if (rv.budget_exceeded) rvj["budget_exceeded"] = true;
    if (rv.witness) {
        rvj["witness"] = {{"probe", rv.witness->probe_name},
                          {"depth", rv.witness->depth},
                          {"endpoint", rv.witness->at_start ? "start" : "end"},
                          {"probe_word", rv.witness->probe.darts},
                          {"image_word", rv.witness->image.darts}};
    }
    analysis["rv"] = std::move(rvj);
    j["analysis"] = std::move(analysis);

    ordered_json inv;
    for (std::size_t i = 0; i < r.comps.size(); ++i) {
        inv[r.table.specs[i].name] = {{"tb", r.invariants[i].tb}, {"rot", r.invariants[i].rot}};
    }
    j["invariants"] = std::move(inv);

    ordered_json program = ordered_json::array();
    for (const auto& e : r.ob.program.entries) {
        std::string zz;
        for (int z : e.zigzags) zz += z > 0 ? '+' : '-';
        program.push_back({{"base", r.table.specs[e.base].name},
                           {"pushoff", e.pushoff_index},
                           {"contact", e.twist_sign > 0 ? "+1" : "-1"},
                           {"zigzags", zz},
                           {"tb", e.tb},
                           {"smooth_framing", e.smooth_framing}});
    }
    j["program"] = std::move(program);

    ordered_json cj = ordered_json::array();
    for (const auto& e : checks.entries)
        cj.push_back({{"name", e.name}, {"pass", e.pass}, {"detail", e.detail}});
    j["checks"] = std::move(cj);
    return j;
}

inline std::string text_report(const CompileResult& r, const RVReport& rv, const SelfCheckReport& checks) {
    std::ostringstream os;
    const Page& pg = r.ob.page;
    os << "square bridge: p=" << r.sb.p << " q=" << r.sb.q << "\n";
    for (std::size_t i = 0; i < r.comps.size(); ++i)
        os << "component " << r.table.specs[i].name << ": tb=" << r.invariants[i].tb
           << " rot=" << r.invariants[i].rot << " coeff=" << r.table.specs[i].coeff.str() << "\n";
    os << "program: " << r.ob.program.entries.size() << " surgery entr"
       << (r.ob.program.entries.size() == 1 ? "y" : "ies") << "\n";
    for (const auto& e : r.ob.program.entries) {
        os << "  " << r.table.specs[e.base].name << ".push" << e.pushoff_index << " contact ("
           << (e.twist_sign > 0 ? "+1" : "-1") << ")";
        if (!e.zigzags.empty()) {
            os << " zigzags ";
            for (int z : e.zigzags) os << (z > 0 ? '+' : '-');
        }
        os << " tb=" << e.tb << " framing=" << e.smooth_framing << "\n";
    }
    os << "page: T(" << pg.p << "," << pg.q << ") fiber + " << pg.handles.size()
       << " handle(s), chi=" << pg.chi() << " boundary=" << pg.boundary_count()
       << " genus=" << pg.genus() << "\n";
    os << "monodromy: " << r.ob.word.size() << " letters (";
    int pos = 0, neg = 0;
    for (const auto& l : r.ob.word) (l.sign > 0 ? pos : neg)++;
    os << pos << " right-handed, " << neg << " left-handed)\n";
    os << "H1: linking route " << h1_from_linking(r.ob.program).str();
    auto hb = pg.homology();
    os << ", page route " << h1_from_page(r.ob, hb).str() << "\n";
    os << "right-veering: "
       << (rv.verdict == RVVerdict::OvertwistedCertificate ? "OvertwistedCertificate" : "Inconclusive");
    if (rv.witness)
        os << " (witness " << rv.witness->probe_name << ", depth " << rv.witness->depth << ", "
           << (rv.witness->at_start ? "start" : "end") << " endpoint)";
    if (rv.budget_exceeded) os << " [budget exceeded]";
    os << "\n";
    os << "checks: " << (checks.all_pass ? "all pass" : "FAILURES") << "\n";
    for (const auto& e : checks.entries)
        os << "  [" << (e.pass ? "ok" : "FAIL") << "] " << e.name
           << (e.detail.empty() ? "" : " (" + e.detail + ")") << "\n";
    return os.str();
}

// Static picture of the page: the plumbing grid with handles and curves
// overlaid, one layer per curve kind. Integer coordinates keep the output
// byte-stable across runs.
inline std::string svg_report(const CompileResult& r) {
    const Page& pg = r.ob.page;
    const int cell = 48, margin = 48, sq = 22;
    auto cx = [&](int j) { return margin + j * cell; };
    auto cy = [&](int i) { return margin + (pg.p - 1 - i) * cell; };
    std::ostringstream os;
    int w = 2 * margin + (pg.q - 1) * cell, h = 2 * margin + (pg.p - 1) * cell + 40;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    os << "<g id=\"bands\" stroke=\"#999\" stroke-width=\"6\">\n";
    for (int i = 0; i < pg.p; ++i)
        for (int j = 0; j + 1 < pg.q; ++j)
            os << "<line x1=\"" << cx(j) << "\" y1=\"" << cy(i) << "\" x2=\"" << cx(j + 1) << "\" y2=\""
               << cy(i) << "\"/>\n";
    for (int i = 0; i + 1 < pg.p; ++i)
        for (int j = 0; j < pg.q; ++j)
            os << "<line x1=\"" << cx(j) << "\" y1=\"" << cy(i) << "\" x2=\"" << cx(j) << "\" y2=\""
               << cy(i + 1) << "\"/>\n";
    os << "</g>\n<g id=\"squares\" fill=\"#ddd\" stroke=\"#555\">\n";
    for (int i = 0; i < pg.p; ++i)
        for (int j = 0; j < pg.q; ++j)
            os << "<rect x=\"" << cx(j) - sq / 2 << "\" y=\"" << cy(i) - sq / 2 << "\" width=\"" << sq
               << "\" height=\"" << sq << "\"/>\n";
    os << "</g>\n";

    // curve polylines through the square centers they visit
    auto polyline = [&](const NormalPath& path) {
        std::ostringstream ps;
        for (int d : path.darts) {
            int v = pg.graph.tail(d);
            for (int i = 0; i < pg.p; ++i)
                for (int j = 0; j < pg.q; ++j)
                    if (pg.square[i][j] == v) ps << cx(j) << "," << cy(i) << " ";
        }
        return ps.str();
    };
    auto layer = [&](const char* name, const char* color, CurveKind kind) {
        os << "<g id=\"" << name << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\">\n";
        for (const auto& c : pg.curves) {
            if (c.kind != kind) continue;
            auto pts = polyline(c.path);
            if (!pts.empty()) os << "<polyline points=\"" << pts << "\"/>\n";
        }
        os << "</g>\n";
    };
    layer("link", "#c33", CurveKind::EmbeddedLink);
    layer("pushoffs", "#36c", CurveKind::Pushoff);
    os << "<g id=\"handles\" fill=\"#3a3\">\n";
    for (std::size_t k = 0; k < pg.handles.size(); ++k)
        os << "<circle cx=\"" << margin + static_cast<int>(k) * 20 << "\" cy=\"" << h - 20
           << "\" r=\"7\"/>\n";
    os << "</g>\n";
    os << "<text x=\"" << margin << "\" y=\"" << h - 36 << "\" font-size=\"12\">T(" << pg.p << ","
       << pg.q << ") + " << pg.handles.size() << " handle(s)</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace obforge
