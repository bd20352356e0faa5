#pragma once

#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "mcg.hpp"
#include "openbook.hpp"
#include "page.hpp"
#include "smith.hpp"

namespace obforge {

// H1 of the surgered manifold from the lowering bookkeeping alone: cokernel
// of the smooth linking matrix.
inline AbelianGroupPresentation h1_from_linking(const SurgeryProgram& prog) {
    return cokernel(prog.linking);
}

// The page-side route: framings and linkings of the surgery curves read off
// the Seifert form of the page, diagonal shifted by the contact coefficient
// carried by each letter. Independent of the tb bookkeeping.
inline IntMatrix page_linking_matrix(const OpenBook& ob, const HomologyBasis& hb) {
    std::size_t n = ob.entry_curves.size();
    std::vector<std::vector<std::int64_t>> cls;
    for (int id : ob.entry_curves) cls.push_back(ob.page.curve_class(hb, id));
    // letter sign per entry, taken from the assembled word so corrupted
    // words are caught by the cross-check
    std::vector<int> letter_sign(n, 0);
    for (std::size_t li = 0; li < ob.word.size(); ++li)
        if (ob.provenance[li].kind == LetterProvenance::Kind::SurgeryEntry)
            letter_sign[ob.provenance[li].index] = ob.word[li].sign;
    IntMatrix m(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = ob.page.seifert_pair(cls[i], cls[j]);
        m[i][i] -= letter_sign[i];  // right-handed letter = contact (-1)
    }
    return m;
}

inline AbelianGroupPresentation h1_from_page(const OpenBook& ob, const HomologyBasis& hb) {
    return cokernel(page_linking_matrix(ob, hb));
}

// ---------------------------------------------------------------------------
// Right-veering certificate search.

struct RVWitness {
    int probe_index = -1;
    int depth = 0;        // how many monodromy iterates were applied first
    bool at_start = true; // which endpoint saw the image on the left
    std::string probe_name;
    NormalPath probe;
    NormalPath image;
};

enum class RVVerdict { OvertwistedCertificate, Inconclusive };

struct RVReport {
    RVVerdict verdict = RVVerdict::Inconclusive;
    std::optional<RVWitness> witness;
    int budget_used = 0;
    bool budget_exceeded = false;
};

struct ProbeArc {
    std::string name;
    NormalPath arc;
};

inline std::vector<ProbeArc> probe_arcs(OpenBook& ob) {
    std::vector<ProbeArc> out;
    for (const auto& h : ob.page.handles)
        out.push_back({"cocore(handle" + std::to_string(h.id) + ")", cocore_arc(ob.page, h)});
    auto duals = spine_dual_arcs(ob.page);
    for (std::size_t i = 0; i < duals.size(); ++i)
        out.push_back({"dual(band" + std::to_string(i) + ")", std::move(duals[i])});
    return out;
}

inline NormalPath apply_monodromy(const OpenBook& ob, NormalPath target, const McgLimits& lim = {}) {
    return apply_word_letters(
        ob.page.graph, ob.word, [&](int id) { return ob.letter_curve(id); }, std::move(target), lim);
}

// Scans the probe family and its monodromy iterates for an arc sent strictly
// to its own left at either endpoint. A hit certifies overtwistedness; not
// finding one says nothing. Deterministic: lowest probe index wins, then
// lowest depth, start before end.
inline RVReport right_veering_certificate(OpenBook& ob, int budget, const McgLimits& lim = {},
                                          unsigned threads = std::thread::hardware_concurrency()) {
    if (budget < 1) budget = 1;
    auto probes = probe_arcs(ob);
    struct Hit {
        int probe_index, depth;
        bool at_start;
        NormalPath probe, image;
    };
    struct ProbeOutcome {
        std::optional<Hit> hit;
        bool exceeded = false;
        int depth_reached = 0;
    };
    auto scan = [&](int pi) -> ProbeOutcome {
        ProbeOutcome out;
        NormalPath cur = probes[pi].arc;
        for (int d = 0; d < budget; ++d) {
            NormalPath img;
            try {
                img = apply_monodromy(ob, cur, lim);
            } catch (const BudgetExceeded&) {
                // failing the mandatory first comparison is an error; running
                // out of room on a deeper iterate just stops this probe
                if (d == 0) out.exceeded = true;
                return out;
            }
            out.depth_reached = d + 1;
            Side s_start = side_at_start(ob.page.graph, cur, img);
            Side s_end = side_at_end(ob.page.graph, cur, img);
            if (s_start == Side::Left || s_end == Side::Left) {
                out.hit = Hit{pi, d, s_start == Side::Left, cur, img};
                return out;
            }
            if (img.size() > lim.iterate_word_cap) break;  // images grow fast
            cur = std::move(img);
        }
        return out;
    };

    std::vector<ProbeOutcome> outcomes(probes.size());
    if (threads <= 1 || probes.size() <= 1) {
        for (std::size_t i = 0; i < probes.size(); ++i) outcomes[i] = scan(static_cast<int>(i));
    } else {
        std::vector<std::future<ProbeOutcome>> futs;
        futs.reserve(probes.size());
        for (std::size_t i = 0; i < probes.size(); ++i)
            futs.push_back(std::async(std::launch::async, scan, static_cast<int>(i)));
        for (std::size_t i = 0; i < probes.size(); ++i) outcomes[i] = futs[i].get();
    }

    RVReport rep;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        rep.budget_used = std::max(rep.budget_used, outcomes[i].depth_reached);
        if (outcomes[i].exceeded) rep.budget_exceeded = true;
        if (outcomes[i].hit && rep.verdict != RVVerdict::OvertwistedCertificate) {
            rep.verdict = RVVerdict::OvertwistedCertificate;
            const auto& h = *outcomes[i].hit;
            RVWitness w;
            w.probe_index = h.probe_index;
            w.depth = h.depth;
            w.at_start = h.at_start;
            w.probe_name = probes[i].name;
            w.probe = h.probe;
            w.image = h.image;
            rep.witness = std::move(w);
        }
    }
    if (rep.verdict == RVVerdict::OvertwistedCertificate) rep.budget_exceeded = false;
    return rep;
}

// Recomputes the witness image from scratch and re-checks the side.
inline bool verify_certificate(const OpenBook& ob, const RVWitness& w, const McgLimits& lim = {}) {
    NormalPath img = apply_monodromy(ob, w.probe, lim);
    if (!(img.darts == w.image.darts && img.same_endpoints(w.image))) return false;
    Side s = w.at_start ? side_at_start(ob.page.graph, w.probe, img)
                        : side_at_end(ob.page.graph, w.probe, img);
    return s == Side::Left;
}

// ---------------------------------------------------------------------------
// Aggregated consistency checks.

struct CheckEntry {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SelfCheckReport {
    std::vector<CheckEntry> entries;
    bool all_pass = true;

    void add(std::string name, bool pass, std::string detail = "") {
        entries.push_back({std::move(name), pass, std::move(detail)});
        all_pass = all_pass && pass;
    }
};

inline SelfCheckReport self_check(const OpenBook& ob, const McgLimits& lim = {}) {
    SelfCheckReport rep;
    const Page& pg = ob.page;
    int expect_chi = pg.p + pg.q - pg.p * pg.q - static_cast<int>(pg.handles.size());
    rep.add("euler", pg.chi() == expect_chi,
            "chi=" + std::to_string(pg.chi()) + " expected " + std::to_string(expect_chi));
    int b = pg.boundary_count();
    int expect_b = 1 + static_cast<int>(pg.handles.size());
    rep.add("boundary", b == expect_b,
            "b=" + std::to_string(b) + " expected " + std::to_string(expect_b) +
                " (each handle foot pair splits its boundary circle)");
    rep.add("word-length", ob.word.size() == ob.expected_word_length(),
            std::to_string(ob.word.size()) + " letters");

    bool embedded = true, disjoint = true;
    for (std::size_t i = 0; i < ob.entry_curves.size(); ++i) {
        if (self_intersection(pg.graph, pg.curve(ob.entry_curves[i]).path, lim) != 0) embedded = false;
        for (std::size_t j = i + 1; j < ob.entry_curves.size(); ++j)
            if (geometric_intersection(pg.graph, pg.curve(ob.entry_curves[i]).path,
                                       pg.curve(ob.entry_curves[j]).path, lim) != 0)
                disjoint = false;
    }
    rep.add("surgery-curves-embedded", embedded);
    rep.add("surgery-curves-disjoint", disjoint);

    auto hb = pg.homology();
    bool framing_ok = true;
    std::string fr_detail;
    for (std::size_t i = 0; i < ob.entry_curves.size(); ++i) {
        std::int64_t f = pg.framing(hb, ob.entry_curves[i]);
        if (f != ob.program.entries[i].tb) {
            framing_ok = false;
            fr_detail += "entry " + std::to_string(i) + ": page " + std::to_string(f) + " vs tb " +
                         std::to_string(ob.program.entries[i].tb) + "; ";
        }
    }
    rep.add("page-framing-equals-tb", framing_ok, fr_detail);

    auto m_page = page_linking_matrix(ob, hb);
    bool entrywise = m_page == ob.program.linking;
    auto h1p = cokernel(m_page);
    auto h1l = cokernel(ob.program.linking);
    rep.add("h1-two-routes", entrywise && h1p == h1l,
            "page " + h1p.str() + " vs linking " + h1l.str() +
                (entrywise ? "" : " (matrices differ entrywise)"));

    // pre-surgery sanity of the torus word on a bare page of the same shape
    {
        Page bare = build_page(pg.p, pg.q);
        auto bhb = bare.homology();
        auto act = homology_action(bare.graph, bhb, torus_monodromy(bare),
                                   [&](int id) { return bare.curve(id).path; });
        for (std::size_t i = 0; i < act.size(); ++i) act[i][i] -= 1;
        std::int64_t det = mat_det(act);
        rep.add("torus-word-homology", det == 1 || det == -1, "det(h*-id)=" + std::to_string(det));
    }
    return rep;
}

}  // namespace obforge
