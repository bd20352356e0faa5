#pragma once

#include <string>
#include <vector>

#include "dsl.hpp"
#include "grid.hpp"
#include "lowering.hpp"
#include "openbook.hpp"
#include "page.hpp"

namespace obforge {

struct PipelineOptions {
    // standard: positive stabilization attaches the handle on the left of the
    // oriented curve; flipped mirrors that, in case the pictures are read the
    // other way
    bool flip_handle_side = false;
    McgLimits limits;
};

struct CompileResult {
    GridDiagram grid;
    SurgerySpecTable table;
    std::vector<OrientedComponent> comps;
    std::vector<ClassicalInvariants> invariants;   // of the input grid
    std::vector<int> effective_tb;                 // after requested base stabilizations
    SquareBridgePosition sb;
    OpenBook ob;
    std::vector<int> component_curves;             // base curve per component
};

// parse -> lower -> build -> embed -> stabilize -> assemble
inline CompileResult compile_input(const ParsedInput& in, const PipelineOptions& opt = {}) {
    CompileResult r;
    r.grid = in.grid;
    r.table = in.table;
    r.comps = components(r.grid);
    for (const auto& c : r.comps) r.invariants.push_back(classical_invariants(c));
    r.sb = square_bridge(r.grid);

    std::size_t nc = r.comps.size();
    for (std::size_t i = 0; i < nc; ++i)
        r.effective_tb.push_back(r.invariants[i].tb - static_cast<int>(r.table.specs[i].stabs.size()));
    IntMatrix base_lk(nc, std::vector<std::int64_t>(nc, 0));
    for (std::size_t i = 0; i < nc; ++i)
        for (std::size_t j = i + 1; j < nc; ++j)
            base_lk[i][j] = base_lk[j][i] = linking_number(r.comps[i], r.comps[j]);

    SurgeryProgram program = lower(r.table, r.effective_tb, base_lk);

    Page page = build_page(r.sb.p, r.sb.q);
    auto side_of = [&](int sign) { return opt.flip_handle_side ? -sign : sign; };
    for (std::size_t i = 0; i < nc; ++i) {
        int id = embed_component(page, r.comps[i], r.table.specs[i].name);
        for (int s : r.table.specs[i].stabs) attach_stabilization(page, id, side_of(s));
        r.component_curves.push_back(id);
    }

    // one page curve per program entry: contact (+1) entries are plain
    // push-offs of the base; the negative tail walks down the push-off chain
    std::vector<int> entry_curves;
    std::vector<int> chain_tip(nc);
    for (std::size_t i = 0; i < nc; ++i) chain_tip[i] = r.component_curves[i];
    for (std::size_t e = 0; e < program.entries.size(); ++e) {
        const auto& entry = program.entries[e];
        std::string nm = r.table.specs[entry.base].name + ".push" + std::to_string(entry.pushoff_index);
        int id;
        if (entry.twist_sign > 0) {
            id = pushoff_curve(page, r.component_curves[entry.base], nm);
        } else {
            id = pushoff_curve(page, chain_tip[entry.base], nm);
            for (int s : entry.zigzags) attach_stabilization(page, id, side_of(s));
            chain_tip[entry.base] = id;
        }
        entry_curves.push_back(id);
    }

    r.ob = assemble(std::move(page), std::move(program), std::move(entry_curves));
    return r;
}

}  // namespace obforge
