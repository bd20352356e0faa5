#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lowering.hpp"
#include "mcg.hpp"
#include "page.hpp"

namespace obforge {

struct LetterProvenance {
    enum class Kind { TorusGenerator, HandleCore, SurgeryEntry };
    Kind kind = Kind::TorusGenerator;
    int index = 0;  // face index, handle id, or program entry index

    std::string str() const {
        switch (kind) {
            case Kind::TorusGenerator: return "torus[" + std::to_string(index) + "]";
            case Kind::HandleCore: return "handle[" + std::to_string(index) + "]";
            default: return "surgery[" + std::to_string(index) + "]";
        }
    }
};

// Final intermediate representation: the page, the ordered twist word (torus
// generators, then handle cores, then one letter per surgery entry), and
// where each letter came from. Letters act right to left.
struct OpenBook {
    Page page;
    SurgeryProgram program;
    std::vector<int> entry_curves;  // registry id per program entry
    std::vector<MonodromyLetter> word;
    std::vector<LetterProvenance> provenance;

    NormalPath letter_curve(int registry_id) const { return page.curves.at(registry_id).path; }

    std::size_t expected_word_length() const {
        return static_cast<std::size_t>((page.p - 1) * (page.q - 1)) + page.handles.size() +
               program.entries.size();
    }
};

// Composes the monodromy: right-handed twists along every plumbing core and
// every handle core, then one twist per surgery entry, right-handed for
// contact (-1) and left-handed for contact (+1).
inline OpenBook assemble(Page page, SurgeryProgram program, std::vector<int> entry_curves) {
    OpenBook ob;
    if (entry_curves.size() != program.entries.size())
        throw PageError("every surgery entry needs a registered page curve");
    for (std::size_t i = 0; i < entry_curves.size(); ++i) {
        const auto& c = page.curve(entry_curves[i]);
        if (!c.path.closed) throw PageError("surgery curve " + std::to_string(i) + " is not closed");
    }
    for (std::size_t f = 0; f < page.face_curves.size(); ++f) {
        ob.word.push_back({page.face_curves[f], +1});
        ob.provenance.push_back({LetterProvenance::Kind::TorusGenerator, static_cast<int>(f)});
    }
    for (const auto& h : page.handles) {
        ob.word.push_back({h.core_curve, +1});
        ob.provenance.push_back({LetterProvenance::Kind::HandleCore, h.id});
    }
    for (std::size_t i = 0; i < program.entries.size(); ++i) {
        ob.word.push_back({entry_curves[i], -program.entries[i].twist_sign});
        ob.provenance.push_back({LetterProvenance::Kind::SurgeryEntry, static_cast<int>(i)});
    }
    ob.page = std::move(page);
    ob.program = std::move(program);
    ob.entry_curves = std::move(entry_curves);
    return ob;
}

// Word of the bare torus page: the letters before any handle or surgery.
inline std::vector<MonodromyLetter> torus_monodromy(const Page& page) {
    std::vector<MonodromyLetter> w;
    for (int id : page.face_curves) w.push_back({id, +1});
    return w;
}

}  // namespace obforge
