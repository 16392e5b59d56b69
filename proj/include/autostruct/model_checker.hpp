#pragma once

#include "autostruct/formula.hpp"
#include "autostruct/presentation.hpp"

namespace autostruct {

// A compiled formula: the automaton reads one element per free variable,
// variables ordered by name, each element on tracks_per_element digit
// tracks. The language is always inside the product of the domain.
struct DefinableSet {
    std::vector<std::string> vars;
    MultiTrackAutomaton automaton;
};

// Formula -> automaton, compositionally: atoms pull the presentation's
// relation automata (constants via singleton automata plus projection,
// repeated variables via synchronous equality), ! complements relative to
// the domain product (minimizing right after), &/| combine over a
// cylindrified common track set, ex projects, all goes through !ex!.
DefinableSet compile(const Presentation& pres, const FormulaPtr& f);

// Sentence decision. Logically equivalent to emptiness of the compiled
// automaton, but existential blocks over conjunctions are checked by an
// on-the-fly product so quantifier-heavy sentences never materialize their
// intermediate automata.
bool decide(const Presentation& pres, const FormulaPtr& f);
bool decide(const Presentation& pres, const std::string& sentence);

// Extended presentation in which `name` is usable as an atom.
Presentation register_predicate(const Presentation& pres, const std::string& name,
                                const DefinableSet& ds);

} // namespace autostruct
