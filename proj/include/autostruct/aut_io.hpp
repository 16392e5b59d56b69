#pragma once

#include <iosfwd>
#include <string>

#include "autostruct/automaton.hpp"

namespace autostruct {

struct BuchiAutomaton;

// Line-based textual format:
//   p 3
//   tracks 2
//   states 4
//   initial 0
//   accepting 2 3
//   trans 0 (1,_) 2       # pad written as _
// Symbols are written concretely; patterns are expanded on output. States
// are renumbered in breadth-first order before writing, so equal languages
// built the same way serialize byte-identically. Büchi automata use the
// same layout plus a `kind buchi` line and admit no pad symbols.
std::string to_aut_text(const MultiTrackAutomaton& a);
MultiTrackAutomaton automaton_from_aut_text(const std::string& text);

std::string to_baut_text(const BuchiAutomaton& b);
BuchiAutomaton buchi_from_aut_text(const std::string& text);

// Graphviz rendering; pattern labels keep mask sets compact.
std::string to_dot(const MultiTrackAutomaton& a, const std::string& name = "automaton");
std::string to_dot(const BuchiAutomaton& b, const std::string& name = "buchi");

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

} // namespace autostruct
