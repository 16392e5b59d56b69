#pragma once

#include <deque>
#include <map>
#include <optional>

#include "autostruct/automaton.hpp"

namespace autostruct {

// Build a deterministic automaton from a functional description: explore
// states breadth-first from `init`, probing every symbol except all-pad.
// `step` returns the successor or nullopt for the implicit dead state.
// State needs operator< so numbering is reproducible.
template <typename State, typename Step, typename Accept>
MultiTrackAutomaton build_dfa(const Alphabet& al, const State& init, Step step, Accept accept) {
    MultiTrackAutomaton a(al);
    std::map<State, StateId> ids;
    std::deque<State> queue;
    auto intern = [&](const State& st) {
        auto it = ids.find(st);
        if (it != ids.end()) return it->second;
        StateId id = a.add_state(accept(st));
        ids.emplace(st, id);
        queue.push_back(st);
        return id;
    };
    a.initial = {intern(init)};

    const uint64_t radix = static_cast<uint64_t>(al.p) + 1;
    uint64_t count = 1;
    for (int t = 0; t < al.tracks; ++t) count *= radix;
    SymbolVec sym(al.tracks);
    while (!queue.empty()) {
        State st = queue.front();
        queue.pop_front();
        StateId from = ids[st];
        for (uint64_t code = 0; code < count; ++code) {
            uint64_t c = code;
            bool all_pad = true;
            for (int t = 0; t < al.tracks; ++t) {
                sym[t] = static_cast<uint8_t>(c % radix);
                all_pad = all_pad && sym[t] == al.pad();
                c /= radix;
            }
            if (all_pad) continue;
            std::optional<State> nxt = step(st, sym);
            if (nxt) a.add_edge(from, SymbolPattern::concrete(al, sym), intern(*nxt));
        }
        compact_edges(al, a.edges[from]);
    }
    a.deterministic = true;
    return a;
}

} // namespace autostruct
