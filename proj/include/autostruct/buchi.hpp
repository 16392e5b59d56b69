#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "autostruct/automaton.hpp"
#include "autostruct/presentation.hpp"

namespace autostruct {

// Automaton on infinite k-track words: a run is accepting when it visits an
// accepting state infinitely often. Words have every track infinite, so pad
// never appears. The completion presentations here are pure safety automata
// (all states accepting); products may carry general acceptance sets.
struct BuchiAutomaton {
    Alphabet alphabet;
    StateId num_states = 0;
    std::vector<StateId> initial;
    std::vector<char> accepting;
    std::vector<std::vector<Edge>> edges;
    bool deterministic = false;

    BuchiAutomaton() = default;
    explicit BuchiAutomaton(const Alphabet& al) : alphabet(al) {}

    StateId add_state(bool acc = true) {
        accepting.push_back(acc ? 1 : 0);
        edges.emplace_back();
        return num_states++;
    }
    void add_edge(StateId from, const SymbolPattern& pat, StateId to) {
        edges[from].push_back(Edge{pat, to});
    }
    bool is_accepting(StateId s) const { return accepting[s] != 0; }
};

// Ultimately periodic word u . v^omega given as finite k-track blocks.
struct LassoWord {
    std::vector<SymbolVec> prefix;
    std::vector<SymbolVec> loop; // nonempty

    void validate(const Alphabet& al) const;
};

// Combine per-track lassos (prefix_t, loop_t) into one k-track lasso by
// extending the prefixes to a common length and the loops to their lcm.
LassoWord align_lassos(const Alphabet& al,
                       const std::vector<std::pair<TrackWord, TrackWord>>& per_track);

bool accepts_lasso(const BuchiAutomaton& b, const LassoWord& w);

BuchiAutomaton intersect(const BuchiAutomaton& a, const BuchiAutomaton& b);

// Nonempty iff some accepting state lies on a reachable cycle; returns a
// witness lasso on nonemptiness.
bool is_empty_buchi(const BuchiAutomaton& a);
std::optional<LassoWord> buchi_witness(const BuchiAutomaton& a);

// The pro-p completion of hp reads pairs of infinite digit strings; its
// multiplication recognizer is the finite relation machine without the
// end-of-word bookkeeping: a deterministic all-accepting safety automaton
// over six tracks. p must be an odd prime.
BuchiAutomaton make_hp_hat_mul(int p);
BuchiAutomaton make_hp_hat_domain(int p);

// Embed a finite triple into the completion (zero digits forever after the
// finite encodings end) and run the lasso query. Agrees with the finite
// relation automaton's verdict on the same triple.
bool finite_embedding_check(const Presentation& hp, const BuchiAutomaton& mul,
                            const std::string& g, const std::string& h, const std::string& c);

// One element argument of the lasso CLI: '|'-separated track parts, where a
// part containing "^w" ("2^w", "(012)^w", "1(02)^w") is a whole track and
// two bare parts form prefix|loop. A bare final part is a prefix with loop
// "0" (zero extension).
std::vector<std::pair<TrackWord, TrackWord>> parse_lasso_tracks(const std::string& arg, int p);

} // namespace autostruct
