#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "autostruct/alphabet.hpp"

namespace autostruct {

using StateId = uint32_t;

struct Edge {
    SymbolPattern pat;
    StateId dst = 0;

    bool operator==(const Edge& o) const { return dst == o.dst && pat.m == o.pat.m; }
    bool operator<(const Edge& o) const {
        return pat.m != o.pat.m ? pat.m < o.pat.m : dst < o.dst;
    }
};

// Finite automaton over k-track padded symbols. Transitions are labelled by
// symbol patterns (one value mask per track); a missing transition is an
// implicit dead state. Constructors in this library keep two invariants on
// top of the obvious structural ones:
//   - the language is a subset of the valid-convolution language (pads only
//     at track tails, never an all-pad symbol), and
//   - no edge pattern matches the all-pad symbol.
// Values are immutable once built; every operation returns a new automaton.
struct MultiTrackAutomaton {
    Alphabet alphabet;
    StateId num_states = 0;
    std::vector<StateId> initial;     // sorted; singleton when deterministic
    std::vector<char> accepting;      // indexed by state
    std::vector<std::vector<Edge>> edges;
    bool deterministic = false;

    MultiTrackAutomaton() = default;
    explicit MultiTrackAutomaton(const Alphabet& al) : alphabet(al) {}

    StateId add_state(bool acc = false) {
        accepting.push_back(acc ? 1 : 0);
        edges.emplace_back();
        return num_states++;
    }
    void add_edge(StateId from, const SymbolPattern& pat, StateId to) {
        edges[from].push_back(Edge{pat, to});
    }
    bool is_accepting(StateId s) const { return accepting[s] != 0; }

    // Structural checks (declared states, determinism flag consistency).
    void validate() const;
};

enum class CombineMode { and_, or_, and_not };

// Boolean combinations; both inputs must share the alphabet.
MultiTrackAutomaton combine(const MultiTrackAutomaton& a, const MultiTrackAutomaton& b,
                            CombineMode mode);

// Valid convolutions minus L(a).
MultiTrackAutomaton complement(const MultiTrackAutomaton& a);

// Existential projection: drop one track, saturating acceptance so that
// witnesses longer than all remaining tracks are found.
MultiTrackAutomaton project(const MultiTrackAutomaton& a, int track);

// Inverse of project: insert an unconstrained track at the given position.
MultiTrackAutomaton cylindrify(const MultiTrackAutomaton& a, int track);

// Rearrange tracks; perm[new_track] = old_track.
MultiTrackAutomaton reorder_tracks(const MultiTrackAutomaton& a, const std::vector<int>& perm);

MultiTrackAutomaton determinize(const MultiTrackAutomaton& a);

// Canonical-ish minimal DFA (partition refinement over pattern signatures);
// the dead sink stays implicit. Determinizes first when needed.
MultiTrackAutomaton minimize(const MultiTrackAutomaton& a);

bool is_empty(const MultiTrackAutomaton& a);

// Shortest accepted word, ties broken lexicographically (pad sorts last);
// nullopt iff the language is empty.
std::optional<std::vector<SymbolVec>> witness(const MultiTrackAutomaton& a);

bool accepts(const MultiTrackAutomaton& a, const TrackWordTuple& words);
bool accepts_word(const MultiTrackAutomaton& a, const std::vector<SymbolVec>& word);

bool equivalent(const MultiTrackAutomaton& a, const MultiTrackAutomaton& b);

// Recognizer of all valid convolutions over the alphabet.
MultiTrackAutomaton valid_convolutions(const Alphabet& al);

// Empty-language automaton (one rejecting state).
MultiTrackAutomaton empty_automaton(const Alphabet& al);

// Exact-word acceptor.
MultiTrackAutomaton singleton_automaton(const Alphabet& al, const TrackWordTuple& words);

// All accepted symbol words of length <= max_len, sorted; test/debug helper.
std::vector<std::vector<SymbolVec>> enumerate_accepted(const MultiTrackAutomaton& a,
                                                       int max_len);

// Drop unreachable states and renumber the rest in breadth-first discovery
// order over sorted edges, so equal constructions serialize identically.
MultiTrackAutomaton canonical_renumber(const MultiTrackAutomaton& a);

// Merge same-target edges that differ in a single track mask; keeps edge
// lists small after products.
void compact_edges(const Alphabet& al, std::vector<Edge>& list);

// One side of an n-ary synchronized product: an automaton together with the
// global track index of each of its local tracks.
struct MappedAutomaton {
    const MultiTrackAutomaton* aut = nullptr;
    std::vector<int> tracks; // tracks[local] = global
};

// On-the-fly emptiness of the conjunction of mapped components over a global
// track set. Components whose word ends early continue in a virtual suffix
// state when accepting. Every global track must be constrained by at least
// one component. Nothing is materialized; the visited count respects
// limits().max_product_states.
bool mapped_conjunction_nonempty(const Alphabet& global, const std::vector<MappedAutomaton>& comps);

// Materialized variant of the same product (conjunction only).
MultiTrackAutomaton mapped_conjunction(const Alphabet& global,
                                       const std::vector<MappedAutomaton>& comps);

} // namespace autostruct
