#include "autostruct/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "autostruct/limits.hpp"

namespace autostruct {

Limits& limits() {
    static Limits instance;
    return instance;
}

void MultiTrackAutomaton::validate() const {
    if (accepting.size() != num_states || edges.size() != num_states)
        throw Error("state arrays out of sync");
    for (StateId s : initial)
        if (s >= num_states) throw Error("initial state " + std::to_string(s) + " undeclared");
    for (StateId s = 0; s < num_states; ++s)
        for (const Edge& e : edges[s])
            if (e.dst >= num_states)
                throw Error("transition endpoint " + std::to_string(e.dst) + " undeclared");
    if (deterministic) {
        if (initial.size() != 1) throw Error("deterministic automaton needs one initial state");
        // Pairwise-disjoint patterns per state.
        SymbolPattern tmp;
        for (StateId s = 0; s < num_states; ++s)
            for (size_t i = 0; i < edges[s].size(); ++i)
                for (size_t j = i + 1; j < edges[s].size(); ++j)
                    if (edges[s][i].pat.intersect(alphabet, edges[s][j].pat, tmp))
                        throw Error("overlapping transitions in deterministic automaton");
    }
}

MultiTrackAutomaton empty_automaton(const Alphabet& al) {
    MultiTrackAutomaton a(al);
    a.add_state(false);
    a.initial = {0};
    a.deterministic = true;
    return a;
}

MultiTrackAutomaton valid_convolutions(const Alphabet& al) {
    if (al.tracks > 10)
        throw BudgetExceeded("valid-convolution recognizer over " + std::to_string(al.tracks) +
                             " tracks not materialized");
    MultiTrackAutomaton a(al);
    const uint32_t full = (1u << al.tracks) - 1u;
    // State = set of exhausted tracks; the all-exhausted state never occurs.
    std::vector<StateId> id(1u << al.tracks, UINT32_MAX);
    std::deque<uint32_t> queue;
    id[0] = a.add_state(true);
    a.initial = {0};
    queue.push_back(0);
    while (!queue.empty()) {
        uint32_t d = queue.front();
        queue.pop_front();
        uint32_t alive = full & ~d;
        // Newly exhausted tracks: any proper subset of the live ones.
        for (uint32_t sub = alive;; sub = (sub - 1) & alive) {
            if (sub != alive) {
                uint32_t nd = d | sub;
                if (id[nd] == UINT32_MAX) {
                    id[nd] = a.add_state(true);
                    queue.push_back(nd);
                }
                SymbolPattern pat;
                for (int t = 0; t < al.tracks; ++t)
                    pat.m[t] = (nd >> t) & 1u ? pad_bit(al.p) : any_digit_mask(al.p);
                a.add_edge(id[d], pat, id[nd]);
            }
            if (sub == 0) break;
        }
    }
    a.deterministic = true;
    return a;
}

MultiTrackAutomaton singleton_automaton(const Alphabet& al, const TrackWordTuple& words) {
    auto word = convolve(al, words);
    MultiTrackAutomaton a(al);
    for (size_t i = 0; i <= word.size(); ++i) a.add_state(i == word.size());
    a.initial = {0};
    for (size_t i = 0; i < word.size(); ++i)
        a.add_edge(static_cast<StateId>(i), SymbolPattern::concrete(al, word[i]),
                   static_cast<StateId>(i + 1));
    a.deterministic = true;
    return a;
}

bool accepts_word(const MultiTrackAutomaton& a, const std::vector<SymbolVec>& word) {
    std::vector<StateId> cur = a.initial;
    std::vector<StateId> next;
    std::vector<char> seen(a.num_states);
    for (const SymbolVec& sym : word) {
        next.clear();
        std::fill(seen.begin(), seen.end(), 0);
        for (StateId s : cur)
            for (const Edge& e : a.edges[s])
                if (!seen[e.dst] && e.pat.matches(a.alphabet, sym)) {
                    seen[e.dst] = 1;
                    next.push_back(e.dst);
                }
        cur.swap(next);
        if (cur.empty()) return false;
    }
    for (StateId s : cur)
        if (a.is_accepting(s)) return true;
    return false;
}

bool accepts(const MultiTrackAutomaton& a, const TrackWordTuple& words) {
    return accepts_word(a, convolve(a.alphabet, words));
}

bool is_empty(const MultiTrackAutomaton& a) {
    std::vector<char> seen(a.num_states);
    std::deque<StateId> queue;
    for (StateId s : a.initial) {
        if (a.is_accepting(s)) return false;
        if (!seen[s]) {
            seen[s] = 1;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (const Edge& e : a.edges[s])
            if (!seen[e.dst]) {
                if (a.is_accepting(e.dst)) return false;
                seen[e.dst] = 1;
                queue.push_back(e.dst);
            }
    }
    return true;
}

namespace {

// Minimal suffix length to acceptance per state; UINT32_MAX if none.
std::vector<uint32_t> distance_to_accept(const MultiTrackAutomaton& a) {
    std::vector<std::vector<StateId>> rev(a.num_states);
    for (StateId s = 0; s < a.num_states; ++s)
        for (const Edge& e : a.edges[s]) rev[e.dst].push_back(s);
    std::vector<uint32_t> dist(a.num_states, UINT32_MAX);
    std::deque<StateId> queue;
    for (StateId s = 0; s < a.num_states; ++s)
        if (a.is_accepting(s)) {
            dist[s] = 0;
            queue.push_back(s);
        }
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (StateId pre : rev[s])
            if (dist[pre] == UINT32_MAX) {
                dist[pre] = dist[s] + 1;
                queue.push_back(pre);
            }
    }
    return dist;
}

} // namespace

std::optional<std::vector<SymbolVec>> witness(const MultiTrackAutomaton& a) {
    auto dist = distance_to_accept(a);
    uint32_t best = UINT32_MAX;
    for (StateId s : a.initial) best = std::min(best, dist[s]);
    if (best == UINT32_MAX) return std::nullopt;

    std::vector<SymbolVec> word;
    std::vector<StateId> cur;
    for (StateId s : a.initial)
        if (dist[s] == best) cur.push_back(s);
    for (uint32_t need = best; need > 0; --need) {
        // Candidate edges that stay on a shortest path.
        std::vector<const Edge*> cands;
        for (StateId s : cur)
            for (const Edge& e : a.edges[s])
                if (dist[e.dst] == need - 1) cands.push_back(&e);
        // Pick the least symbol track by track; patterns are rectangles, so
        // any surviving candidate set can be completed.
        SymbolVec sym(a.alphabet.tracks);
        std::vector<const Edge*> alive = cands;
        std::vector<const Edge*> filt;
        for (int t = 0; t < a.alphabet.tracks; ++t) {
            for (int v = 0; v <= a.alphabet.p; ++v) {
                filt.clear();
                for (const Edge* e : alive)
                    if (e->pat.m[t] & digit_bit(v)) filt.push_back(e);
                if (!filt.empty()) {
                    sym[t] = static_cast<uint8_t>(v);
                    alive.swap(filt);
                    break;
                }
            }
        }
        word.push_back(sym);
        std::vector<StateId> next;
        std::vector<char> seen(a.num_states);
        for (const Edge* e : alive)
            if (!seen[e->dst]) {
                seen[e->dst] = 1;
                next.push_back(e->dst);
            }
        cur.swap(next);
    }
    return word;
}

std::vector<std::vector<SymbolVec>> enumerate_accepted(const MultiTrackAutomaton& a, int max_len) {
    std::vector<std::vector<SymbolVec>> out;
    std::vector<SymbolVec> word;

    struct Rec {
        const MultiTrackAutomaton& a;
        std::vector<std::vector<SymbolVec>>& out;
        std::vector<SymbolVec>& word;
        int max_len;

        void expand(const SymbolPattern& pat, int t, SymbolVec& sym,
                    std::map<SymbolVec, std::vector<StateId>>& next, StateId dst) const {
            if (t == a.alphabet.tracks) {
                next[sym].push_back(dst);
                return;
            }
            for (int v = 0; v <= a.alphabet.p; ++v)
                if (pat.m[t] & digit_bit(v)) {
                    sym[t] = static_cast<uint8_t>(v);
                    expand(pat, t + 1, sym, next, dst);
                }
        }

        void go(const std::vector<StateId>& cur, int depth) {
            for (StateId s : cur)
                if (a.is_accepting(s)) {
                    out.push_back(word);
                    break;
                }
            if (depth == max_len) return;
            std::map<SymbolVec, std::vector<StateId>> next;
            SymbolVec sym(a.alphabet.tracks);
            for (StateId s : cur)
                for (const Edge& e : a.edges[s]) {
                    if (e.pat.size(a.alphabet) > 1u << 20)
                        throw BudgetExceeded("pattern too dense to enumerate");
                    expand(e.pat, 0, sym, next, e.dst);
                }
            for (auto& [symbol, states] : next) {
                std::sort(states.begin(), states.end());
                states.erase(std::unique(states.begin(), states.end()), states.end());
                word.push_back(symbol);
                go(states, depth + 1);
                word.pop_back();
            }
        }
    } rec{a, out, word, max_len};

    std::vector<StateId> init = a.initial;
    std::sort(init.begin(), init.end());
    init.erase(std::unique(init.begin(), init.end()), init.end());
    rec.go(init, 0);
    return out;
}

void compact_edges(const Alphabet& al, std::vector<Edge>& list) {
    auto key_without = [&](const Edge& e, int skip) {
        std::array<TrackMask, kMaxTracks> k{};
        for (int t = 0; t < al.tracks; ++t) k[t] = t == skip ? TrackMask(0) : e.pat.m[t];
        return k;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (int t = 0; t < al.tracks; ++t) {
            std::sort(list.begin(), list.end(), [&](const Edge& x, const Edge& y) {
                if (x.dst != y.dst) return x.dst < y.dst;
                auto kx = key_without(x, t), ky = key_without(y, t);
                return kx < ky;
            });
            std::vector<Edge> merged;
            for (const Edge& e : list) {
                if (!merged.empty() && merged.back().dst == e.dst &&
                    key_without(merged.back(), t) == key_without(e, t)) {
                    merged.back().pat.m[t] |= e.pat.m[t];
                    changed = true;
                } else {
                    merged.push_back(e);
                }
            }
            list.swap(merged);
        }
    }
    std::sort(list.begin(), list.end(), [&](const Edge& x, const Edge& y) {
        int c = x.pat.compare(al, y.pat);
        if (c != 0) return c < 0;
        return x.dst < y.dst;
    });
    list.erase(std::unique(list.begin(), list.end(),
                           [&](const Edge& x, const Edge& y) {
                               return x.dst == y.dst && x.pat.compare(al, y.pat) == 0;
                           }),
               list.end());
}

MultiTrackAutomaton canonical_renumber(const MultiTrackAutomaton& a) {
    std::vector<StateId> order;
    std::vector<StateId> newid(a.num_states, UINT32_MAX);
    std::deque<StateId> queue;
    std::vector<StateId> init = a.initial;
    std::sort(init.begin(), init.end());
    for (StateId s : init)
        if (newid[s] == UINT32_MAX) {
            newid[s] = static_cast<StateId>(order.size());
            order.push_back(s);
            queue.push_back(s);
        }
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        std::vector<Edge> sorted = a.edges[s];
        std::sort(sorted.begin(), sorted.end(), [&](const Edge& x, const Edge& y) {
            int c = x.pat.compare(a.alphabet, y.pat);
            if (c != 0) return c < 0;
            return x.dst < y.dst;
        });
        for (const Edge& e : sorted)
            if (newid[e.dst] == UINT32_MAX) {
                newid[e.dst] = static_cast<StateId>(order.size());
                order.push_back(e.dst);
                queue.push_back(e.dst);
            }
    }
    MultiTrackAutomaton r(a.alphabet);
    for (StateId s : order) r.add_state(a.is_accepting(s));
    for (StateId s : init) r.initial.push_back(newid[s]);
    std::sort(r.initial.begin(), r.initial.end());
    r.initial.erase(std::unique(r.initial.begin(), r.initial.end()), r.initial.end());
    for (StateId s : order) {
        std::vector<Edge> list;
        for (const Edge& e : a.edges[s])
            if (newid[e.dst] != UINT32_MAX) list.push_back(Edge{e.pat, newid[e.dst]});
        compact_edges(a.alphabet, list);
        r.edges[newid[s]] = std::move(list);
    }
    r.deterministic = a.deterministic;
    return r;
}

} // namespace autostruct
