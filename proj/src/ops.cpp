#include <algorithm>
#include <cstring>
#include <deque>
#include <functional>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "autostruct/automaton.hpp"
#include "autostruct/limits.hpp"

namespace autostruct {

namespace {

uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

struct PairKey {
    uint64_t v;
    bool operator==(const PairKey& o) const { return v == o.v; }
};
struct PairKeyHash {
    size_t operator()(const PairKey& k) const { return mix64(k.v); }
};

void sort_edges(const Alphabet& al, std::vector<Edge>& list) {
    std::sort(list.begin(), list.end(), [&](const Edge& x, const Edge& y) {
        int c = x.pat.compare(al, y.pat);
        if (c != 0) return c < 0;
        return x.dst < y.dst;
    });
}

} // namespace

MultiTrackAutomaton combine(const MultiTrackAutomaton& a, const MultiTrackAutomaton& b,
                            CombineMode mode) {
    require_same_alphabet(a.alphabet, b.alphabet);
    const Alphabet& al = a.alphabet;

    if (mode == CombineMode::or_) {
        MultiTrackAutomaton r(al);
        for (StateId s = 0; s < a.num_states; ++s) r.add_state(a.is_accepting(s));
        for (StateId s = 0; s < b.num_states; ++s) r.add_state(b.is_accepting(s));
        for (StateId s = 0; s < a.num_states; ++s) r.edges[s] = a.edges[s];
        for (StateId s = 0; s < b.num_states; ++s)
            for (const Edge& e : b.edges[s])
                r.add_edge(a.num_states + s, e.pat, a.num_states + e.dst);
        r.initial = a.initial;
        for (StateId s : b.initial) r.initial.push_back(a.num_states + s);
        std::sort(r.initial.begin(), r.initial.end());
        r.deterministic = false;
        return r;
    }
    if (mode == CombineMode::and_not) return combine(a, complement(b), CombineMode::and_);

    // Synchronized product over the shared track set.
    MultiTrackAutomaton r(al);
    std::unordered_map<PairKey, StateId, PairKeyHash> ids;
    std::deque<std::pair<StateId, StateId>> queue;
    auto intern = [&](StateId x, StateId y) {
        PairKey k{(uint64_t(x) << 32) | y};
        auto it = ids.find(k);
        if (it != ids.end()) return it->second;
        StateId id = r.add_state(a.is_accepting(x) && b.is_accepting(y));
        if (ids.size() + 1 > limits().max_product_states)
            throw BudgetExceeded("product exceeds " + std::to_string(limits().max_product_states) +
                                 " states");
        ids.emplace(k, id);
        queue.emplace_back(x, y);
        return id;
    };
    for (StateId x : a.initial)
        for (StateId y : b.initial) r.initial.push_back(intern(x, y));
    std::sort(r.initial.begin(), r.initial.end());
    const size_t max_edges = 4 * limits().max_product_states;
    size_t total_edges = 0;
    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        StateId from = ids[PairKey{(uint64_t(x) << 32) | y}];
        SymbolPattern cut;
        for (const Edge& ea : a.edges[x])
            for (const Edge& eb : b.edges[y])
                if (ea.pat.intersect(al, eb.pat, cut)) {
                    r.add_edge(from, cut, intern(ea.dst, eb.dst));
                    if (++total_edges > max_edges)
                        throw BudgetExceeded("product exceeds " + std::to_string(max_edges) +
                                             " transitions");
                }
        size_t before = r.edges[from].size();
        compact_edges(al, r.edges[from]);
        total_edges -= before - r.edges[from].size();
    }
    r.deterministic = a.deterministic && b.deterministic;
    return r;
}

MultiTrackAutomaton reorder_tracks(const MultiTrackAutomaton& a, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != a.alphabet.tracks)
        throw TrackOutOfRange("permutation size mismatch");
    MultiTrackAutomaton r(a.alphabet);
    for (StateId s = 0; s < a.num_states; ++s) r.add_state(a.is_accepting(s));
    r.initial = a.initial;
    for (StateId s = 0; s < a.num_states; ++s) {
        for (const Edge& e : a.edges[s]) {
            SymbolPattern p;
            for (int t = 0; t < a.alphabet.tracks; ++t) p.m[t] = e.pat.m[perm[t]];
            r.add_edge(s, p, e.dst);
        }
        sort_edges(a.alphabet, r.edges[s]);
    }
    r.deterministic = a.deterministic;
    return r;
}

namespace {

// Partition the symbols leaving a state set into rectangles on which the
// successor set is constant. Works track by track, grouping values with
// identical supporting-edge signatures; output order is deterministic.
struct Refined {
    SymbolPattern cube;
    std::vector<StateId> dsts; // sorted, unique
};

void refine_edges(const Alphabet& al, const std::vector<const Edge*>& edges,
                  std::vector<Refined>& out) {
    struct Rec {
        const Alphabet& al;
        const std::vector<const Edge*>& edges;
        std::vector<Refined>& out;
        SymbolPattern cube;

        void go(int t, const std::vector<uint32_t>& alive) {
            if (t == al.tracks) {
                Refined r;
                r.cube = cube;
                for (uint32_t i : alive) r.dsts.push_back(edges[i]->dst);
                std::sort(r.dsts.begin(), r.dsts.end());
                r.dsts.erase(std::unique(r.dsts.begin(), r.dsts.end()), r.dsts.end());
                out.push_back(std::move(r));
                return;
            }
            std::map<std::vector<uint32_t>, TrackMask> groups;
            for (int v = 0; v <= al.p; ++v) {
                std::vector<uint32_t> sig;
                for (uint32_t i : alive)
                    if (edges[i]->pat.m[t] & digit_bit(v)) sig.push_back(i);
                if (!sig.empty()) groups[std::move(sig)] |= digit_bit(v);
            }
            for (const auto& [sig, mask] : groups) {
                cube.m[t] = mask;
                go(t + 1, sig);
            }
            cube.m[t] = 0;
        }
    } rec{al, edges, out, SymbolPattern{}};

    std::vector<uint32_t> all(edges.size());
    for (uint32_t i = 0; i < edges.size(); ++i) all[i] = i;
    if (!all.empty()) rec.go(0, all);
}

} // namespace

MultiTrackAutomaton determinize(const MultiTrackAutomaton& a) {
    if (a.deterministic) return a;
    const Alphabet& al = a.alphabet;
    MultiTrackAutomaton r(al);
    std::map<std::vector<StateId>, StateId> ids;
    std::deque<std::vector<StateId>> queue;

    auto intern = [&](std::vector<StateId> set) {
        auto it = ids.find(set);
        if (it != ids.end()) return it->second;
        bool acc = false;
        for (StateId s : set) acc = acc || a.is_accepting(s);
        StateId id = r.add_state(acc);
        if (ids.size() + 1 > limits().max_subset_states)
            throw BudgetExceeded("determinization exceeds " +
                                 std::to_string(limits().max_subset_states) + " subsets");
        queue.push_back(set);
        ids.emplace(std::move(set), id);
        return id;
    };

    std::vector<StateId> init = a.initial;
    std::sort(init.begin(), init.end());
    init.erase(std::unique(init.begin(), init.end()), init.end());
    r.initial = {intern(std::move(init))};

    std::vector<const Edge*> pool;
    std::vector<Refined> parts;
    while (!queue.empty()) {
        std::vector<StateId> set = queue.front();
        queue.pop_front();
        StateId from = ids[set];
        pool.clear();
        for (StateId s : set)
            for (const Edge& e : a.edges[s]) pool.push_back(&e);
        parts.clear();
        refine_edges(al, pool, parts);
        for (auto& part : parts) r.add_edge(from, part.cube, intern(std::move(part.dsts)));
        compact_edges(al, r.edges[from]);
    }
    r.deterministic = true;
    return r;
}

MultiTrackAutomaton complement(const MultiTrackAutomaton& a) {
    // Determinize, then swap acceptance against the valid-convolution
    // recognizer; the swapped sink is the recognizer itself.
    MultiTrackAutomaton d = determinize(a);
    const Alphabet& al = a.alphabet;
    MultiTrackAutomaton vc = valid_convolutions(al);
    const StateId sink = d.num_states;

    MultiTrackAutomaton r(al);
    std::unordered_map<PairKey, StateId, PairKeyHash> ids;
    std::deque<std::pair<StateId, StateId>> queue;
    auto intern = [&](StateId q, StateId v) {
        PairKey k{(uint64_t(q) << 32) | v};
        auto it = ids.find(k);
        if (it != ids.end()) return it->second;
        StateId id = r.add_state(q == sink || !d.is_accepting(q));
        if (ids.size() + 1 > limits().max_product_states)
            throw BudgetExceeded("complement product exceeds state budget");
        ids.emplace(k, id);
        queue.emplace_back(q, v);
        return id;
    };
    StateId q0 = d.initial.empty() ? sink : d.initial[0];
    r.initial = {intern(q0, vc.initial[0])};
    std::vector<SymbolPattern> rem, tmp, pieces;
    SymbolPattern cut;
    while (!queue.empty()) {
        auto [q, v] = queue.front();
        queue.pop_front();
        StateId from = ids[PairKey{(uint64_t(q) << 32) | v}];
        for (const Edge& ve : vc.edges[v]) {
            rem.assign(1, ve.pat);
            if (q != sink) {
                for (const Edge& qe : d.edges[q]) {
                    if (!qe.pat.intersect(al, ve.pat, cut)) continue;
                    r.add_edge(from, cut, intern(qe.dst, ve.dst));
                    tmp.clear();
                    for (const SymbolPattern& piece : rem) subtract_pattern(al, piece, qe.pat, tmp);
                    rem.swap(tmp);
                    if (rem.empty()) break;
                }
            }
            for (const SymbolPattern& piece : rem) r.add_edge(from, piece, intern(sink, ve.dst));
        }
        compact_edges(al, r.edges[from]);
    }
    r.deterministic = true;
    return r;
}

MultiTrackAutomaton project(const MultiTrackAutomaton& a, int track) {
    const Alphabet& al = a.alphabet;
    if (al.tracks < 2) throw TrackOutOfRange("cannot project a single-track automaton");
    if (track < 0 || track >= al.tracks)
        throw TrackOutOfRange("track " + std::to_string(track) + " out of range");

    // Padding saturation: a state accepts if an accepting state is reachable
    // using symbols that are pad everywhere except the dropped track.
    std::vector<char> acc(a.accepting.begin(), a.accepting.end());
    bool grew = true;
    while (grew) {
        grew = false;
        for (StateId s = 0; s < a.num_states; ++s) {
            if (acc[s]) continue;
            for (const Edge& e : a.edges[s]) {
                if (!acc[e.dst]) continue;
                if (!(e.pat.m[track] & any_digit_mask(al.p))) continue;
                bool pads = true;
                for (int t = 0; t < al.tracks && pads; ++t)
                    if (t != track) pads = (e.pat.m[t] & pad_bit(al.p)) != 0;
                if (pads) {
                    acc[s] = 1;
                    grew = true;
                    break;
                }
            }
        }
    }

    Alphabet nal(al.p, al.tracks - 1);
    MultiTrackAutomaton r(nal);
    for (StateId s = 0; s < a.num_states; ++s) r.add_state(acc[s] != 0);
    r.initial = a.initial;
    SymbolPattern allpad;
    for (int t = 0; t < nal.tracks; ++t) allpad.m[t] = pad_bit(nal.p);
    std::vector<SymbolPattern> pieces;
    for (StateId s = 0; s < a.num_states; ++s) {
        for (const Edge& e : a.edges[s]) {
            SymbolPattern p;
            for (int t = 0, nt = 0; t < al.tracks; ++t)
                if (t != track) p.m[nt++] = e.pat.m[t];
            // The all-pad symbol never occurs in a word; cut it out so the
            // dropped track's overhang cannot be consumed as padding.
            if (p.allows_all_pad(nal)) {
                pieces.clear();
                subtract_pattern(nal, p, allpad, pieces);
                for (const SymbolPattern& piece : pieces) r.add_edge(s, piece, e.dst);
            } else {
                r.add_edge(s, p, e.dst);
            }
        }
        compact_edges(nal, r.edges[s]);
    }
    r.deterministic = false;
    return canonical_renumber(r);
}

MultiTrackAutomaton cylindrify(const MultiTrackAutomaton& a, int track) {
    const Alphabet& al = a.alphabet;
    if (track < 0 || track > al.tracks) throw TrackOutOfRange("insert position out of range");
    Alphabet nal(al.p, al.tracks + 1);

    // Two copies of every state track whether the new track has padded yet;
    // one extra state accepts digit overhang on the new track after the
    // original word ended.
    MultiTrackAutomaton r(nal);
    auto alive = [](StateId q) { return 2 * q; };
    auto padded = [](StateId q) { return 2 * q + 1; };
    for (StateId q = 0; q < a.num_states; ++q) {
        r.add_state(a.is_accepting(q));
        r.add_state(a.is_accepting(q));
    }
    const StateId overhang = r.add_state(true);
    for (StateId q : a.initial) r.initial.push_back(alive(q));
    std::sort(r.initial.begin(), r.initial.end());

    auto insert_at = [&](const SymbolPattern& pat, TrackMask mask) {
        SymbolPattern p;
        for (int t = 0; t < track; ++t) p.m[t] = pat.m[t];
        p.m[track] = mask;
        for (int t = track; t < al.tracks; ++t) p.m[t + 1] = pat.m[t];
        return p;
    };
    for (StateId q = 0; q < a.num_states; ++q) {
        for (const Edge& e : a.edges[q]) {
            r.add_edge(alive(q), insert_at(e.pat, any_digit_mask(al.p)), alive(e.dst));
            r.add_edge(alive(q), insert_at(e.pat, pad_bit(al.p)), padded(e.dst));
            r.add_edge(padded(q), insert_at(e.pat, pad_bit(al.p)), padded(e.dst));
        }
        if (a.is_accepting(q)) {
            SymbolPattern tail;
            for (int t = 0; t < al.tracks; ++t) tail.m[t] = pad_bit(al.p);
            r.add_edge(alive(q), insert_at(tail, any_digit_mask(al.p)), overhang);
        }
    }
    SymbolPattern tail;
    for (int t = 0; t < al.tracks; ++t) tail.m[t] = pad_bit(al.p);
    r.add_edge(overhang, insert_at(tail, any_digit_mask(al.p)), overhang);
    r.deterministic = a.deterministic;
    return canonical_renumber(r);
}

MultiTrackAutomaton minimize(const MultiTrackAutomaton& a) {
    MultiTrackAutomaton d = a.deterministic ? a : determinize(a);
    const Alphabet& al = d.alphabet;

    // Keep only useful states so the implicit dead state is the unique sink.
    std::vector<uint32_t> dist_fwd(d.num_states, 0);
    {
        std::vector<char> reach(d.num_states, 0);
        std::deque<StateId> queue;
        for (StateId s : d.initial) {
            reach[s] = 1;
            queue.push_back(s);
        }
        while (!queue.empty()) {
            StateId s = queue.front();
            queue.pop_front();
            for (const Edge& e : d.edges[s])
                if (!reach[e.dst]) {
                    reach[e.dst] = 1;
                    queue.push_back(e.dst);
                }
        }
        std::vector<std::vector<StateId>> rev(d.num_states);
        for (StateId s = 0; s < d.num_states; ++s)
            for (const Edge& e : d.edges[s]) rev[e.dst].push_back(s);
        std::vector<char> live(d.num_states, 0);
        for (StateId s = 0; s < d.num_states; ++s)
            if (d.is_accepting(s)) {
                live[s] = 1;
                queue.push_back(s);
            }
        while (!queue.empty()) {
            StateId s = queue.front();
            queue.pop_front();
            for (StateId p : rev[s])
                if (!live[p]) {
                    live[p] = 1;
                    queue.push_back(p);
                }
        }
        for (StateId s = 0; s < d.num_states; ++s) dist_fwd[s] = reach[s] && live[s];
    }
    std::vector<StateId> keep;
    std::vector<StateId> remap(d.num_states, UINT32_MAX);
    for (StateId s = 0; s < d.num_states; ++s)
        if (dist_fwd[s]) {
            remap[s] = static_cast<StateId>(keep.size());
            keep.push_back(s);
        }
    if (keep.empty()) return empty_automaton(al);

    MultiTrackAutomaton trimmed(al);
    for (StateId s : keep) trimmed.add_state(d.is_accepting(s));
    for (StateId s : d.initial)
        if (remap[s] != UINT32_MAX) trimmed.initial.push_back(remap[s]);
    if (trimmed.initial.empty()) return empty_automaton(al);
    for (size_t i = 0; i < keep.size(); ++i) {
        for (const Edge& e : d.edges[keep[i]])
            if (remap[e.dst] != UINT32_MAX)
                trimmed.add_edge(static_cast<StateId>(i), e.pat, remap[e.dst]);
        compact_edges(al, trimmed.edges[i]);
    }

    // Moore refinement over edge signatures.
    std::vector<uint32_t> cls(trimmed.num_states);
    for (StateId s = 0; s < trimmed.num_states; ++s) cls[s] = trimmed.is_accepting(s) ? 1 : 0;
    size_t num_classes = 2;
    while (true) {
        std::map<std::pair<uint32_t, std::vector<Edge>>, uint32_t> sig_ids;
        std::vector<uint32_t> next(trimmed.num_states);
        for (StateId s = 0; s < trimmed.num_states; ++s) {
            std::vector<Edge> sig;
            for (const Edge& e : trimmed.edges[s]) sig.push_back(Edge{e.pat, cls[e.dst]});
            compact_edges(al, sig);
            auto key = std::make_pair(cls[s], std::move(sig));
            auto it = sig_ids.find(key);
            if (it == sig_ids.end())
                it = sig_ids.emplace(std::move(key), static_cast<uint32_t>(sig_ids.size())).first;
            next[s] = it->second;
        }
        if (sig_ids.size() == num_classes) {
            cls = next;
            break;
        }
        num_classes = sig_ids.size();
        cls = next;
    }

    MultiTrackAutomaton r(al);
    std::vector<StateId> rep(num_classes, UINT32_MAX);
    for (StateId s = 0; s < trimmed.num_states; ++s)
        if (rep[cls[s]] == UINT32_MAX) rep[cls[s]] = s;
    for (size_t c = 0; c < num_classes; ++c) r.add_state(trimmed.is_accepting(rep[c]));
    r.initial = {cls[trimmed.initial[0]]};
    for (size_t c = 0; c < num_classes; ++c) {
        for (const Edge& e : trimmed.edges[rep[c]])
            r.add_edge(static_cast<StateId>(c), e.pat, cls[e.dst]);
        compact_edges(al, r.edges[c]);
    }
    r.deterministic = true;
    return canonical_renumber(r);
}

bool equivalent(const MultiTrackAutomaton& a, const MultiTrackAutomaton& b) {
    require_same_alphabet(a.alphabet, b.alphabet);
    return is_empty(combine(a, b, CombineMode::and_not)) &&
           is_empty(combine(b, a, CombineMode::and_not));
}

// ---------------------------------------------------------------------------
// n-ary synchronized conjunction, explored on the fly.

namespace {

struct Key128 {
    uint64_t hi = 0, lo = 0;
    bool operator==(const Key128& o) const { return hi == o.hi && lo == o.lo; }
};
struct Key128Hash {
    size_t operator()(const Key128& k) const { return mix64(k.hi ^ mix64(k.lo)); }
};

struct GlobalEdge {
    SymbolPattern pat; // over global tracks, full mask where unconstrained
    StateId dst;
};

int bit_width_u64(uint64_t v) {
    int w = 0;
    while (v) {
        ++w;
        v >>= 1;
    }
    return w;
}

struct FusedComponent {
    const MultiTrackAutomaton* aut;
    std::vector<int> tracks;
    StateId suffix; // == aut->num_states
    int bits;
    std::vector<std::vector<GlobalEdge>> cache; // per state incl. suffix
    std::vector<char> cached;
    SymbolPattern own_pads;  // pattern: own tracks pad, others full
    SymbolPattern full;

    const std::vector<GlobalEdge>& global_edges(StateId q) {
        if (!cached[q]) {
            std::vector<GlobalEdge>& out = cache[q];
            if (q == suffix) {
                out.push_back(GlobalEdge{own_pads, suffix});
            } else {
                for (const Edge& e : aut->edges[q]) {
                    GlobalEdge g{full, e.dst};
                    for (size_t t = 0; t < tracks.size(); ++t) g.pat.m[tracks[t]] = e.pat.m[t];
                    out.push_back(g);
                }
                if (aut->is_accepting(q)) out.push_back(GlobalEdge{own_pads, suffix});
            }
            cached[q] = 1;
        }
        return cache[q];
    }
};

} // namespace

bool mapped_conjunction_nonempty(const Alphabet& global,
                                 const std::vector<MappedAutomaton>& comps) {
    if (comps.empty()) throw Error("conjunction needs at least one component");
    std::vector<char> covered(global.tracks, 0);
    std::vector<FusedComponent> fc;
    int total_bits = 0;
    for (const MappedAutomaton& m : comps) {
        if (m.aut->alphabet.p != global.p) throw AlphabetMismatch("component prime differs");
        FusedComponent c;
        c.aut = m.aut;
        c.tracks = m.tracks;
        c.suffix = m.aut->num_states;
        c.bits = bit_width_u64(c.suffix);
        if (c.bits == 0) c.bits = 1;
        c.cache.resize(c.suffix + 1);
        c.cached.assign(c.suffix + 1, 0);
        c.full = SymbolPattern::full(global);
        c.own_pads = c.full;
        for (int t : c.tracks) {
            if (t < 0 || t >= global.tracks) throw TrackOutOfRange("bad track map");
            covered[t] = 1;
            c.own_pads.m[t] = pad_bit(global.p);
        }
        total_bits += c.bits;
        fc.push_back(std::move(c));
    }
    for (int t = 0; t < global.tracks; ++t)
        if (!covered[t]) throw Error("global track " + std::to_string(t) + " unconstrained");
    if (total_bits > 128 || fc.size() > 24)
        throw BudgetExceeded("too many product components to pack");

    const size_t n = fc.size();
    auto pack = [&](const std::vector<StateId>& q) {
        Key128 k;
        for (size_t i = 0; i < n; ++i) {
            k.hi = (k.hi << fc[i].bits) | (k.lo >> (64 - fc[i].bits));
            k.lo = (k.lo << fc[i].bits) | q[i];
        }
        return k;
    };
    auto unpack = [&](Key128 k, std::vector<StateId>& q) {
        for (size_t i = n; i-- > 0;) {
            uint64_t mask = (fc[i].bits == 64) ? ~0ull : ((1ull << fc[i].bits) - 1);
            q[i] = static_cast<StateId>(k.lo & mask);
            k.lo = (k.lo >> fc[i].bits) | (k.hi << (64 - fc[i].bits));
            k.hi >>= fc[i].bits;
        }
    };
    auto is_accepting = [&](const std::vector<StateId>& q) {
        for (size_t i = 0; i < n; ++i)
            if (q[i] != fc[i].suffix && !fc[i].aut->is_accepting(q[i])) return false;
        return true;
    };

    std::unordered_set<Key128, Key128Hash> visited;
    std::deque<Key128> queue;
    auto visit = [&](const std::vector<StateId>& q) {
        Key128 k = pack(q);
        if (visited.insert(k).second) {
            if (visited.size() > limits().max_product_states)
                throw BudgetExceeded("conjunction exploration exceeds " +
                                     std::to_string(limits().max_product_states) + " states");
            queue.push_back(k);
            return is_accepting(q);
        }
        return false;
    };

    // Initial joint states: cross product of initial sets.
    {
        std::vector<StateId> q(n);
        struct Seed {
            const std::vector<FusedComponent>& fc;
            std::vector<StateId>& q;
            const std::function<bool(const std::vector<StateId>&)>& visit;
            bool found = false;
            void go(size_t i) {
                if (found) return;
                if (i == fc.size()) {
                    found = visit(q);
                    return;
                }
                for (StateId s : fc[i].aut->initial) {
                    q[i] = s;
                    go(i + 1);
                }
            }
        };
        std::function<bool(const std::vector<StateId>&)> vf = visit;
        Seed seed{fc, q, vf};
        seed.go(0);
        if (seed.found) return true;
    }

    struct Partial {
        SymbolPattern cube;
        std::array<StateId, 24> dst;
    };
    std::vector<Partial> cur, next;
    std::vector<StateId> q(n), succ(n);
    std::vector<size_t> order(n);

    while (!queue.empty()) {
        Key128 k = queue.front();
        queue.pop_front();
        unpack(k, q);

        for (size_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
            return fc[x].global_edges(q[x]).size() <
                   fc[y].global_edges(q[y]).size();
        });

        cur.clear();
        bool first = true;
        for (size_t oi = 0; oi < n && (first || !cur.empty()); ++oi) {
            size_t i = order[oi];
            const auto& ge = fc[i].global_edges(q[i]);
            next.clear();
            if (first) {
                for (const GlobalEdge& e : ge) {
                    Partial p;
                    p.cube = e.pat;
                    p.dst[i] = e.dst;
                    next.push_back(p);
                }
                first = false;
            } else {
                SymbolPattern cut;
                for (const Partial& p : cur)
                    for (const GlobalEdge& e : ge)
                        if (p.cube.intersect(global, e.pat, cut)) {
                            Partial np = p;
                            np.cube = cut;
                            np.dst[i] = e.dst;
                            next.push_back(np);
                        }
            }
            cur.swap(next);
        }

        for (const Partial& p : cur) {
            // A joint move must consume at least one real symbol.
            if (p.cube.allows_all_pad(global) && p.cube.size(global) == 1) continue;
            for (size_t i = 0; i < n; ++i) succ[i] = p.dst[i];
            if (visit(succ)) return true;
        }
    }
    return false;
}

} // namespace autostruct
