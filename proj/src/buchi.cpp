#include "autostruct/buchi.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <tuple>

#include "autostruct/limits.hpp"

namespace autostruct {

void LassoWord::validate(const Alphabet& al) const {
    if (loop.empty()) throw Error("lasso loop must be nonempty");
    for (const auto* block : {&prefix, &loop})
        for (const SymbolVec& sym : *block) {
            if (static_cast<int>(sym.size()) != al.tracks)
                throw AlphabetMismatch("lasso word has " + std::to_string(sym.size()) +
                                       " tracks, the automaton reads " +
                                       std::to_string(al.tracks));
            for (uint8_t v : sym)
                if (v >= al.p) throw InvalidDigit("pad or bad digit in lasso word");
        }
}

LassoWord align_lassos(const Alphabet& al,
                       const std::vector<std::pair<TrackWord, TrackWord>>& per_track) {
    if (static_cast<int>(per_track.size()) != al.tracks)
        throw TrackOutOfRange("expected " + std::to_string(al.tracks) + " track lassos");
    size_t pre_len = 0;
    size_t loop_len = 1;
    for (const auto& [pre, loop] : per_track) {
        if (loop.empty()) throw Error("lasso loop must be nonempty");
        pre_len = std::max(pre_len, pre.size());
        loop_len = std::lcm(loop_len, loop.size());
    }
    auto at = [&](int t, size_t j) {
        const auto& [pre, loop] = per_track[t];
        if (j < pre.size()) return pre[j];
        return loop[(j - pre.size()) % loop.size()];
    };
    LassoWord w;
    for (size_t j = 0; j < pre_len; ++j) {
        SymbolVec sym(al.tracks);
        for (int t = 0; t < al.tracks; ++t) sym[t] = at(t, j);
        w.prefix.push_back(sym);
    }
    for (size_t j = pre_len; j < pre_len + loop_len; ++j) {
        SymbolVec sym(al.tracks);
        for (int t = 0; t < al.tracks; ++t) sym[t] = at(t, j);
        w.loop.push_back(sym);
    }
    w.validate(al);
    return w;
}

namespace {

// Tarjan SCC over an implicit graph given by node count and a successor
// callback; returns the component index per node (condensation order).
struct Tarjan {
    std::vector<int> comp;
    std::vector<std::vector<uint32_t>> members;

    template <typename Succ>
    void run(uint32_t n, Succ succ) {
        comp.assign(n, -1);
        std::vector<int> low(n, -1), idx(n, -1);
        std::vector<char> onstack(n, 0);
        std::vector<uint32_t> stack;
        int counter = 0;
        // Iterative Tarjan to dodge stack depth limits.
        struct Frame {
            uint32_t v;
            size_t next = 0;
            std::vector<uint32_t> succs;
        };
        std::vector<Frame> frames;
        for (uint32_t root = 0; root < n; ++root) {
            if (idx[root] != -1) continue;
            frames.push_back(Frame{root, 0, {}});
            idx[root] = low[root] = counter++;
            stack.push_back(root);
            onstack[root] = 1;
            frames.back().succs = succ(root);
            while (!frames.empty()) {
                Frame& f = frames.back();
                if (f.next < f.succs.size()) {
                    uint32_t w = f.succs[f.next++];
                    if (idx[w] == -1) {
                        idx[w] = low[w] = counter++;
                        stack.push_back(w);
                        onstack[w] = 1;
                        frames.push_back(Frame{w, 0, {}});
                        frames.back().succs = succ(w);
                    } else if (onstack[w]) {
                        low[f.v] = std::min(low[f.v], idx[w]);
                    }
                } else {
                    if (low[f.v] == idx[f.v]) {
                        members.emplace_back();
                        uint32_t w;
                        do {
                            w = stack.back();
                            stack.pop_back();
                            onstack[w] = 0;
                            comp[w] = static_cast<int>(members.size()) - 1;
                            members.back().push_back(w);
                        } while (w != f.v);
                    }
                    uint32_t v = f.v;
                    frames.pop_back();
                    if (!frames.empty())
                        low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                }
            }
        }
    }
};

} // namespace

bool accepts_lasso(const BuchiAutomaton& b, const LassoWord& w) {
    w.validate(b.alphabet);
    std::vector<StateId> cur = b.initial;
    std::vector<StateId> next;
    std::vector<char> seen(b.num_states);
    for (const SymbolVec& sym : w.prefix) {
        next.clear();
        std::fill(seen.begin(), seen.end(), 0);
        for (StateId s : cur)
            for (const Edge& e : b.edges[s])
                if (!seen[e.dst] && e.pat.matches(b.alphabet, sym)) {
                    seen[e.dst] = 1;
                    next.push_back(e.dst);
                }
        cur.swap(next);
        if (cur.empty()) return false;
    }

    // Product of the state graph with the loop positions; accept iff a cycle
    // through an accepting state is reachable.
    const uint32_t L = static_cast<uint32_t>(w.loop.size());
    const uint32_t n = b.num_states * L;
    auto succ = [&](uint32_t node) {
        StateId q = node / L;
        uint32_t i = node % L;
        std::vector<uint32_t> out;
        for (const Edge& e : b.edges[q])
            if (e.pat.matches(b.alphabet, w.loop[i])) out.push_back(e.dst * L + (i + 1) % L);
        return out;
    };
    // Restrict to nodes reachable from the prefix front.
    std::vector<char> reach(n, 0);
    std::deque<uint32_t> queue;
    for (StateId q : cur) {
        reach[q * L] = 1;
        queue.push_back(q * L);
    }
    while (!queue.empty()) {
        uint32_t v = queue.front();
        queue.pop_front();
        for (uint32_t s : succ(v))
            if (!reach[s]) {
                reach[s] = 1;
                queue.push_back(s);
            }
    }
    Tarjan tarjan;
    tarjan.run(n, [&](uint32_t v) {
        std::vector<uint32_t> out;
        if (!reach[v]) return out;
        for (uint32_t s : succ(v))
            if (reach[s]) out.push_back(s);
        return out;
    });
    for (const auto& scc : tarjan.members) {
        bool has_accepting = false;
        for (uint32_t v : scc)
            if (reach[v] && b.is_accepting(v / L)) has_accepting = true;
        if (!has_accepting) continue;
        if (scc.size() > 1) return true;
        uint32_t v = scc[0];
        if (!reach[v]) continue;
        for (uint32_t s : succ(v))
            if (s == v) return true;
    }
    return false;
}

BuchiAutomaton intersect(const BuchiAutomaton& a, const BuchiAutomaton& b) {
    require_same_alphabet(a.alphabet, b.alphabet);
    const Alphabet& al = a.alphabet;
    // Two-phase flag product: wait for an accepting a-state, then for an
    // accepting b-state; phase-one accepting a-states are the Büchi set.
    BuchiAutomaton r(al);
    std::deque<std::tuple<StateId, StateId, int>> queue;
    std::map<std::tuple<StateId, StateId, int>, StateId> ids;
    auto intern = [&](StateId x, StateId y, int phase) {
        auto [it, fresh] = ids.try_emplace({x, y, phase}, r.num_states);
        if (fresh) {
            r.add_state(phase == 0 && a.is_accepting(x));
            if (r.num_states > limits().max_product_states)
                throw BudgetExceeded("buchi product exceeds state budget");
            queue.emplace_back(x, y, phase);
        }
        return it->second;
    };
    for (StateId x : a.initial)
        for (StateId y : b.initial) r.initial.push_back(intern(x, y, 0));
    std::sort(r.initial.begin(), r.initial.end());
    SymbolPattern cut;
    while (!queue.empty()) {
        auto [x, y, phase] = queue.front();
        queue.pop_front();
        StateId from = ids.at({x, y, phase});
        int next_phase = phase;
        if (phase == 0 && a.is_accepting(x)) next_phase = 1;
        if (phase == 1 && b.is_accepting(y)) next_phase = 0;
        for (const Edge& ea : a.edges[x])
            for (const Edge& eb : b.edges[y])
                if (ea.pat.intersect(al, eb.pat, cut))
                    r.add_edge(from, cut, intern(ea.dst, eb.dst, next_phase));
    }
    for (auto& list : r.edges) compact_edges(al, list);
    r.deterministic = false;
    return r;
}

namespace {

std::optional<LassoWord> witness_impl(const BuchiAutomaton& a) {
    std::vector<char> reach(a.num_states, 0);
    std::vector<int> parent(a.num_states, -1);
    std::vector<SymbolVec> parent_sym(a.num_states);
    std::deque<StateId> queue;
    for (StateId s : a.initial) {
        reach[s] = 1;
        queue.push_back(s);
    }
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (const Edge& e : a.edges[s])
            if (!reach[e.dst]) {
                reach[e.dst] = 1;
                parent[e.dst] = static_cast<int>(s);
                parent_sym[e.dst] = e.pat.least(a.alphabet);
                queue.push_back(e.dst);
            }
    }
    Tarjan tarjan;
    tarjan.run(a.num_states, [&](uint32_t v) {
        std::vector<uint32_t> out;
        if (!reach[v]) return out;
        for (const Edge& e : a.edges[v])
            if (reach[e.dst]) out.push_back(e.dst);
        return out;
    });

    for (StateId s = 0; s < a.num_states; ++s) {
        if (!reach[s] || !a.is_accepting(s)) continue;
        int c = tarjan.comp[s];
        bool cyclic = tarjan.members[c].size() > 1;
        if (!cyclic)
            for (const Edge& e : a.edges[s])
                if (e.dst == s) cyclic = true;
        if (!cyclic) continue;

        // Prefix: BFS tree path from an initial state to s.
        std::vector<SymbolVec> prefix;
        for (StateId v = s; parent[v] != -1; v = static_cast<StateId>(parent[v]))
            prefix.push_back(parent_sym[v]);
        std::reverse(prefix.begin(), prefix.end());

        // Loop: shortest cycle s -> s inside the component.
        std::vector<int> lp(a.num_states, -1);
        std::vector<SymbolVec> lsym(a.num_states);
        std::deque<StateId> lq;
        std::vector<SymbolVec> loop;
        bool closed = false;
        lq.push_back(s);
        std::vector<char> seen(a.num_states, 0);
        seen[s] = 1;
        while (!lq.empty() && !closed) {
            StateId v = lq.front();
            lq.pop_front();
            for (const Edge& e : a.edges[v]) {
                if (tarjan.comp[e.dst] != c) continue;
                if (e.dst == s) {
                    loop.push_back(e.pat.least(a.alphabet));
                    for (StateId u = v; u != s; u = static_cast<StateId>(lp[u]))
                        loop.push_back(lsym[u]);
                    std::reverse(loop.begin(), loop.end());
                    closed = true;
                    break;
                }
                if (!seen[e.dst]) {
                    seen[e.dst] = 1;
                    lp[e.dst] = static_cast<int>(v);
                    lsym[e.dst] = e.pat.least(a.alphabet);
                    lq.push_back(e.dst);
                }
            }
        }
        LassoWord w;
        w.prefix = std::move(prefix);
        w.loop = std::move(loop);
        return w;
    }
    return std::nullopt;
}

} // namespace

std::optional<LassoWord> buchi_witness(const BuchiAutomaton& a) { return witness_impl(a); }

bool is_empty_buchi(const BuchiAutomaton& a) { return !witness_impl(a).has_value(); }

BuchiAutomaton make_hp_hat_mul(int p) {
    if (!is_prime(p)) throw NotPrime("p must be prime, got " + std::to_string(p));
    if (p == 2) throw EvenPrimeUnsupported("the completion presentation needs an odd prime");
    Alphabet al(p, 6);
    BuchiAutomaton b(al);
    StateId start = b.add_state(true);           // before the first position
    std::vector<StateId> by_sum(p);
    for (int s = 0; s < p; ++s) by_sum[s] = b.add_state(true);
    b.initial = {start};

    SymbolVec sym(6);
    // First position: gamma digits are 0 (no z_0) and the alpha digits add up.
    for (int a1 = 0; a1 < p; ++a1)
        for (int a2 = 0; a2 < p; ++a2) {
            sym[0] = uint8_t(a1);
            sym[1] = 0;
            sym[2] = uint8_t(a2);
            sym[3] = 0;
            sym[4] = uint8_t((a1 + a2) % p);
            sym[5] = 0;
            b.add_edge(start, SymbolPattern::concrete(al, sym), by_sum[a2]);
        }
    // Later positions carry the running digit sum of the second factor.
    for (int s = 0; s < p; ++s)
        for (int a1 = 0; a1 < p; ++a1)
            for (int g1 = 0; g1 < p; ++g1)
                for (int a2 = 0; a2 < p; ++a2)
                    for (int g2 = 0; g2 < p; ++g2) {
                        sym[0] = uint8_t(a1);
                        sym[1] = uint8_t(g1);
                        sym[2] = uint8_t(a2);
                        sym[3] = uint8_t(g2);
                        sym[4] = uint8_t((a1 + a2) % p);
                        sym[5] = uint8_t((g1 + g2 + a1 * s) % p);
                        b.add_edge(by_sum[s], SymbolPattern::concrete(al, sym),
                                   by_sum[(s + a2) % p]);
                    }
    for (StateId st = 0; st < b.num_states; ++st) compact_edges(al, b.edges[st]);
    b.deterministic = true;
    return b;
}

BuchiAutomaton make_hp_hat_domain(int p) {
    if (!is_prime(p)) throw NotPrime("p must be prime, got " + std::to_string(p));
    if (p == 2) throw EvenPrimeUnsupported("the completion presentation needs an odd prime");
    Alphabet al(p, 2);
    BuchiAutomaton b(al);
    StateId start = b.add_state(true);
    StateId rest = b.add_state(true);
    b.initial = {start};
    SymbolPattern first;
    first.m[0] = any_digit_mask(p);
    first.m[1] = digit_bit(0); // no z_0
    b.add_edge(start, first, rest);
    SymbolPattern any;
    any.m[0] = any_digit_mask(p);
    any.m[1] = any_digit_mask(p);
    b.add_edge(rest, any, rest);
    b.deterministic = true;
    return b;
}

bool finite_embedding_check(const Presentation& hp, const BuchiAutomaton& mul,
                            const std::string& g, const std::string& h, const std::string& c) {
    if (hp.kind != GroupKind::hp)
        throw PresentationMismatch("the embedding check targets the hp presentation");
    std::vector<std::pair<TrackWord, TrackWord>> per_track;
    for (const std::string* s : {&g, &h, &c})
        for (TrackWord& tr : element_tracks(hp, *s))
            per_track.emplace_back(std::move(tr), TrackWord{0});
    return accepts_lasso(mul, align_lassos(mul.alphabet, per_track));
}

namespace {

TrackWord lasso_digits(const std::string& s, int p) { return track_word_from_string(s, p); }

} // namespace

std::vector<std::pair<TrackWord, TrackWord>> parse_lasso_tracks(const std::string& arg, int p) {
    std::vector<std::string> parts;
    size_t begin = 0;
    for (size_t i = 0; i <= arg.size(); ++i)
        if (i == arg.size() || arg[i] == '|') {
            parts.push_back(arg.substr(begin, i - begin));
            begin = i + 1;
        }
    std::vector<std::pair<TrackWord, TrackWord>> out;
    for (size_t i = 0; i < parts.size(); ++i) {
        const std::string& part = parts[i];
        auto caret = part.find("^w");
        if (caret != std::string::npos) {
            if (caret + 2 != part.size())
                throw Error("junk after ^w in lasso track: " + part);
            std::string head = part.substr(0, caret);
            std::string prefix, loop;
            if (!head.empty() && head.back() == ')') {
                auto open = head.rfind('(');
                if (open == std::string::npos) throw Error("unbalanced ')' in: " + part);
                prefix = head.substr(0, open);
                loop = head.substr(open + 1, head.size() - open - 2);
            } else if (!head.empty()) {
                prefix = head.substr(0, head.size() - 1);
                loop = head.substr(head.size() - 1);
            }
            if (loop.empty()) throw Error("lasso loop must be nonempty: " + part);
            out.emplace_back(lasso_digits(prefix, p), lasso_digits(loop, p));
        } else if (i + 1 < parts.size() && parts[i + 1].find("^w") == std::string::npos) {
            out.emplace_back(lasso_digits(part, p), lasso_digits(parts[i + 1], p));
            ++i;
        } else {
            // bare prefix: extend with zeros
            out.emplace_back(lasso_digits(part, p), TrackWord{0});
        }
    }
    return out;
}

} // namespace autostruct
