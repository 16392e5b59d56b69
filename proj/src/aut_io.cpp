#include "autostruct/aut_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "autostruct/buchi.hpp"

namespace autostruct {

namespace {

std::string symbol_to_text(const Alphabet& al, const SymbolVec& sym) {
    std::string s = "(";
    for (int t = 0; t < al.tracks; ++t) {
        if (t) s.push_back(',');
        s.push_back(sym[t] == al.pad() ? '_' : digit_to_char(sym[t]));
    }
    s.push_back(')');
    return s;
}

void expand_pattern(const Alphabet& al, const SymbolPattern& pat, int t, SymbolVec& sym,
                    std::vector<SymbolVec>& out) {
    if (t == al.tracks) {
        out.push_back(sym);
        return;
    }
    for (int v = 0; v <= al.p; ++v)
        if (pat.m[t] & digit_bit(v)) {
            sym[t] = static_cast<uint8_t>(v);
            expand_pattern(al, pat, t + 1, sym, out);
        }
}

// Concrete (symbol, dst) list of a state, sorted; drives both BFS renumbering
// and the emitted trans lines.
std::vector<std::pair<SymbolVec, StateId>> concrete_edges(const MultiTrackAutomaton& a,
                                                          StateId s) {
    std::vector<std::pair<SymbolVec, StateId>> out;
    SymbolVec sym(a.alphabet.tracks);
    std::vector<SymbolVec> expanded;
    uint64_t total = 0;
    for (const Edge& e : a.edges[s]) {
        total += e.pat.size(a.alphabet);
        if (total > 2'000'000)
            throw BudgetExceeded("automaton too dense for the textual format");
        expanded.clear();
        expand_pattern(a.alphabet, e.pat, 0, sym, expanded);
        for (const SymbolVec& v : expanded) out.emplace_back(v, e.dst);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

template <typename A>
std::string serialize(const A& a, bool buchi) {
    // Renumber breadth-first over concrete symbol order.
    std::vector<StateId> order;
    std::vector<StateId> newid(a.num_states, UINT32_MAX);
    std::vector<StateId> init = a.initial;
    std::sort(init.begin(), init.end());
    std::vector<StateId> queue;
    for (StateId s : init)
        if (newid[s] == UINT32_MAX) {
            newid[s] = static_cast<StateId>(order.size());
            order.push_back(s);
            queue.push_back(s);
        }
    MultiTrackAutomaton view(a.alphabet);
    view.num_states = a.num_states;
    view.accepting.assign(a.accepting.begin(), a.accepting.end());
    view.edges = a.edges;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        StateId s = queue[qi];
        for (const auto& [sym, dst] : concrete_edges(view, s))
            if (newid[dst] == UINT32_MAX) {
                newid[dst] = static_cast<StateId>(order.size());
                order.push_back(dst);
                queue.push_back(dst);
            }
    }

    std::ostringstream out;
    if (buchi) out << "kind buchi\n";
    out << "p " << a.alphabet.p << "\n";
    out << "tracks " << a.alphabet.tracks << "\n";
    out << "states " << order.size() << "\n";
    out << "initial";
    for (StateId s : init) out << ' ' << newid[s];
    out << "\n";
    std::vector<StateId> acc;
    for (StateId s : order)
        if (a.is_accepting(s)) acc.push_back(newid[s]);
    std::sort(acc.begin(), acc.end());
    out << "accepting";
    for (StateId s : acc) out << ' ' << s;
    out << "\n";
    for (StateId s : order)
        for (const auto& [sym, dst] : concrete_edges(view, s))
            if (newid[dst] != UINT32_MAX)
                out << "trans " << newid[s] << ' ' << symbol_to_text(a.alphabet, sym) << ' '
                    << newid[dst] << "\n";
    return out.str();
}

struct LineLexer {
    std::istringstream in;
    int lineno = 0;
    std::vector<std::string> fields;

    explicit LineLexer(const std::string& text) : in(text) {}

    bool next() {
        std::string line;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            fields.clear();
            std::istringstream ls(line);
            std::string f;
            while (ls >> f) fields.push_back(f);
            if (!fields.empty()) return true;
        }
        return false;
    }
};

long parse_int(const std::string& s, const LineLexer& lx) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw AutParseError("expected integer, got '" + s + "'", lx.lineno);
    }
}

SymbolVec parse_symbol(const std::string& s, const Alphabet& al, const LineLexer& lx) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw AutParseError("expected symbol tuple, got '" + s + "'", lx.lineno);
    SymbolVec sym;
    for (size_t i = 1; i < s.size() - 1; ++i) {
        char c = s[i];
        if (c == ',') continue;
        if (c == '_') {
            sym.push_back(al.pad());
            continue;
        }
        int d = char_to_digit(c);
        if (d < 0 || d >= al.p)
            throw AutParseError(std::string("bad digit '") + c + "'", lx.lineno);
        sym.push_back(static_cast<uint8_t>(d));
    }
    if (static_cast<int>(sym.size()) != al.tracks)
        throw AutParseError("symbol has " + std::to_string(sym.size()) + " tracks, expected " +
                            std::to_string(al.tracks), lx.lineno);
    bool all_pad = al.tracks > 0;
    for (uint8_t v : sym) all_pad = all_pad && v == al.pad();
    if (all_pad) throw AutParseError("the all-pad symbol cannot occur in a word", lx.lineno);
    return sym;
}

struct ParsedAut {
    bool buchi = false;
    Alphabet alphabet;
    StateId num_states = 0;
    std::vector<StateId> initial;
    std::vector<StateId> accepting;
    std::vector<std::tuple<StateId, SymbolVec, StateId>> trans;
};

ParsedAut parse(const std::string& text) {
    ParsedAut out;
    LineLexer lx(text);
    int p = -1, tracks = -1;
    long states = -1;
    bool saw_initial = false, saw_accepting = false;
    auto need_alphabet = [&]() {
        if (p < 0 || tracks < 0)
            throw AutParseError("p and tracks must precede this directive", lx.lineno);
    };
    auto check_state = [&](long s) {
        if (states < 0) throw AutParseError("states must precede this directive", lx.lineno);
        if (s < 0 || s >= states)
            throw AutParseError("state " + std::to_string(s) + " out of range", lx.lineno);
        return static_cast<StateId>(s);
    };
    while (lx.next()) {
        const std::string& kw = lx.fields[0];
        if (kw == "kind") {
            if (lx.fields.size() != 2 || lx.fields[1] != "buchi")
                throw AutParseError("unknown kind", lx.lineno);
            out.buchi = true;
        } else if (kw == "p") {
            if (lx.fields.size() != 2) throw AutParseError("p takes one value", lx.lineno);
            p = static_cast<int>(parse_int(lx.fields[1], lx));
            if (!is_prime(p)) throw AutParseError("p must be prime", lx.lineno);
        } else if (kw == "tracks") {
            if (lx.fields.size() != 2) throw AutParseError("tracks takes one value", lx.lineno);
            tracks = static_cast<int>(parse_int(lx.fields[1], lx));
        } else if (kw == "states") {
            if (lx.fields.size() != 2) throw AutParseError("states takes one value", lx.lineno);
            states = parse_int(lx.fields[1], lx);
            if (states < 0) throw AutParseError("negative state count", lx.lineno);
            out.num_states = static_cast<StateId>(states);
        } else if (kw == "initial") {
            saw_initial = true;
            for (size_t i = 1; i < lx.fields.size(); ++i)
                out.initial.push_back(check_state(parse_int(lx.fields[i], lx)));
        } else if (kw == "accepting") {
            saw_accepting = true;
            for (size_t i = 1; i < lx.fields.size(); ++i)
                out.accepting.push_back(check_state(parse_int(lx.fields[i], lx)));
        } else if (kw == "trans") {
            need_alphabet();
            if (lx.fields.size() != 4)
                throw AutParseError("trans takes: src (symbol) dst", lx.lineno);
            out.alphabet = Alphabet(p, tracks);
            StateId src = check_state(parse_int(lx.fields[1], lx));
            SymbolVec sym = parse_symbol(lx.fields[2], out.alphabet, lx);
            StateId dst = check_state(parse_int(lx.fields[3], lx));
            out.trans.emplace_back(src, sym, dst);
        } else {
            throw AutParseError("unknown directive '" + kw + "'", lx.lineno);
        }
    }
    if (p < 0 || tracks < 0 || states < 0)
        throw AutParseError("missing p/tracks/states header", lx.lineno);
    if (!saw_initial || !saw_accepting)
        throw AutParseError("missing initial or accepting line", lx.lineno);
    out.alphabet = Alphabet(p, tracks);
    return out;
}

template <typename A>
void fill(A& a, const ParsedAut& in) {
    for (StateId s = 0; s < in.num_states; ++s) a.add_state(false);
    for (StateId s : in.accepting) a.accepting[s] = 1;
    a.initial = in.initial;
    std::sort(a.initial.begin(), a.initial.end());
    a.initial.erase(std::unique(a.initial.begin(), a.initial.end()), a.initial.end());
    bool det = a.initial.size() == 1;
    std::map<std::pair<StateId, SymbolVec>, StateId> seen;
    for (const auto& [src, sym, dst] : in.trans) {
        auto [it, fresh] = seen.emplace(std::make_pair(src, sym), dst);
        if (!fresh && it->second != dst) det = false;
        if (fresh) a.add_edge(src, SymbolPattern::concrete(a.alphabet, sym), dst);
    }
    for (auto& list : a.edges) compact_edges(a.alphabet, list);
    a.deterministic = det;
}

template <typename A>
std::string dot_impl(const A& a, const std::string& name, bool buchi) {
    std::ostringstream out;
    out << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
    out << "  init [shape=point];\n";
    for (StateId s = 0; s < a.num_states; ++s)
        if (a.is_accepting(s)) out << "  q" << s << " [shape=doublecircle];\n";
    for (StateId s : a.initial) out << "  init -> q" << s << ";\n";
    for (StateId s = 0; s < a.num_states; ++s)
        for (const Edge& e : a.edges[s]) {
            out << "  q" << s << " -> q" << e.dst << " [label=\"";
            for (int t = 0; t < a.alphabet.tracks; ++t) {
                if (t) out << ',';
                TrackMask m = e.pat.m[t];
                if (m == any_mask(a.alphabet.p)) {
                    out << '*';
                } else if (m == any_digit_mask(a.alphabet.p)) {
                    out << 'd';
                } else {
                    int count = __builtin_popcount(m);
                    if (count > 1) out << '[';
                    for (int v = 0; v <= a.alphabet.p; ++v)
                        if (m & digit_bit(v)) out << (v == a.alphabet.p ? '_' : digit_to_char(v));
                    if (count > 1) out << ']';
                }
            }
            out << "\"];\n";
        }
    (void)buchi;
    out << "}\n";
    return out.str();
}

} // namespace

std::string to_aut_text(const MultiTrackAutomaton& a) { return serialize(a, false); }
std::string to_baut_text(const BuchiAutomaton& b) { return serialize(b, true); }

MultiTrackAutomaton automaton_from_aut_text(const std::string& text) {
    ParsedAut in = parse(text);
    if (in.buchi) throw AutParseError("expected a finite-word automaton, got kind buchi", 1);
    MultiTrackAutomaton a(in.alphabet);
    fill(a, in);
    a.validate();
    return a;
}

BuchiAutomaton buchi_from_aut_text(const std::string& text) {
    ParsedAut in = parse(text);
    if (!in.buchi) throw AutParseError("expected kind buchi", 1);
    BuchiAutomaton b(in.alphabet);
    fill(b, in);
    for (const auto& [src, sym, dst] : in.trans)
        for (uint8_t v : sym)
            if (v == in.alphabet.pad()) throw AutParseError("pad symbol in buchi automaton", 1);
    return b;
}

std::string to_dot(const MultiTrackAutomaton& a, const std::string& name) {
    return dot_impl(a, name, false);
}
std::string to_dot(const BuchiAutomaton& b, const std::string& name) {
    return dot_impl(b, name, true);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

} // namespace autostruct
