#include "autostruct/model_checker.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "autostruct/limits.hpp"

namespace autostruct {

namespace {

// Equality of two elements (2 * tpe tracks): literal string equality, which
// forces equal lengths, so no pad symbol ever occurs.
MultiTrackAutomaton equality_automaton(int p, int tpe) {
    Alphabet al(p, 2 * tpe);
    MultiTrackAutomaton a(al);
    a.add_state(true);
    a.initial = {0};
    SymbolVec sym(2 * tpe);
    struct Rec {
        const Alphabet& al;
        MultiTrackAutomaton& a;
        int tpe, p;
        void go(int coord, SymbolVec& sym) {
            if (coord == tpe) {
                a.add_edge(0, SymbolPattern::concrete(al, sym), 0);
                return;
            }
            for (int d = 0; d < p; ++d) {
                sym[coord] = static_cast<uint8_t>(d);
                sym[tpe + coord] = static_cast<uint8_t>(d);
                go(coord + 1, sym);
            }
        }
    } rec{al, a, tpe, p};
    rec.go(0, sym);
    compact_edges(al, a.edges[0]);
    a.deterministic = true;
    return a;
}

struct Compiler {
    const Presentation& pres;
    int tpe;

    explicit Compiler(const Presentation& p) : pres(p), tpe(p.tracks_per_element) {}

    MultiTrackAutomaton verdict(bool v) const {
        MultiTrackAutomaton a(Alphabet(pres.p, 0));
        a.add_state(v);
        a.initial = {0};
        a.deterministic = true;
        return a;
    }

    void check_track_budget(size_t nvars) const {
        if (static_cast<int>(nvars) > limits().max_element_tracks)
            throw BudgetExceeded("formula needs " + std::to_string(nvars) +
                                 " simultaneous variables; the budget allows " +
                                 std::to_string(limits().max_element_tracks));
    }

    // Embed an automaton over `slots.size()` element slots into a wider
    // automaton over `total` slots, placing slot i at position slots[i]
    // (strictly increasing) and leaving the rest unconstrained.
    MultiTrackAutomaton embed(const MultiTrackAutomaton& a, const std::vector<int>& slots,
                              int total) const {
        MultiTrackAutomaton cur = a;
        int placed = 0; // number of a's tracks already positioned
        size_t next_slot = 0;
        for (int s = 0; s < total; ++s) {
            if (next_slot < slots.size() && slots[next_slot] == s) {
                placed += tpe;
                ++next_slot;
                continue;
            }
            for (int c = 0; c < tpe; ++c) cur = cylindrify(cur, placed + c);
            placed += tpe;
        }
        return cur;
    }

    MultiTrackAutomaton domain_at(int slot, int total) const {
        return embed(pres.domain, {slot}, total);
    }

    // Conjoin the domain constraint on the given slots.
    MultiTrackAutomaton constrain_domain(MultiTrackAutomaton a, const std::vector<int>& slots,
                                         int total) const {
        for (int s : slots) a = combine(a, domain_at(s, total), CombineMode::and_);
        return a;
    }

    // Permute the element slots of a (slot_of[new_slot] = old_slot).
    MultiTrackAutomaton permute_slots(const MultiTrackAutomaton& a,
                                      const std::vector<int>& slot_of) const {
        std::vector<int> perm;
        for (int s : slot_of)
            for (int c = 0; c < tpe; ++c) perm.push_back(s * tpe + c);
        return reorder_tracks(a, perm);
    }

    // Project out one element slot (both coordinate tracks). Minimizing right
    // away keeps the nondeterminism from piling up across nested quantifiers.
    MultiTrackAutomaton project_slot(const MultiTrackAutomaton& a, int slot) const {
        MultiTrackAutomaton cur = a;
        for (int c = tpe - 1; c >= 0; --c) {
            if (cur.alphabet.tracks == 1) {
                // last track: only the verdict survives
                return verdict(!is_empty(cur));
            }
            cur = project(cur, slot * tpe + c);
        }
        return minimize(cur);
    }

    DefinableSet atom(const std::string& rel, const std::vector<std::string>& args) {
        const RelationInfo* info = nullptr;
        MultiTrackAutomaton base;
        int arity;
        if (rel == "=") {
            arity = 2;
            base = equality_automaton(pres.p, tpe);
        } else {
            auto it = pres.relations.find(rel);
            if (it == pres.relations.end()) throw UnknownSymbol("unknown relation '" + rel + "'");
            info = &it->second;
            arity = info->arity;
            if (static_cast<int>(args.size()) != arity)
                throw ArityError("relation '" + rel + "' takes " + std::to_string(arity) +
                                 " arguments");
            base = info->automaton;
        }
        check_track_budget(arity);

        // Slot layout: argument i sits at slot i. Constants become singleton
        // conjuncts, repeated variables synchronous equalities; both kinds of
        // auxiliary slot are projected away afterwards.
        std::vector<int> keep;                 // primary slot per distinct variable
        std::vector<std::string> keep_var;
        std::map<std::string, int> first_slot;
        MultiTrackAutomaton cur = base;
        for (int i = 0; i < arity; ++i) {
            const std::string& a = args[i];
            if (pres.has_constant(a)) {
                MultiTrackAutomaton single =
                    singleton_automaton(Alphabet(pres.p, tpe),
                                        element_tracks(pres, pres.constants.at(a)));
                cur = combine(cur, embed(single, {i}, arity), CombineMode::and_);
            } else if (first_slot.count(a)) {
                MultiTrackAutomaton eq = equality_automaton(pres.p, tpe);
                cur = combine(cur, embed(eq, {first_slot[a], i}, arity), CombineMode::and_);
            } else {
                first_slot[a] = i;
                keep.push_back(i);
                keep_var.push_back(a);
            }
        }
        // Drop auxiliary slots, highest first so indices stay valid.
        std::vector<char> is_kept(arity, 0);
        for (int s : keep) is_kept[s] = 1;
        for (int s = arity - 1; s >= 0; --s)
            if (!is_kept[s]) cur = project_slot(cur, s);
        if (keep.empty()) return DefinableSet{{}, cur};

        // Surviving slots appear in argument order; sort them by name.
        std::vector<int> order(keep.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(),
                  [&](int x, int y) { return keep_var[x] < keep_var[y]; });
        std::vector<std::string> vars;
        for (int i : order) vars.push_back(keep_var[i]);
        return DefinableSet{vars, permute_slots(cur, order)};
    }

    DefinableSet eq(const std::string& l, const std::string& r) {
        bool lc = pres.has_constant(l), rc = pres.has_constant(r);
        if (lc && rc) {
            // closed equation between constants
            bool v = element_tracks(pres, pres.constants.at(l)) ==
                     element_tracks(pres, pres.constants.at(r));
            return DefinableSet{{}, verdict(v)};
        }
        if (!lc && !rc && l == r) {
            // v = v holds on the whole domain
            return DefinableSet{{l}, pres.domain};
        }
        if (lc || rc) {
            const std::string& v = lc ? r : l;
            const std::string& c = lc ? l : r;
            MultiTrackAutomaton single = singleton_automaton(
                Alphabet(pres.p, tpe), element_tracks(pres, pres.constants.at(c)));
            return DefinableSet{{v}, single};
        }
        DefinableSet ds = atom("=", {l, r});
        // Equality alone admits non-canonical pairs; cut to the domain.
        ds.automaton = constrain_domain(std::move(ds.automaton), {0, 1}, 2);
        return ds;
    }

    // Cylindrify ds onto the (sorted) superset `target`. New slots are
    // domain-constrained when `constrain` is set, which keeps unions inside
    // the domain product.
    DefinableSet align(const DefinableSet& ds, const std::vector<std::string>& target,
                       bool constrain) {
        check_track_budget(target.size());
        MultiTrackAutomaton cur = ds.automaton;
        std::vector<int> added;
        size_t have = 0;
        for (size_t s = 0; s < target.size(); ++s) {
            if (have < ds.vars.size() && ds.vars[have] == target[s]) {
                ++have;
                continue;
            }
            for (int c = 0; c < tpe; ++c)
                cur = cylindrify(cur, static_cast<int>(s) * tpe + c);
            added.push_back(static_cast<int>(s));
        }
        if (have != ds.vars.size()) throw Error("variable alignment mismatch");
        if (constrain)
            cur = constrain_domain(std::move(cur), added, static_cast<int>(target.size()));
        return DefinableSet{target, std::move(cur)};
    }

    DefinableSet negate(const DefinableSet& ds) {
        MultiTrackAutomaton comp = complement(ds.automaton);
        std::vector<int> slots;
        for (size_t i = 0; i < ds.vars.size(); ++i) slots.push_back(static_cast<int>(i));
        comp = constrain_domain(std::move(comp), slots, static_cast<int>(ds.vars.size()));
        return DefinableSet{ds.vars, minimize(comp)};
    }

    DefinableSet binary(FKind kind, const DefinableSet& l, const DefinableSet& r) {
        std::vector<std::string> target;
        std::set_union(l.vars.begin(), l.vars.end(), r.vars.begin(), r.vars.end(),
                       std::back_inserter(target));
        bool is_or = kind == FKind::or_;
        DefinableSet la = align(l, target, is_or);
        DefinableSet ra = align(r, target, is_or);
        return DefinableSet{target, combine(la.automaton, ra.automaton,
                                            is_or ? CombineMode::or_ : CombineMode::and_)};
    }

    DefinableSet exists(const std::string& v, const DefinableSet& body) {
        auto it = std::find(body.vars.begin(), body.vars.end(), v);
        if (it == body.vars.end()) return body; // vacuous: the domain is nonempty
        int slot = static_cast<int>(it - body.vars.begin());
        std::vector<std::string> vars = body.vars;
        vars.erase(vars.begin() + slot);
        return DefinableSet{vars, project_slot(body.automaton, slot)};
    }

    DefinableSet rec(const FormulaPtr& f) {
        switch (f->kind) {
            case FKind::atom: return atom(f->name, f->args);
            case FKind::eq: return eq(f->args[0], f->args[1]);
            case FKind::not_: return negate(rec(f->lhs));
            case FKind::and_: return binary(FKind::and_, rec(f->lhs), rec(f->rhs));
            case FKind::or_: return binary(FKind::or_, rec(f->lhs), rec(f->rhs));
            case FKind::implies:
                return binary(FKind::or_, negate(rec(f->lhs)), rec(f->rhs));
            case FKind::exists: return exists(f->name, rec(f->lhs));
            case FKind::forall:
                return rec(make_not(make_exists(f->name, make_not(f->lhs))));
        }
        throw Error("unreachable");
    }
};

FormulaPtr nnf(const FormulaPtr& f, bool neg) {
    switch (f->kind) {
        case FKind::atom:
        case FKind::eq:
            return neg ? make_not(f) : f;
        case FKind::not_:
            return nnf(f->lhs, !neg);
        case FKind::and_:
            return neg ? make_or(nnf(f->lhs, true), nnf(f->rhs, true))
                       : make_and(nnf(f->lhs, false), nnf(f->rhs, false));
        case FKind::or_:
            return neg ? make_and(nnf(f->lhs, true), nnf(f->rhs, true))
                       : make_or(nnf(f->lhs, false), nnf(f->rhs, false));
        case FKind::implies:
            return neg ? make_and(nnf(f->lhs, false), nnf(f->rhs, true))
                       : make_or(nnf(f->lhs, true), nnf(f->rhs, false));
        case FKind::forall:
            return neg ? make_exists(f->name, nnf(f->lhs, true))
                       : make_forall(f->name, nnf(f->lhs, false));
        case FKind::exists:
            return neg ? make_forall(f->name, nnf(f->lhs, true))
                       : make_exists(f->name, nnf(f->lhs, false));
    }
    throw Error("unreachable");
}

void flatten_and(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    if (f->kind == FKind::and_) {
        flatten_and(f->lhs, out);
        flatten_and(f->rhs, out);
    } else {
        out.push_back(f);
    }
}

bool decide_rec(const Presentation& pres, const FormulaPtr& f);

// Existential block over a conjunction: compile the conjuncts separately and
// run the on-the-fly product, never materializing their intersection.
bool decide_exists_block(const Presentation& pres, FormulaPtr f) {
    while (f->kind == FKind::exists) f = f->lhs;
    std::vector<FormulaPtr> conjuncts;
    flatten_and(f, conjuncts);

    Compiler compiler(pres);
    std::vector<DefinableSet> parts;
    std::vector<std::string> vars;
    for (const FormulaPtr& c : conjuncts) {
        parts.push_back(compiler.rec(c));
        std::vector<std::string> merged;
        std::set_union(vars.begin(), vars.end(), parts.back().vars.begin(),
                       parts.back().vars.end(), std::back_inserter(merged));
        vars = std::move(merged);
    }
    compiler.check_track_budget(vars.size());

    const int tpe = pres.tracks_per_element;
    Alphabet global(pres.p, static_cast<int>(vars.size()) * tpe);
    std::vector<MappedAutomaton> comps;
    for (const DefinableSet& ds : parts) {
        MappedAutomaton m;
        m.aut = &ds.automaton;
        for (const std::string& v : ds.vars) {
            int slot = static_cast<int>(
                std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
            for (int c = 0; c < tpe; ++c) m.tracks.push_back(slot * tpe + c);
        }
        comps.push_back(std::move(m));
    }
    return mapped_conjunction_nonempty(global, comps);
}

bool decide_rec(const Presentation& pres, const FormulaPtr& f) {
    switch (f->kind) {
        case FKind::not_:
            return !decide_rec(pres, f->lhs);
        case FKind::and_:
            return decide_rec(pres, f->lhs) && decide_rec(pres, f->rhs);
        case FKind::or_:
            return decide_rec(pres, f->lhs) || decide_rec(pres, f->rhs);
        case FKind::implies:
            return !decide_rec(pres, f->lhs) || decide_rec(pres, f->rhs);
        case FKind::forall:
            return !decide_rec(pres, make_exists(f->name, nnf(f->lhs, true)));
        case FKind::exists:
            return decide_exists_block(pres, f);
        case FKind::atom:
        case FKind::eq:
            return decide_exists_block(pres, f); // closed atom
    }
    throw Error("unreachable");
}

} // namespace

DefinableSet compile(const Presentation& pres, const FormulaPtr& f) {
    // A sentence compiles to its zero-track verdict automaton, and decide()
    // computes that verdict without materializing intermediate products, so
    // quantifier-heavy sentences stay within budget on this path too.
    if (free_vars(pres, f).empty()) {
        Compiler compiler(pres);
        return DefinableSet{{}, compiler.verdict(decide_rec(pres, nnf(f, false)))};
    }
    Compiler compiler(pres);
    return compiler.rec(f);
}

bool decide(const Presentation& pres, const FormulaPtr& f) {
    if (!free_vars(pres, f).empty())
        throw NotASentence("formula has free variables: " + to_string(f));
    return decide_rec(pres, nnf(f, false));
}

bool decide(const Presentation& pres, const std::string& sentence) {
    return decide(pres, parse_formula(pres, sentence));
}

Presentation register_predicate(const Presentation& pres, const std::string& name,
                                const DefinableSet& ds) {
    if (pres.has_relation(name) || pres.has_constant(name))
        throw DuplicateName("name '" + name + "' is already in the signature");
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
        throw BadGenerator("predicate names start with a letter");
    if (ds.automaton.alphabet.p != pres.p ||
        ds.automaton.alphabet.tracks !=
            static_cast<int>(ds.vars.size()) * pres.tracks_per_element)
        throw AlphabetMismatch("definable set does not fit this presentation");
    Presentation ext = pres;
    ext.relations[name] = RelationInfo{static_cast<int>(ds.vars.size()), ds.automaton};
    return ext;
}

} // namespace autostruct
