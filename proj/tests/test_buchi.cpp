#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "autostruct/buchi.hpp"

using namespace autostruct;

namespace {

uint32_t rng_state = 11;
uint32_t rnd() { return rng_state = rng_state * 1664525u + 1013904223u; }

LassoWord lasso_from_specs(const Alphabet& al, const std::vector<std::string>& specs, int p) {
    std::vector<std::pair<TrackWord, TrackWord>> per_track;
    for (const auto& s : specs)
        for (auto& tr : parse_lasso_tracks(s, p)) per_track.push_back(tr);
    return align_lassos(al, per_track);
}

// Büchi automaton over one track: "digit d occurs infinitely often".
BuchiAutomaton infinitely_often(int p, int d) {
    BuchiAutomaton b(Alphabet(p, 1));
    StateId wait = b.add_state(false);
    StateId hit = b.add_state(true);
    b.initial = {wait};
    for (int v = 0; v < p; ++v) {
        StateId dst = v == d ? hit : wait;
        b.add_edge(wait, SymbolPattern::concrete(b.alphabet, {uint8_t(v)}), dst);
        b.add_edge(hit, SymbolPattern::concrete(b.alphabet, {uint8_t(v)}), dst);
    }
    b.deterministic = true;
    return b;
}

LassoWord random_lasso(int p, int tracks) {
    LassoWord w;
    int pre = rnd() % 3, loop = 1 + rnd() % 3;
    for (int i = 0; i < pre; ++i) {
        SymbolVec sym(tracks);
        for (auto& v : sym) v = uint8_t(rnd() % p);
        w.prefix.push_back(sym);
    }
    for (int i = 0; i < loop; ++i) {
        SymbolVec sym(tracks);
        for (auto& v : sym) v = uint8_t(rnd() % p);
        w.loop.push_back(sym);
    }
    return w;
}

} // namespace

TEST_CASE("hp-hat multiplication accepts the sample lassos") {
    auto mul = make_hp_hat_mul(3);
    CHECK(mul.deterministic);
    for (StateId s = 0; s < mul.num_states; ++s) CHECK(mul.is_accepting(s)); // pure safety

    // X * X with every generator appearing once: gamma ticks 0,1,2,0,...
    auto good = lasso_from_specs(mul.alphabet, {"1^w|0^w", "1^w|0^w", "2^w|(012)^w"}, 3);
    CHECK(accepts_lasso(mul, good));

    // identity law
    auto idl = lasso_from_specs(mul.alphabet, {"0^w|0^w", "1^w|0^w", "1^w|0^w"}, 3);
    CHECK(accepts_lasso(mul, idl));

    // zeroing the result's z coordinates breaks the second position
    auto bad = lasso_from_specs(mul.alphabet, {"1^w|0^w", "1^w|0^w", "2^w|0^w"}, 3);
    CHECK_FALSE(accepts_lasso(mul, bad));
}

TEST_CASE("lasso verdicts are stable under unrolling and rotation") {
    auto mul = make_hp_hat_mul(3);
    for (int i = 0; i < 25; ++i) {
        LassoWord w = random_lasso(3, 6);
        bool base = accepts_lasso(mul, w);

        LassoWord doubled = w;
        doubled.loop.insert(doubled.loop.end(), w.loop.begin(), w.loop.end());
        CHECK(accepts_lasso(mul, doubled) == base);

        LassoWord shifted = w;
        shifted.prefix.insert(shifted.prefix.end(), w.loop.begin(), w.loop.end());
        CHECK(accepts_lasso(mul, shifted) == base);
    }
}

TEST_CASE("intersection matches running both automata") {
    auto a = infinitely_often(3, 1);
    auto b = infinitely_often(3, 2);
    auto both = intersect(a, b);
    for (int i = 0; i < 20; ++i) {
        LassoWord w = random_lasso(3, 1);
        CHECK(accepts_lasso(both, w) == (accepts_lasso(a, w) && accepts_lasso(b, w)));
    }

    BuchiAutomaton none(Alphabet(3, 1));
    none.add_state(false);
    none.initial = {0};
    CHECK(is_empty_buchi(intersect(a, none)));

    auto mul = make_hp_hat_mul(3);
    auto self = intersect(mul, mul);
    for (int i = 0; i < 10; ++i) {
        LassoWord w = random_lasso(3, 6);
        CHECK(accepts_lasso(self, w) == accepts_lasso(mul, w));
    }
}

TEST_CASE("buchi emptiness and witnesses") {
    auto mul = make_hp_hat_mul(3);
    CHECK_FALSE(is_empty_buchi(mul));
    LassoWord w = buchi_witness(mul).value();
    CHECK(accepts_lasso(mul, w)); // self-consistency

    // accepting state unreachable
    BuchiAutomaton unreachable(Alphabet(3, 1));
    unreachable.add_state(false);
    unreachable.add_state(true);
    unreachable.initial = {0};
    unreachable.add_edge(0, SymbolPattern::concrete(unreachable.alphabet, {0}), 0);
    CHECK(is_empty_buchi(unreachable));

    // accepting state reachable but not on a cycle
    BuchiAutomaton acyclic(Alphabet(3, 1));
    acyclic.add_state(false);
    acyclic.add_state(true);
    acyclic.initial = {0};
    acyclic.add_edge(0, SymbolPattern::concrete(acyclic.alphabet, {1}), 1);
    CHECK(is_empty_buchi(acyclic));
}

TEST_CASE("finite embedding agrees with the finite relation") {
    auto hp = make_hp(3);
    auto mul = make_hp_hat_mul(3);

    std::string x0 = "1|0", x1 = "01|00";
    CHECK(finite_embedding_check(hp, mul, x1, x0, mul_elements(hp, x1, x0)));
    CHECK(finite_embedding_check(hp, mul, "e", "e", "e"));
    // x_0 * x_0 is x_0^2, not x_0^2 x_1
    std::string claim = "21|00";
    CHECK_FALSE(finite_embedding_check(hp, mul, x0, x0, claim));
    const auto& M = hp.relations.at("M").automaton;
    CHECK_FALSE(accepts(M, {TrackWord{1}, TrackWord{0}, TrackWord{1}, TrackWord{0},
                            TrackWord{2, 1}, TrackWord{0, 0}}));

    // small sweep: the finite verdict transfers to the zero extension
    std::vector<std::string> elems{"e", "1|0", "2|0", "01|00", "11|01", "00|01"};
    for (const auto& g : elems)
        for (const auto& h : elems) {
            std::string prod = mul_elements(hp, g, h);
            CHECK(finite_embedding_check(hp, mul, g, h, prod));
            std::string wrong = mul_elements(hp, prod, "1|0");
            CHECK_FALSE(finite_embedding_check(hp, mul, g, h, wrong));
        }
}

TEST_CASE("agreement over generator words up to length four") {
    auto hp = make_hp(3);
    auto mul = make_hp_hat_mul(3);
    const auto& M = hp.relations.at("M").automaton;

    std::set<std::string> elems;
    std::vector<GeneratorWord> words{{}};
    size_t begin = 0;
    for (int len = 1; len <= 4; ++len) {
        size_t end = words.size();
        for (size_t i = begin; i < end; ++i)
            for (int g = 0; g < 4; ++g) {
                GeneratorWord w = words[i];
                w.push_back({GeneratorRef{'x', g}, 1});
                words.push_back(w);
            }
        begin = end;
    }
    for (const auto& w : words) elems.insert(encode(hp, w));

    // Per pair, compare verdicts on both the true product and a perturbation.
    for (const auto& g : elems)
        for (const auto& h : elems) {
            std::string prod = mul_elements(hp, g, h);
            std::string wrong = mul_elements(hp, prod, "00|01");
            for (const std::string* c : {&prod, &wrong}) {
                TrackWordTuple tuple;
                for (const std::string* s : {&g, &h, c})
                    for (const auto& tr : element_tracks(hp, *s)) tuple.push_back(tr);
                CHECK(accepts(M, tuple) == finite_embedding_check(hp, mul, g, h, *c));
            }
        }
}

TEST_CASE("hp-hat domain") {
    auto dom = make_hp_hat_domain(3);
    auto z_first = lasso_from_specs(dom.alphabet, {"1^w|(10)^w"}, 3);
    CHECK_FALSE(accepts_lasso(dom, z_first)); // gamma_0 must be 0
    auto fine = lasso_from_specs(dom.alphabet, {"1^w|(01)^w"}, 3);
    CHECK(accepts_lasso(dom, fine));
}

TEST_CASE("lasso parsing forms") {
    auto one = parse_lasso_tracks("12|021", 3);
    REQUIRE(one.size() == 1);
    CHECK(one[0].first == TrackWord{1, 2});
    CHECK(one[0].second == TrackWord{0, 2, 1});

    auto sugar = parse_lasso_tracks("1^w|0^w", 3);
    REQUIRE(sugar.size() == 2);
    CHECK(sugar[0].first.empty());
    CHECK(sugar[0].second == TrackWord{1});

    auto mixed = parse_lasso_tracks("12(02)^w|1^w", 3);
    REQUIRE(mixed.size() == 2);
    CHECK(mixed[0].first == TrackWord{1, 2});
    CHECK(mixed[0].second == TrackWord{0, 2});

    CHECK_THROWS_AS(parse_lasso_tracks("(", 3), Error);

    auto empty_loop = parse_lasso_tracks("12|", 3);
    CHECK_THROWS_AS(align_lassos(Alphabet(3, 1), empty_loop), Error);
}
