#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "autostruct/automaton.hpp"
#include "autostruct/builder.hpp"
#include "autostruct/limits.hpp"

using namespace autostruct;

namespace {

TrackWord W(const std::string& s) { return track_word_from_string(s, 13); }

// Nonempty digit strings whose last digit is nonzero.
MultiTrackAutomaton last_digit_nonzero(int p) {
    Alphabet al(p, 1);
    auto step = [](const int& st, const SymbolVec& sym) -> std::optional<int> {
        (void)st;
        return sym[0] ? 1 : 2;
    };
    auto accept = [](const int& st) { return st == 1; };
    return build_dfa(al, 0, step, accept);
}

// Words of length at most n.
MultiTrackAutomaton length_at_most(int p, int n) {
    Alphabet al(p, 1);
    auto step = [n](const int& st, const SymbolVec& sym) -> std::optional<int> {
        (void)sym;
        if (st == n) return std::nullopt;
        return st + 1;
    };
    auto accept = [](const int&) { return true; };
    return build_dfa(al, 0, step, accept);
}

// Componentwise equality of two tracks.
MultiTrackAutomaton equal_tracks(int p) {
    Alphabet al(p, 2);
    MultiTrackAutomaton a(al);
    a.add_state(true);
    a.initial = {0};
    for (int d = 0; d < p; ++d)
        a.add_edge(0, SymbolPattern::concrete(al, SymbolVec{uint8_t(d), uint8_t(d)}), 0);
    a.deterministic = true;
    return a;
}

// All 1-track digit words of length <= max_len.
std::vector<TrackWord> all_words(int p, int max_len) {
    std::vector<TrackWord> out{{}};
    size_t begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        size_t end = out.size();
        for (size_t i = begin; i < end; ++i)
            for (int d = 0; d < p; ++d) {
                TrackWord w = out[i];
                w.push_back(uint8_t(d));
                out.push_back(w);
            }
        begin = end;
    }
    return out;
}

} // namespace

TEST_CASE("alphabets validate the modulus") {
    CHECK_THROWS_AS(Alphabet(4, 1), NotPrime);
    CHECK_THROWS_AS(Alphabet(1, 1), NotPrime);
    CHECK(Alphabet(2, 1).pad() == 2);
    CHECK_THROWS_AS(Alphabet(3, 17), TrackOutOfRange);
}

TEST_CASE("convolution pads shorter tracks") {
    Alphabet al(3, 2);
    auto word = convolve(al, {W("12"), W("2")});
    REQUIRE(word.size() == 2);
    CHECK(word[0] == SymbolVec{1, 2});
    CHECK(word[1] == SymbolVec{2, al.pad()});

    CHECK(convolve(al, {W(""), W("")}).empty());
    CHECK_THROWS_AS(convolve(al, {W("3"), W("")}), InvalidDigit);

    Alphabet al3(3, 3);
    TrackWordTuple tuple{W("102"), W("21"), W("1")};
    CHECK(deconvolve(al3, convolve(al3, tuple)) == tuple);
}

TEST_CASE("convolution round-trips random tuples") {
    for (int p : {2, 3}) {
        uint32_t seed = 12345;
        auto rnd = [&]() { return seed = seed * 1664525u + 1013904223u; };
        for (int it = 0; it < 50; ++it) {
            int tracks = 1 + rnd() % 3;
            Alphabet al(p, tracks);
            TrackWordTuple tuple(tracks);
            for (auto& w : tuple) {
                int len = rnd() % 5;
                for (int i = 0; i < len; ++i) w.push_back(uint8_t(rnd() % p));
            }
            CHECK(deconvolve(al, convolve(al, tuple)) == tuple);
        }
    }
}

TEST_CASE("combine on the two sample recognizers") {
    auto A = last_digit_nonzero(3);
    auto B = length_at_most(3, 1);

    CHECK(equivalent(combine(A, A, CombineMode::and_), A));
    CHECK_THROWS_AS(combine(A, last_digit_nonzero(5), CombineMode::and_), AlphabetMismatch);

    auto both = combine(A, B, CombineMode::and_);
    std::set<TrackWord> got;
    for (const auto& w : all_words(3, 2))
        if (accepts(both, {w})) got.insert(w);
    CHECK(got == std::set<TrackWord>{W("1"), W("2")});

    auto diff = combine(A, B, CombineMode::and_not);
    CHECK_FALSE(accepts(diff, {W("1")}));
    CHECK(accepts(diff, {W("21")}));
}

TEST_CASE("complement is an involution relative to valid convolutions") {
    auto A = last_digit_nonzero(3);
    CHECK(equivalent(complement(complement(A)), A));

    Alphabet al(3, 1);
    CHECK(equivalent(complement(empty_automaton(al)), valid_convolutions(al)));

    auto comp = complement(A);
    for (const auto& w : all_words(3, 4))
        CHECK(accepts(A, {w}) != accepts(comp, {w})); // 121 words
}

TEST_CASE("projection") {
    auto E = equal_tracks(3);
    auto proj = project(E, 1);
    CHECK(equivalent(proj, valid_convolutions(Alphabet(3, 1))));

    Alphabet al2(3, 2);
    MultiTrackAutomaton none(al2);
    none.add_state(false);
    none.initial = {0};
    CHECK(is_empty(project(none, 0)));

    CHECK_THROWS_AS(project(E, 2), TrackOutOfRange);
    CHECK_THROWS_AS(project(last_digit_nonzero(3), 0), TrackOutOfRange);
}

TEST_CASE("projection saturates padding") {
    // track0 = track1 with an extra digit appended on track 1
    Alphabet al(3, 2);
    auto step = [](const int& st, const SymbolVec& sym) -> std::optional<int> {
        if (st == 0) {
            if (sym[0] != 3 && sym[0] == sym[1]) return 0;     // copy phase
            if (sym[0] == 3 && sym[1] != 3) return 1;          // the overhang digit
            return std::nullopt;
        }
        return std::nullopt;
    };
    auto accept = [](const int& st) { return st == 1; };
    auto a = build_dfa(al, 0, step, accept);
    // Witnesses on track 1 are strictly longer than the remaining track, so
    // acceptance must be saturated back onto the copy phase.
    auto proj = project(a, 1);
    CHECK(accepts(proj, {W("")}));
    CHECK(accepts(proj, {W("12")}));
}

TEST_CASE("project then cylindrify is the identity") {
    for (auto make : {&last_digit_nonzero, &equal_tracks}) {
        auto a = make(3);
        for (int pos = 0; pos <= a.alphabet.tracks; ++pos) {
            auto cyl = cylindrify(a, pos);
            CHECK(equivalent(project(cyl, pos), a));
        }
    }
}

TEST_CASE("determinize and minimize preserve the language") {
    auto A = last_digit_nonzero(3);
    auto U = combine(A, length_at_most(3, 2), CombineMode::or_); // honest NFA
    auto D = determinize(U);
    auto M = minimize(D);
    CHECK(D.deterministic);
    auto already = determinize(A); // deterministic input passes through
    for (const auto& w : all_words(3, 5)) {
        bool want = accepts(U, {w});
        CHECK(accepts(D, {w}) == want);
        CHECK(accepts(M, {w}) == want);
        CHECK(accepts(already, {w}) == accepts(A, {w}));
    }

    auto live = minimize(determinize(A));
    CHECK(live.num_states == 2);

    auto m_empty = minimize(empty_automaton(Alphabet(3, 1)));
    int acc = 0;
    for (StateId s = 0; s < m_empty.num_states; ++s) acc += m_empty.is_accepting(s);
    CHECK(acc == 0);
}

TEST_CASE("emptiness and shortest witnesses") {
    Alphabet al(3, 1);
    CHECK(witness(valid_convolutions(al)).value().empty());
    CHECK(!witness(empty_automaton(al)).has_value());
    CHECK(is_empty(empty_automaton(al)));

    auto A = last_digit_nonzero(3);
    auto w = witness(A).value();
    REQUIRE(w.size() == 1);
    CHECK(w[0] == SymbolVec{1});

    // no accepted word is shorter, and "1" is the lexicographic least
    for (const auto& word : all_words(3, 4))
        if (accepts(A, {word})) CHECK(word.size() >= 1);
}

TEST_CASE("witness prefers digits over pad") {
    // two shortest words: (1,1) and (1,pad); pad sorts last
    Alphabet al(3, 2);
    MultiTrackAutomaton a(al);
    a.add_state(false);
    a.add_state(true);
    a.initial = {0};
    a.add_edge(0, SymbolPattern::concrete(al, SymbolVec{1, al.pad()}), 1);
    a.add_edge(0, SymbolPattern::concrete(al, SymbolVec{1, 1}), 1);
    auto w = witness(a).value();
    REQUIRE(w.size() == 1);
    CHECK(w[0] == SymbolVec{1, 1});
}

TEST_CASE("equivalence") {
    auto A = last_digit_nonzero(3);
    CHECK(equivalent(A, A));
    CHECK(equivalent(A, minimize(determinize(A))));
    CHECK_FALSE(equivalent(A, complement(A)));
}

TEST_CASE("boolean laws by exhaustive enumeration") {
    for (int p : {2, 3}) {
        auto A = last_digit_nonzero(p);
        auto B = length_at_most(p, 1);
        auto C = complement(length_at_most(p, 2)); // length >= 3

        auto and_ = [](const MultiTrackAutomaton& x, const MultiTrackAutomaton& y) {
            return combine(x, y, CombineMode::and_);
        };
        auto or_ = [](const MultiTrackAutomaton& x, const MultiTrackAutomaton& y) {
            return combine(x, y, CombineMode::or_);
        };

        CHECK(equivalent(complement(and_(A, B)), or_(complement(A), complement(B))));
        CHECK(equivalent(complement(or_(A, B)), and_(complement(A), complement(B))));
        CHECK(equivalent(and_(A, or_(B, C)), or_(and_(A, B), and_(A, C))));
        CHECK(equivalent(complement(complement(A)), A));

        // cross-check the law automata against raw word enumeration
        auto demorgan_l = complement(and_(A, B));
        auto demorgan_r = or_(complement(A), complement(B));
        for (const auto& w : all_words(p, 4))
            CHECK(accepts(demorgan_l, {w}) == accepts(demorgan_r, {w}));
    }
}

TEST_CASE("every accepted word is a valid convolution") {
    Alphabet al(3, 2);
    auto E = equal_tracks(3);
    auto vc = valid_convolutions(al);
    auto junk = combine(E, complement(vc), CombineMode::and_);
    CHECK(is_empty(junk));

    auto cyl = cylindrify(last_digit_nonzero(3), 1);
    CHECK(is_empty(combine(cyl, complement(vc), CombineMode::and_)));
    for (const auto& word : enumerate_accepted(cyl, 3))
        CHECK(accepts_word(vc, word));
}

TEST_CASE("the subset budget trips instead of thrashing") {
    Limits saved = limits();
    limits().max_subset_states = 2;
    auto U = combine(last_digit_nonzero(3), length_at_most(3, 2), CombineMode::or_);
    CHECK_THROWS_AS(determinize(U), BudgetExceeded);
    limits() = saved;
    CHECK(determinize(U).deterministic);
}

TEST_CASE("valid convolution recognizer accepts every tuple") {
    Alphabet al(3, 2);
    auto vc = valid_convolutions(al);
    for (const auto& w0 : all_words(3, 2))
        for (const auto& w1 : all_words(3, 2)) CHECK(accepts(vc, {w0, w1}));
}
