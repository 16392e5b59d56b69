#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "autostruct/aut_io.hpp"
#include "autostruct/buchi.hpp"

using namespace autostruct;

namespace {

const char* kSample =
    "p 3\n"
    "tracks 2\n"
    "states 4\n"
    "initial 0\n"
    "accepting 2 3\n"
    "trans 0 (1,_) 2        # pad written as _\n"
    "trans 0 (0,2) 1\n";

} // namespace

TEST_CASE("aut text round trip") {
    auto a = automaton_from_aut_text(kSample);
    CHECK(a.alphabet.p == 3);
    CHECK(a.alphabet.tracks == 2);
    CHECK(a.num_states == 4);
    CHECK(accepts_word(a, {SymbolVec{1, 3}}));
    CHECK_FALSE(accepts_word(a, {SymbolVec{0, 2}}));

    std::string text = to_aut_text(a);
    auto b = automaton_from_aut_text(text);
    CHECK(equivalent(a, b));
    CHECK(to_aut_text(b) == text); // serialization is a fixed point
}

TEST_CASE("parse errors carry line numbers") {
    try {
        automaton_from_aut_text("p 3\ntracks 1\nstates 1\nfrobnicate 1\n");
        FAIL("expected AutParseError");
    } catch (const AutParseError& e) {
        CHECK(e.line == 4);
    }
    CHECK_THROWS_AS(automaton_from_aut_text("p 4\ntracks 1\nstates 1\ninitial 0\naccepting\n"),
                    AutParseError);
    CHECK_THROWS_AS(automaton_from_aut_text("p 3\ntracks 1\nstates 1\ninitial 0\naccepting 0\n"
                                            "trans 0 (7) 0\n"),
                    AutParseError);
    CHECK_THROWS_AS(automaton_from_aut_text("p 3\ntracks 1\nstates 1\ninitial 3\naccepting\n"),
                    AutParseError);
    CHECK_THROWS_AS(automaton_from_aut_text("p 3\ntracks 2\nstates 1\ninitial 0\naccepting 0\n"
                                            "trans 0 (_,_) 0\n"),
                    AutParseError);
}

TEST_CASE("buchi format") {
    BuchiAutomaton b(Alphabet(3, 1));
    b.add_state(true);
    b.add_state(true);
    b.initial = {0};
    b.add_edge(0, SymbolPattern::concrete(b.alphabet, {1}), 1);
    b.add_edge(1, SymbolPattern::concrete(b.alphabet, {2}), 1);
    std::string text = to_baut_text(b);
    CHECK(text.find("kind buchi") == 0);
    auto c = buchi_from_aut_text(text);
    CHECK(c.num_states == 2);
    CHECK(to_baut_text(c) == text);

    CHECK_THROWS_AS(buchi_from_aut_text(kSample), AutParseError); // finite automaton
    CHECK_THROWS_AS(automaton_from_aut_text(text), AutParseError);
}

TEST_CASE("dot export") {
    auto a = automaton_from_aut_text(kSample);
    std::string dot = to_dot(a);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("doublecircle") != std::string::npos);
    CHECK(dot.find("q0 -> q") != std::string::npos);
}
