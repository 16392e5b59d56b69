#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "autostruct/nil2.hpp"

using namespace autostruct;

namespace {

uint32_t rng_state = 2026;
uint32_t rnd() { return rng_state = rng_state * 1664525u + 1013904223u; }

Nil2Element random_element(int p, int max_index) {
    Nil2Element g = nil2_identity(p);
    for (int i = 0; i < 4; ++i)
        g = oracle_mul(g, nil2_generator(p, rnd() % (max_index + 1), 1 + rnd() % (p - 1)));
    return g;
}

} // namespace

TEST_CASE("collection moves emit the y correction") {
    Nil2Element x0 = nil2_generator(3, 0), x1 = nil2_generator(3, 1);

    Nil2Element g = oracle_mul(x1, x0);
    CHECK(g.a == std::map<int, int>{{0, 1}, {1, 1}});
    CHECK(g.b == std::map<std::pair<int, int>, int>{{{0, 1}, 1}});

    CHECK(oracle_mul(g, nil2_identity(3)) == g);
    CHECK(oracle_mul(nil2_identity(3), g) == g);

    Nil2Element h = oracle_mul(x0, x1); // no swap needed
    CHECK(h.b.empty());
    Nil2Element sq = oracle_mul(h, h);
    CHECK(sq.a == std::map<int, int>{{0, 2}, {1, 2}});
    CHECK(sq.b == std::map<std::pair<int, int>, int>{{{0, 1}, 1}});
}

TEST_CASE("inverses") {
    Nil2Element g = oracle_mul(nil2_generator(3, 0), nil2_generator(3, 1)); // x0 x1
    Nil2Element inv = oracle_inverse(g);
    CHECK(inv.a == std::map<int, int>{{0, 2}, {1, 2}});
    CHECK(inv.b == std::map<std::pair<int, int>, int>{{{0, 1}, 1}});
    CHECK(oracle_mul(g, inv).is_identity());
    CHECK(oracle_mul(inv, g).is_identity());
    for (int i = 0; i < 50; ++i) {
        Nil2Element r = random_element(5, 4);
        CHECK(oracle_mul(r, oracle_inverse(r)).is_identity());
    }
}

TEST_CASE("exponent p") {
    for (int i = 0; i < 100; ++i) {
        Nil2Element g = random_element(3, 4);
        CHECK(oracle_pow(g, 3).is_identity());
    }
    Nil2Element g = random_element(5, 3);
    CHECK(oracle_pow(g, 5).is_identity());
    CHECK(oracle_pow(g, 0).is_identity());
}

TEST_CASE("commutators") {
    Nil2Element x0 = nil2_generator(3, 0), x1 = nil2_generator(3, 1);
    Nil2Element c = oracle_comm(x1, x0);
    CHECK(c.a.empty());
    CHECK(c.b == std::map<std::pair<int, int>, int>{{{0, 1}, 1}}); // y_{0,1}

    for (int i = 0; i < 30; ++i) {
        Nil2Element g = random_element(3, 3), h = random_element(3, 3);
        // alternating
        CHECK(oracle_mul(oracle_comm(g, h), oracle_comm(h, g)).is_identity());
        // y elements are central
        Nil2Element central = oracle_comm(g, h);
        central.a.clear();
        CHECK(oracle_comm(central, h).is_identity());
    }
}

TEST_CASE("associativity on random triples") {
    for (int p : {3, 5}) {
        for (int i = 0; i < 500; ++i) {
            Nil2Element a = random_element(p, 4), b = random_element(p, 4),
                        c = random_element(p, 4);
            CHECK(oracle_mul(oracle_mul(a, b), c) == oracle_mul(a, oracle_mul(b, c)));
        }
    }
}

TEST_CASE("enumeration") {
    auto none = oracle_enumerate(3, 3, 0);
    REQUIRE(none.size() == 1);
    CHECK(none[0].is_identity());

    // Words of at most two syllables x_i^e over x_0, x_1 reach 13 normal
    // forms: 9 with trivial y part plus the four x_1^e x_0^f collections.
    auto elems = oracle_enumerate(3, 1, 2);
    CHECK(elems.size() == 13);
    std::set<Nil2Element> dedup(elems.begin(), elems.end());
    CHECK(dedup.size() == elems.size());

    // cross-check against a direct product scan
    std::set<Nil2Element> direct;
    direct.insert(nil2_identity(3));
    std::vector<Nil2Element> syllables;
    for (int i = 0; i <= 1; ++i)
        for (int e = 1; e < 3; ++e) syllables.push_back(nil2_generator(3, i, e));
    for (const auto& s : syllables) {
        direct.insert(s);
        for (const auto& t : syllables) direct.insert(oracle_mul(s, t));
    }
    CHECK(direct == dedup);

    CHECK_THROWS_AS(oracle_enumerate(3, 6, 12), BudgetExceeded);
}

TEST_CASE("printing and parsing") {
    Nil2Element g = nil2_identity(3);
    CHECK(to_string(g) == "e");
    g = oracle_mul(oracle_mul(nil2_generator(3, 0, 2), nil2_generator(3, 3)),
                   nil2_identity(3));
    Nil2Element c = oracle_comm(nil2_generator(3, 3), nil2_generator(3, 0));
    Nil2Element combined = oracle_mul(g, oracle_mul(c, c));
    std::string text = to_string(combined);
    CHECK(text == "x0^2 x3 y(0,3)^2");
    CHECK(nil2_from_string(3, text) == combined);
    CHECK(nil2_from_string(3, "e").is_identity());
    CHECK_THROWS_AS(nil2_from_string(3, "y(3,1)"), BadGenerator);
    CHECK_THROWS_AS(nil2_from_string(3, "q7"), BadGenerator);
}
