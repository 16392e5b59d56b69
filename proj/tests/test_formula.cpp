#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "autostruct/formula.hpp"

using namespace autostruct;

TEST_CASE("parsing quantifiers and atoms") {
    auto gp = make_gp(3);
    auto f = parse_formula(gp, "all a. ex b. M(a,b,e)");
    REQUIRE(f->kind == FKind::forall);
    REQUIRE(f->lhs->kind == FKind::exists);
    auto atom = f->lhs->lhs;
    REQUIRE(atom->kind == FKind::atom);
    CHECK(atom->name == "M");
    CHECK(atom->args == std::vector<std::string>{"a", "b", "e"});
    CHECK(free_vars(gp, f).empty());

    auto closed = parse_formula(gp, "all a. a = a");
    CHECK(free_vars(gp, closed).empty());

    auto open = parse_formula(gp, "M(x,y,t) & x = e");
    CHECK(free_vars(gp, open) == std::vector<std::string>{"t", "x", "y"});
}

TEST_CASE("precedence: ! over & over | over ->") {
    auto gp = make_gp(3);
    auto f = parse_formula(gp, "!a = e & b = e | c = e -> d = e");
    // parses as ((!(a=e) & b=e) | c=e) -> d=e
    REQUIRE(f->kind == FKind::implies);
    REQUIRE(f->lhs->kind == FKind::or_);
    REQUIRE(f->lhs->lhs->kind == FKind::and_);
    CHECK(f->lhs->lhs->lhs->kind == FKind::not_);

    auto g = parse_formula(gp, "a = e -> b = e -> c = e"); // right associative
    REQUIRE(g->kind == FKind::implies);
    CHECK(g->rhs->kind == FKind::implies);

    // a quantifier grabs everything to its right
    auto q = parse_formula(gp, "a = e & ex b. M(a,b,e) & b = a");
    REQUIRE(q->kind == FKind::and_);
    CHECK(q->rhs->kind == FKind::exists);
    CHECK(q->rhs->lhs->kind == FKind::and_);
}

TEST_CASE("signature errors") {
    auto gp = make_gp(3);
    CHECK_THROWS_AS(parse_formula(gp, "M(a,b)"), ArityError);
    CHECK_THROWS_AS(parse_formula(gp, "frob(a)"), UnknownSymbol);
    CHECK_THROWS_AS(parse_formula(gp, "all e. M(e,e,e)"), SyntaxError);
    CHECK_THROWS_AS(parse_formula(gp, "all a. all a. M(a,a,e)"), SyntaxError);
    try {
        parse_formula(gp, "all a.\n M(a,,e)");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_formula(gp, "all a. M(a,a,e) extra"), SyntaxError);
}

TEST_CASE("round trip through the printer") {
    auto gp = make_gp(3);
    for (const char* text : {
             "all a. ex b. M(a,b,e)",
             "all a. all b. all c. (M(a,b,c) -> M(b,a,c))",
             "(x = e | !M(x,x,x)) & u = u",
         }) {
        auto f = parse_formula(gp, text);
        auto again = parse_formula(gp, to_string(f));
        CHECK(to_string(again) == to_string(f));
    }
}
