#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "autostruct/presentation.hpp"

namespace autostruct {

// First-order formulas over a presentation's signature: relation atoms,
// equalities (against variables or constants), the Boolean connectives and
// both quantifiers. No term language; multiplication is the ternary graph
// relation M, so nested products are written with existential intermediates.
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class FKind { atom, eq, not_, and_, or_, implies, forall, exists };

struct Formula {
    FKind kind;
    std::string name;              // atom: relation name; quantifier: bound variable
    std::vector<std::string> args; // atom arguments / eq: {lhs, rhs}
    FormulaPtr lhs, rhs;           // unary uses lhs only; quantifier body in lhs
};

FormulaPtr make_atom(std::string rel, std::vector<std::string> args);
FormulaPtr make_eq(std::string l, std::string r);
FormulaPtr make_not(FormulaPtr f);
FormulaPtr make_and(FormulaPtr l, FormulaPtr r);
FormulaPtr make_or(FormulaPtr l, FormulaPtr r);
FormulaPtr make_implies(FormulaPtr l, FormulaPtr r);
FormulaPtr make_forall(std::string v, FormulaPtr body);
FormulaPtr make_exists(std::string v, FormulaPtr body);

// Grammar (quantifiers scope as far right as possible; precedence
// ! > & > | > ->, implication right-associative):
//   f    := 'all' v '.' f | 'ex' v '.' f | f '->' f | f '|' f | f '&' f
//         | '!' f | '(' f ')' | atom
//   atom := name '(' arg {',' arg} ')' | arg '=' arg
// Identifiers match [a-z][a-z0-9_]*; an identifier names a constant when the
// signature says so, otherwise a variable. Relation arities are checked here.
FormulaPtr parse_formula(const Presentation& pres, const std::string& text);

// Free variables in name order.
std::vector<std::string> free_vars(const Presentation& pres, const FormulaPtr& f);

std::string to_string(const FormulaPtr& f);

} // namespace autostruct
