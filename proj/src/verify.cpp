#include <array>
#include <sstream>

#include "autostruct/model_checker.hpp"
#include "autostruct/presentation.hpp"

namespace autostruct {

namespace {

// x^p = e as a multiplication chain: M(a,a,t2), M(t2,a,t3), ..., M(.,a,e).
std::string exponent_sentence(int p) {
    std::ostringstream out;
    out << "all a. ";
    if (p == 2) {
        out << "M(a,a,e)";
        return out.str();
    }
    for (int i = 2; i < p; ++i) out << "ex t" << i << ". ";
    out << "(M(a,a,t2)";
    for (int i = 3; i < p; ++i) out << " & M(t" << i - 1 << ",a,t" << i << ")";
    out << " & M(t" << p - 1 << ",a,e))";
    return out.str();
}

// t = a^-1 b^-1 a b without inverse intermediates: ba * t = ab.
constexpr const char* kCommFormula =
    "ex ab. ex ba. (M(a,b,ab) & M(b,a,ba) & M(ba,t,ab))";

} // namespace

VerifyReport verify_presentation(const Presentation& pres) {
    VerifyReport rep;
    auto run = [&](const std::string& name, const Presentation& on, const std::string& sentence,
                   bool expected) {
        VerifyCheck check;
        check.name = name;
        try {
            bool got = decide(on, sentence);
            check.passed = got == expected;
            check.detail = std::string(got ? "true" : "false") + ", expected " +
                           (expected ? "true" : "false");
        } catch (const Error& e) {
            check.passed = false;
            check.detail = e.what();
        }
        rep.checks.push_back(std::move(check));
    };

    run("totality", pres, "all a. all b. ex c. M(a,b,c)", true);
    run("functionality", pres,
        "all a. all b. all c. all d. ((M(a,b,c) & M(a,b,d)) -> c = d)", true);
    run("identity", pres, "all a. (M(a,e,a) & M(e,a,a))", true);
    run("inverse_exists", pres, "all a. ex b. inv(a,b)", true);
    run("inverse_law", pres, "all a. all b. (inv(a,b) -> (M(a,b,e) & M(b,a,e)))", true);
    run("associativity", pres,
        "all a. all b. all c. all ab. all bc. all r1. all r2. "
        "((M(a,b,ab) & M(ab,c,r1) & M(b,c,bc) & M(a,bc,r2)) -> r1 = r2)",
        true);
    run("exponent_p", pres, exponent_sentence(pres.p), true);

    try {
        Presentation ext =
            register_predicate(pres, "comm", compile(pres, parse_formula(pres, kCommFormula)));
        run("class2_law", ext,
            "all a. all b. all t. all c. all s. ((comm(a,b,t) & M(t,c,s)) -> M(c,t,s))", true);
    } catch (const Error& e) {
        rep.checks.push_back(VerifyCheck{"class2_law", false, e.what()});
    }

    run("commutativity", pres, "all a. all b. all c. (M(a,b,c) -> M(b,a,c))",
        pres.kind == GroupKind::fp);

    // Commutator spot checks against the symbolic oracle: any finite-index
    // normal subgroup contains elements x_r x_k^-1, and their commutators
    // stay nontrivial off the abelian baseline.
    for (auto [k, r, s] : {std::array<int, 3>{0, 1, 2}, std::array<int, 3>{1, 2, 3}}) {
        VerifyCheck check;
        std::ostringstream name;
        name << "spot_check_k" << k << "r" << r << "s" << s;
        check.name = name.str();
        try {
            GeneratorWord wg{{GeneratorRef{'x', r}, 1}, {GeneratorRef{'x', k}, -1}};
            GeneratorWord wh{{GeneratorRef{'x', s}, 1}, {GeneratorRef{'x', k}, -1}};
            std::string got = commutator(pres, encode(pres, wg), encode(pres, wh));
            if (pres.kind == GroupKind::fp) {
                check.passed = got == "e";
                check.detail = "commutator = " + got + ", expected e";
            } else {
                Nil2Element oracle = oracle_comm(nil2_from_generator_word(pres.p, wg),
                                                 nil2_from_generator_word(pres.p, wh));
                std::string want =
                    quotient(oracle, StructureConstants::for_presentation(pres), pres);
                check.passed = got == want && got != "e";
                check.detail = "commutator = " + got + ", oracle = " + want;
            }
        } catch (const Error& e) {
            check.passed = false;
            check.detail = e.what();
        }
        rep.checks.push_back(std::move(check));
    }
    return rep;
}

} // namespace autostruct
