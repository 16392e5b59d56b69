#pragma once

#include <map>
#include <string>
#include <vector>

#include "autostruct/automaton.hpp"
#include "autostruct/nil2.hpp"

namespace autostruct {

enum class GroupKind { fp, gp, hp, custom };

// A word in the abstract generators: x_i for every group, u for G_p, z_k
// (k >= 1) for H_p. Exponents are reduced mod p when evaluated.
struct GeneratorRef {
    char kind = 'x'; // 'x', 'u' or 'z'
    int index = 0;
};
using GeneratorWord = std::vector<std::pair<GeneratorRef, int>>;

GeneratorWord generator_word_from_string(const std::string& text);
std::string to_string(const GeneratorWord& w);

struct RelationInfo {
    int arity = 0;
    MultiTrackAutomaton automaton; // arity * tracks_per_element digit tracks
};

// A word-automatic presentation: canonical string encodings for the domain,
// relation automata reading element tuples synchronously, plus codecs and
// direct element arithmetic. Canonical encodings make equality literal
// string equality. Immutable after construction.
struct Presentation {
    std::string name;
    GroupKind kind = GroupKind::custom;
    int p = 3;
    int tracks_per_element = 1;
    MultiTrackAutomaton domain; // tracks_per_element digit tracks
    std::map<std::string, RelationInfo> relations; // always M/3; inv/2 for built groups
    std::map<std::string, std::string> constants;  // name -> canonical element string

    Alphabet element_alphabet(int arity) const {
        return Alphabet(p, arity * tracks_per_element);
    }
    bool has_constant(const std::string& n) const { return constants.count(n) != 0; }
    bool has_relation(const std::string& n) const { return relations.count(n) != 0; }
};

// Elementary abelian group of exponent p and infinite rank. Digit strings
// with no trailing zero; the empty string encodes the identity; addition is
// componentwise mod p.
Presentation make_elem_abelian(int p);

// Central extension of the infinite elementary abelian group by a single
// central generator u of order p (extraspecial shape). Encoding: c . alpha
// maps to the string c a_0 a_1 ..., canonical iff length 1 or the last
// digit is nonzero; "0" encodes the identity. p must be an odd prime.
Presentation make_gp(int p);

// Central extension with one central generator z_k per index k >= 1.
// Encoding: two synchronized digit tracks (alpha_k, gamma_k) with gamma_0
// forced to 0; canonical iff empty or the last pair is nonzero. p odd.
Presentation make_hp(int p);

// Element arithmetic on canonical strings. Inputs must lie in the domain.
std::string mul_elements(const Presentation& pres, const std::string& g, const std::string& h);
std::string inverse(const Presentation& pres, const std::string& g);
std::string power(const Presentation& pres, const std::string& g, long n);
std::string commutator(const Presentation& pres, const std::string& g, const std::string& h);

std::string encode(const Presentation& pres, const GeneratorWord& w);
GeneratorWord decode(const Presentation& pres, const std::string& s);

// Canonical strings <-> track tuples (one track per coordinate).
TrackWordTuple element_tracks(const Presentation& pres, const std::string& s);
std::string element_string(const Presentation& pres, const TrackWordTuple& tracks);

// Where the free central generators y_{i,k} land under a quotient map:
// collapsed to powers of u, graded onto z_k, or kept free.
struct StructureConstants {
    enum class Target { free_y, central_u, graded_z };
    Target target = Target::free_y;

    static StructureConstants for_presentation(const Presentation& pres);
};

// Image of an oracle normal form in the presentation's encoding; the map is
// a homomorphism, making the oracle the ground truth for the automata.
std::string quotient(const Nil2Element& g, const StructureConstants& sc,
                     const Presentation& pres);

// Evaluate a word over the x generators in the free class-2 group.
Nil2Element nil2_from_generator_word(int p, const GeneratorWord& w);

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};
struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

// Group-law suite over the presentation's automata: totality, functionality,
// identity, inverses, associativity (the seven-variable sentence), exponent
// p, the class-2 law, commutativity (expected to fail off the abelian
// baseline) and the commutator spot checks against the symbolic oracle.
VerifyReport verify_presentation(const Presentation& pres);

} // namespace autostruct
