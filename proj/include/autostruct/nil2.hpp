#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "autostruct/errors.hpp"

namespace autostruct {

// Normal form in the free nilpotent-class-2 exponent-p group of infinite
// rank: prod x_i^{a_i} * prod y_{i,k}^{b_{i,k}} with i < k. Exponents are
// kept in 1..p-1 (zero entries removed), so structural equality is group
// equality. Collection convention, fixed repo-wide: multiplying g*h moves
// the x-part of g past the x-part of h, and each swap of x_k (from g) over
// x_i (from h) with i < k emits y_{i,k}^{g.a_k * h.a_i}.
struct Nil2Element {
    int p = 3;
    std::map<int, int> a;                      // x part
    std::map<std::pair<int, int>, int> b;      // y part, keys i < k

    bool operator==(const Nil2Element& o) const { return p == o.p && a == o.a && b == o.b; }
    bool operator!=(const Nil2Element& o) const { return !(*this == o); }
    bool operator<(const Nil2Element& o) const {
        if (a != o.a) return a < o.a;
        return b < o.b;
    }
    bool is_identity() const { return a.empty() && b.empty(); }
};

Nil2Element nil2_identity(int p);
Nil2Element nil2_generator(int p, int index, int exponent = 1); // x_index^exponent

Nil2Element oracle_mul(const Nil2Element& g, const Nil2Element& h);
Nil2Element oracle_inverse(const Nil2Element& g);
Nil2Element oracle_pow(const Nil2Element& g, long n);
// Commutator g^-1 h^-1 g h.
Nil2Element oracle_comm(const Nil2Element& g, const Nil2Element& h);

// All products of at most max_len syllables x_i^e (0 <= i <= max_index,
// 1 <= e < p), deduplicated by normal form. Throws BudgetExceeded past 10^5
// elements.
std::vector<Nil2Element> oracle_enumerate(int p, int max_index, int max_len);

// Debug syntax: "x0^2 x3 y(0,3)^2"; identity prints "e".
std::string to_string(const Nil2Element& g);
Nil2Element nil2_from_string(int p, const std::string& text);

} // namespace autostruct
