#include "autostruct/nil2.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "autostruct/alphabet.hpp"

namespace autostruct {

namespace {

int norm(int v, int p) {
    v %= p;
    return v < 0 ? v + p : v;
}

void add_a(Nil2Element& g, int i, int v) {
    int nv = norm(g.a.count(i) ? g.a[i] + v : v, g.p);
    if (nv == 0)
        g.a.erase(i);
    else
        g.a[i] = nv;
}

void add_b(Nil2Element& g, int i, int k, int v) {
    auto key = std::make_pair(i, k);
    int nv = norm(g.b.count(key) ? g.b[key] + v : v, g.p);
    if (nv == 0)
        g.b.erase(key);
    else
        g.b[key] = nv;
}

void check_same_p(const Nil2Element& g, const Nil2Element& h) {
    if (g.p != h.p) throw PresentationMismatch("mixed moduli in oracle arithmetic");
}

} // namespace

Nil2Element nil2_identity(int p) {
    if (!is_prime(p)) throw NotPrime("p must be prime, got " + std::to_string(p));
    Nil2Element g;
    g.p = p;
    return g;
}

Nil2Element nil2_generator(int p, int index, int exponent) {
    Nil2Element g = nil2_identity(p);
    if (index < 0) throw BadGenerator("generator index must be nonnegative");
    add_a(g, index, exponent);
    return g;
}

Nil2Element oracle_mul(const Nil2Element& g, const Nil2Element& h) {
    check_same_p(g, h);
    Nil2Element r = g;
    for (const auto& [i, e] : h.a) add_a(r, i, e);
    for (const auto& [ik, e] : h.b) add_b(r, ik.first, ik.second, e);
    // Collection: x_k^{g.a_k} moves right past x_i^{h.a_i} for i < k.
    for (const auto& [k, gk] : g.a)
        for (const auto& [i, hi] : h.a) {
            if (i >= k) break;
            add_b(r, i, k, gk * hi);
        }
    return r;
}

Nil2Element oracle_inverse(const Nil2Element& g) {
    Nil2Element r = nil2_identity(g.p);
    for (const auto& [i, e] : g.a) add_a(r, i, -e);
    // Solve g * r = e in the y part: the collection of g over r adds
    // g.a_k * (-g.a_i), so compensate with a_k a_i - b.
    for (const auto& [ik, e] : g.b) add_b(r, ik.first, ik.second, -e);
    for (const auto& [k, gk] : g.a)
        for (const auto& [i, gi] : g.a) {
            if (i >= k) break;
            add_b(r, i, k, gk * gi);
        }
    return r;
}

Nil2Element oracle_pow(const Nil2Element& g, long n) {
    if (n < 0) throw Error("oracle_pow requires n >= 0");
    Nil2Element acc = nil2_identity(g.p);
    Nil2Element base = g;
    while (n > 0) {
        if (n & 1) acc = oracle_mul(acc, base);
        base = oracle_mul(base, base);
        n >>= 1;
    }
    return acc;
}

Nil2Element oracle_comm(const Nil2Element& g, const Nil2Element& h) {
    return oracle_mul(oracle_mul(oracle_inverse(g), oracle_inverse(h)), oracle_mul(g, h));
}

std::vector<Nil2Element> oracle_enumerate(int p, int max_index, int max_len) {
    constexpr size_t kBudget = 100'000;
    std::set<Nil2Element> seen;
    std::vector<Nil2Element> frontier{nil2_identity(p)};
    seen.insert(frontier[0]);
    for (int len = 0; len < max_len; ++len) {
        std::vector<Nil2Element> next;
        for (const Nil2Element& g : frontier)
            for (int i = 0; i <= max_index; ++i)
                for (int e = 1; e < p; ++e) {
                    Nil2Element ng = oracle_mul(g, nil2_generator(p, i, e));
                    if (seen.insert(ng).second) {
                        if (seen.size() > kBudget)
                            throw BudgetExceeded("oracle enumeration exceeds 100000 elements");
                        next.push_back(std::move(ng));
                    }
                }
        frontier = std::move(next);
    }
    return std::vector<Nil2Element>(seen.begin(), seen.end());
}

std::string to_string(const Nil2Element& g) {
    if (g.is_identity()) return "e";
    std::ostringstream out;
    bool first = true;
    auto sep = [&]() {
        if (!first) out << ' ';
        first = false;
    };
    for (const auto& [i, e] : g.a) {
        sep();
        out << 'x' << i;
        if (e != 1) out << '^' << e;
    }
    for (const auto& [ik, e] : g.b) {
        sep();
        out << "y(" << ik.first << ',' << ik.second << ')';
        if (e != 1) out << '^' << e;
    }
    return out.str();
}

Nil2Element nil2_from_string(int p, const std::string& text) {
    Nil2Element g = nil2_identity(p);
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == "e") continue;
        int exp = 1;
        auto caret = tok.find('^');
        if (caret != std::string::npos) {
            exp = std::stoi(tok.substr(caret + 1));
            tok.erase(caret);
        }
        if (tok.size() >= 2 && tok[0] == 'x') {
            add_a(g, std::stoi(tok.substr(1)), exp);
        } else if (tok.size() >= 6 && tok[0] == 'y' && tok[1] == '(' && tok.back() == ')') {
            std::string inner = tok.substr(2, tok.size() - 3);
            auto comma = inner.find(',');
            if (comma == std::string::npos) throw BadGenerator("bad y term: " + tok);
            int i = std::stoi(inner.substr(0, comma));
            int k = std::stoi(inner.substr(comma + 1));
            if (i >= k) throw BadGenerator("y indices must satisfy i < k: " + tok);
            add_b(g, i, k, exp);
        } else {
            throw BadGenerator("cannot parse term: " + tok);
        }
    }
    return g;
}

} // namespace autostruct
