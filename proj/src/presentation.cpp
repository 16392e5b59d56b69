#include "autostruct/presentation.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

#include "autostruct/builder.hpp"

namespace autostruct {

namespace {

int dmod(int v, int p) {
    v %= p;
    return v < 0 ? v + p : v;
}

using Digits = std::vector<uint8_t>;

void strip_zeros(Digits& d) {
    while (!d.empty() && d.back() == 0) d.pop_back();
}

uint8_t at(const Digits& d, size_t i) { return i < d.size() ? d[i] : 0; }

// Track statuses shared by the streaming relation machines.
constexpr int8_t kStart = 0; // nothing read (or central digit only, for G_p)
constexpr int8_t kZero = 1;  // alive, last digit/pair was zero
constexpr int8_t kNonzero = 2;
constexpr int8_t kDone = 3;

// --- elementary abelian -----------------------------------------------------

struct FpMulState {
    std::array<int8_t, 3> st{kStart, kStart, kStart};
    auto operator<=>(const FpMulState&) const = default;
};

MultiTrackAutomaton build_fp_mul(int p) {
    Alphabet al(p, 3);
    auto step = [p](const FpMulState& s, const SymbolVec& sym) -> std::optional<FpMulState> {
        FpMulState n = s;
        int d[3];
        for (int t = 0; t < 3; ++t) {
            if (sym[t] == p) {
                if (s.st[t] == kZero) return std::nullopt; // trailing zero
                n.st[t] = kDone;
                d[t] = 0;
            } else {
                if (s.st[t] == kDone) return std::nullopt;
                n.st[t] = sym[t] ? kNonzero : kZero;
                d[t] = sym[t];
            }
        }
        if ((d[0] + d[1]) % p != d[2]) return std::nullopt;
        return n;
    };
    auto accept = [](const FpMulState& s) {
        return s.st[0] != kZero && s.st[1] != kZero && s.st[2] != kZero;
    };
    return build_dfa(al, FpMulState{}, step, accept);
}

struct FpInvState {
    int8_t st = kStart;
    auto operator<=>(const FpInvState&) const = default;
};

MultiTrackAutomaton build_fp_inv(int p) {
    Alphabet al(p, 2);
    auto step = [p](const FpInvState& s, const SymbolVec& sym) -> std::optional<FpInvState> {
        if (sym[0] == p || sym[1] == p) return std::nullopt; // inverse preserves length
        if (sym[1] != dmod(-sym[0], p)) return std::nullopt;
        FpInvState n = s;
        n.st = sym[0] ? kNonzero : kZero;
        return n;
    };
    auto accept = [](const FpInvState& s) { return s.st != kZero; };
    return build_dfa(al, FpInvState{}, step, accept);
}

MultiTrackAutomaton build_fp_domain(int p) {
    Alphabet al(p, 1);
    auto step = [](const FpInvState& s, const SymbolVec& sym) -> std::optional<FpInvState> {
        (void)s;
        FpInvState n;
        n.st = sym[0] ? kNonzero : kZero;
        return n;
    };
    auto accept = [](const FpInvState& s) { return s.st != kZero; };
    return build_dfa(al, FpInvState{}, step, accept);
}

// --- G_p --------------------------------------------------------------------

struct GpMulState {
    int8_t phase = 0; // 0: expecting the central digits
    int8_t delta = 0; // required remaining exponent of u
    int8_t bsum = 0;  // running digit sum of the second factor
    std::array<int8_t, 3> st{kStart, kStart, kStart};
    auto operator<=>(const GpMulState&) const = default;
};

MultiTrackAutomaton build_gp_mul(int p) {
    Alphabet al(p, 3);
    auto step = [p](const GpMulState& s, const SymbolVec& sym) -> std::optional<GpMulState> {
        GpMulState n = s;
        if (s.phase == 0) {
            if (sym[0] == p || sym[1] == p || sym[2] == p) return std::nullopt;
            n.phase = 1;
            n.delta = static_cast<int8_t>(dmod(sym[2] - sym[0] - sym[1], p));
            return n;
        }
        int d[3];
        for (int t = 0; t < 3; ++t) {
            if (sym[t] == p) {
                if (s.st[t] == kZero) return std::nullopt;
                n.st[t] = kDone;
                d[t] = 0;
            } else {
                if (s.st[t] == kDone) return std::nullopt;
                n.st[t] = sym[t] ? kNonzero : kZero;
                d[t] = sym[t];
            }
        }
        if ((d[0] + d[1]) % p != d[2]) return std::nullopt;
        n.delta = static_cast<int8_t>(dmod(s.delta - d[0] * s.bsum, p));
        n.bsum = static_cast<int8_t>((s.bsum + d[1]) % p);
        return n;
    };
    auto accept = [](const GpMulState& s) {
        return s.phase == 1 && s.delta == 0 && s.st[0] != kZero && s.st[1] != kZero &&
               s.st[2] != kZero;
    };
    return build_dfa(al, GpMulState{}, step, accept);
}

struct GpInvState {
    int8_t phase = 0;
    int8_t delta = 0;
    int8_t asum = 0;
    int8_t st = kStart;
    auto operator<=>(const GpInvState&) const = default;
};

MultiTrackAutomaton build_gp_inv(int p) {
    Alphabet al(p, 2);
    auto step = [p](const GpInvState& s, const SymbolVec& sym) -> std::optional<GpInvState> {
        if (sym[0] == p || sym[1] == p) return std::nullopt;
        GpInvState n = s;
        if (s.phase == 0) {
            n.phase = 1;
            n.delta = static_cast<int8_t>(dmod(sym[0] + sym[1], p));
            return n;
        }
        if (sym[1] != dmod(-sym[0], p)) return std::nullopt;
        n.st = sym[0] ? kNonzero : kZero;
        n.delta = static_cast<int8_t>(dmod(s.delta - sym[0] * s.asum, p));
        n.asum = static_cast<int8_t>((s.asum + sym[0]) % p);
        return n;
    };
    auto accept = [](const GpInvState& s) {
        return s.phase == 1 && s.delta == 0 && s.st != kZero;
    };
    return build_dfa(al, GpInvState{}, step, accept);
}

MultiTrackAutomaton build_gp_domain(int p) {
    Alphabet al(p, 1);
    auto step = [](const GpInvState& s, const SymbolVec& sym) -> std::optional<GpInvState> {
        GpInvState n = s;
        if (s.phase == 0) {
            n.phase = 1;
            n.st = kStart;
            return n;
        }
        n.st = sym[0] ? kNonzero : kZero;
        return n;
    };
    auto accept = [](const GpInvState& s) { return s.phase == 1 && s.st != kZero; };
    return build_dfa(al, GpInvState{}, step, accept);
}

// --- H_p --------------------------------------------------------------------
// Element coordinates ride in pairs of tracks (alpha on the even one, gamma
// on the odd one) that pad together.

struct HpMulState {
    int8_t pos0 = 1;
    int8_t asum2 = 0; // running alpha digit sum of the second factor
    std::array<int8_t, 3> st{kStart, kStart, kStart};
    auto operator<=>(const HpMulState&) const = default;
};

MultiTrackAutomaton build_hp_mul(int p) {
    Alphabet al(p, 6);
    auto step = [p](const HpMulState& s, const SymbolVec& sym) -> std::optional<HpMulState> {
        HpMulState n = s;
        int a[3], g[3];
        for (int j = 0; j < 3; ++j) {
            bool pad_a = sym[2 * j] == p, pad_g = sym[2 * j + 1] == p;
            if (pad_a != pad_g) return std::nullopt;
            if (pad_a) {
                if (s.st[j] == kZero) return std::nullopt;
                n.st[j] = kDone;
                a[j] = g[j] = 0;
            } else {
                if (s.st[j] == kDone) return std::nullopt;
                if (s.pos0 && sym[2 * j + 1] != 0) return std::nullopt; // no z_0
                a[j] = sym[2 * j];
                g[j] = sym[2 * j + 1];
                n.st[j] = (a[j] || g[j]) ? kNonzero : kZero;
            }
        }
        if ((a[0] + a[1]) % p != a[2]) return std::nullopt;
        if ((g[0] + g[1] + a[0] * s.asum2) % p != g[2]) return std::nullopt;
        n.asum2 = static_cast<int8_t>((s.asum2 + a[1]) % p);
        n.pos0 = 0;
        return n;
    };
    auto accept = [](const HpMulState& s) {
        return s.st[0] != kZero && s.st[1] != kZero && s.st[2] != kZero;
    };
    return build_dfa(al, HpMulState{}, step, accept);
}

struct HpInvState {
    int8_t pos0 = 1;
    int8_t asum = 0;
    int8_t st = kStart;
    auto operator<=>(const HpInvState&) const = default;
};

MultiTrackAutomaton build_hp_inv(int p) {
    Alphabet al(p, 4);
    auto step = [p](const HpInvState& s, const SymbolVec& sym) -> std::optional<HpInvState> {
        for (int t = 0; t < 4; ++t)
            if (sym[t] == p) return std::nullopt; // inverse preserves length
        int a1 = sym[0], g1 = sym[1], a2 = sym[2], g2 = sym[3];
        if (s.pos0 && g1 != 0) return std::nullopt;
        if (a2 != dmod(-a1, p)) return std::nullopt;
        if (g2 != dmod(-g1 + a1 * s.asum, p)) return std::nullopt;
        HpInvState n = s;
        n.pos0 = 0;
        n.asum = static_cast<int8_t>((s.asum + a1) % p);
        n.st = (a1 || g1) ? kNonzero : kZero;
        return n;
    };
    auto accept = [](const HpInvState& s) { return s.st != kZero; };
    return build_dfa(al, HpInvState{}, step, accept);
}

MultiTrackAutomaton build_hp_domain(int p) {
    Alphabet al(p, 2);
    auto step = [p](const HpInvState& s, const SymbolVec& sym) -> std::optional<HpInvState> {
        if (sym[0] == p || sym[1] == p) return std::nullopt; // pairs pad together
        if (s.pos0 && sym[1] != 0) return std::nullopt;
        HpInvState n = s;
        n.pos0 = 0;
        n.st = (sym[0] || sym[1]) ? kNonzero : kZero;
        return n;
    };
    auto accept = [](const HpInvState& s) { return s.st != kZero; };
    return build_dfa(al, HpInvState{}, step, accept);
}

// --- element arithmetic ------------------------------------------------------

struct GpElem {
    int c = 0;
    Digits alpha;
};

GpElem gp_parse(const TrackWordTuple& t) {
    GpElem e;
    e.c = t[0][0];
    e.alpha.assign(t[0].begin() + 1, t[0].end());
    return e;
}

TrackWordTuple gp_tracks(const GpElem& e) {
    Digits d;
    d.push_back(static_cast<uint8_t>(e.c));
    d.insert(d.end(), e.alpha.begin(), e.alpha.end());
    return {d};
}

int gp_entanglement(const Digits& alpha, const Digits& beta, int p) {
    // sum over k of alpha_k * (sum of beta_i for i < k)
    int s = 0, e = 0;
    size_t len = std::max(alpha.size(), beta.size());
    for (size_t k = 0; k < len; ++k) {
        e = (e + at(alpha, k) * s) % p;
        s = (s + at(beta, k)) % p;
    }
    return e;
}

TrackWordTuple mul_tuple(const Presentation& pres, const TrackWordTuple& x,
                         const TrackWordTuple& y);

TrackWordTuple inverse_tuple(const Presentation& pres, const TrackWordTuple& x) {
    int p = pres.p;
    switch (pres.kind) {
        case GroupKind::fp: {
            Digits r(x[0].size());
            for (size_t i = 0; i < r.size(); ++i) r[i] = static_cast<uint8_t>(dmod(-x[0][i], p));
            return {r};
        }
        case GroupKind::gp: {
            GpElem g = gp_parse(x);
            GpElem r;
            r.alpha.resize(g.alpha.size());
            for (size_t i = 0; i < g.alpha.size(); ++i)
                r.alpha[i] = static_cast<uint8_t>(dmod(-g.alpha[i], p));
            r.c = dmod(-g.c + gp_entanglement(g.alpha, g.alpha, p), p);
            return gp_tracks(r);
        }
        case GroupKind::hp: {
            const Digits& alpha = x[0];
            const Digits& gamma = x[1];
            Digits ra(alpha.size()), rg(alpha.size());
            int s = 0;
            for (size_t k = 0; k < alpha.size(); ++k) {
                ra[k] = static_cast<uint8_t>(dmod(-alpha[k], p));
                rg[k] = static_cast<uint8_t>(dmod(-gamma[k] + alpha[k] * s, p));
                s = (s + alpha[k]) % p;
            }
            return {ra, rg};
        }
        default:
            throw PresentationMismatch("direct arithmetic needs a built-in group");
    }
}

TrackWordTuple mul_tuple(const Presentation& pres, const TrackWordTuple& x,
                         const TrackWordTuple& y) {
    int p = pres.p;
    switch (pres.kind) {
        case GroupKind::fp: {
            Digits r(std::max(x[0].size(), y[0].size()));
            for (size_t i = 0; i < r.size(); ++i)
                r[i] = static_cast<uint8_t>((at(x[0], i) + at(y[0], i)) % p);
            strip_zeros(r);
            return {r};
        }
        case GroupKind::gp: {
            GpElem a = gp_parse(x), b = gp_parse(y);
            GpElem r;
            r.c = (a.c + b.c + gp_entanglement(a.alpha, b.alpha, p)) % p;
            r.alpha.resize(std::max(a.alpha.size(), b.alpha.size()));
            for (size_t i = 0; i < r.alpha.size(); ++i)
                r.alpha[i] = static_cast<uint8_t>((at(a.alpha, i) + at(b.alpha, i)) % p);
            strip_zeros(r.alpha);
            return gp_tracks(r);
        }
        case GroupKind::hp: {
            size_t len = std::max(x[0].size(), y[0].size());
            Digits ra(len), rg(len);
            int s = 0;
            for (size_t k = 0; k < len; ++k) {
                ra[k] = static_cast<uint8_t>((at(x[0], k) + at(y[0], k)) % p);
                rg[k] = static_cast<uint8_t>((at(x[1], k) + at(y[1], k) + at(x[0], k) * s) % p);
                s = (s + at(y[0], k)) % p;
            }
            while (!ra.empty() && ra.back() == 0 && rg.back() == 0) {
                ra.pop_back();
                rg.pop_back();
            }
            return {ra, rg};
        }
        default:
            throw PresentationMismatch("direct arithmetic needs a built-in group");
    }
}

TrackWordTuple identity_tuple(const Presentation& pres) {
    switch (pres.kind) {
        case GroupKind::fp: return {Digits{}};
        case GroupKind::gp: return {Digits{0}};
        case GroupKind::hp: return {Digits{}, Digits{}};
        default: throw PresentationMismatch("direct arithmetic needs a built-in group");
    }
}

TrackWordTuple generator_tuple(const Presentation& pres, const GeneratorRef& gen, int exp) {
    int p = pres.p;
    int e = dmod(exp, p);
    if (gen.kind == 'x') {
        if (gen.index < 0) throw BadGenerator("x index must be nonnegative");
        if (e == 0) return identity_tuple(pres);
        Digits alpha(gen.index + 1, 0);
        alpha[gen.index] = static_cast<uint8_t>(e);
        switch (pres.kind) {
            case GroupKind::fp: return {alpha};
            case GroupKind::gp: {
                Digits d{0};
                d.insert(d.end(), alpha.begin(), alpha.end());
                return {d};
            }
            case GroupKind::hp: return {alpha, Digits(gen.index + 1, 0)};
            default: break;
        }
        throw PresentationMismatch("direct arithmetic needs a built-in group");
    }
    if (gen.kind == 'u') {
        if (pres.kind != GroupKind::gp) throw BadGenerator("generator u only exists in gp");
        return {Digits{static_cast<uint8_t>(e)}};
    }
    if (gen.kind == 'z') {
        if (pres.kind != GroupKind::hp) throw BadGenerator("generator z_k only exists in hp");
        if (gen.index < 1) throw BadGenerator("z_0 does not exist");
        if (e == 0) return identity_tuple(pres);
        Digits alpha(gen.index + 1, 0), gamma(gen.index + 1, 0);
        gamma[gen.index] = static_cast<uint8_t>(e);
        return {alpha, gamma};
    }
    throw BadGenerator(std::string("unknown generator kind '") + gen.kind + "'");
}

} // namespace

// --- string codecs ------------------------------------------------------------

TrackWordTuple element_tracks(const Presentation& pres, const std::string& s) {
    TrackWordTuple t;
    if (s == "e" && pres.kind != GroupKind::custom) {
        t = identity_tuple(pres);
    } else if (pres.tracks_per_element == 1) {
        t = {track_word_from_string(s, pres.p)};
    } else {
        auto bar = s.find('|');
        if (bar == std::string::npos)
            throw NotInDomain("two-coordinate element must be written alpha|gamma: " + s);
        t = {track_word_from_string(s.substr(0, bar), pres.p),
             track_word_from_string(s.substr(bar + 1), pres.p)};
        if (t[0].size() != t[1].size())
            throw NotInDomain("coordinate tracks must have equal printed length: " + s);
    }
    if (!accepts(pres.domain, t)) throw NotInDomain("not a canonical element: " + s);
    return t;
}

std::string element_string(const Presentation& pres, const TrackWordTuple& tracks) {
    if (pres.kind != GroupKind::custom && tracks == identity_tuple(pres)) return "e";
    if (pres.tracks_per_element == 1) return track_word_to_string(tracks[0]);
    return track_word_to_string(tracks[0]) + "|" + track_word_to_string(tracks[1]);
}

std::string mul_elements(const Presentation& pres, const std::string& g, const std::string& h) {
    return element_string(pres,
                          mul_tuple(pres, element_tracks(pres, g), element_tracks(pres, h)));
}

std::string inverse(const Presentation& pres, const std::string& g) {
    return element_string(pres, inverse_tuple(pres, element_tracks(pres, g)));
}

std::string power(const Presentation& pres, const std::string& g, long n) {
    if (n < 0) throw Error("power requires n >= 0");
    TrackWordTuple acc = identity_tuple(pres);
    TrackWordTuple base = element_tracks(pres, g);
    while (n > 0) {
        if (n & 1) acc = mul_tuple(pres, acc, base);
        base = mul_tuple(pres, base, base);
        n >>= 1;
    }
    return element_string(pres, acc);
}

std::string commutator(const Presentation& pres, const std::string& g, const std::string& h) {
    TrackWordTuple a = element_tracks(pres, g);
    TrackWordTuple b = element_tracks(pres, h);
    TrackWordTuple r = mul_tuple(pres, mul_tuple(pres, inverse_tuple(pres, a), inverse_tuple(pres, b)),
                                 mul_tuple(pres, a, b));
    return element_string(pres, r);
}

std::string encode(const Presentation& pres, const GeneratorWord& w) {
    TrackWordTuple acc = identity_tuple(pres);
    for (const auto& [gen, exp] : w) acc = mul_tuple(pres, acc, generator_tuple(pres, gen, exp));
    return element_string(pres, acc);
}

GeneratorWord decode(const Presentation& pres, const std::string& s) {
    TrackWordTuple t = element_tracks(pres, s);
    GeneratorWord w;
    switch (pres.kind) {
        case GroupKind::fp:
            for (size_t i = 0; i < t[0].size(); ++i)
                if (t[0][i]) w.push_back({GeneratorRef{'x', static_cast<int>(i)}, t[0][i]});
            break;
        case GroupKind::gp: {
            for (size_t i = 1; i < t[0].size(); ++i)
                if (t[0][i]) w.push_back({GeneratorRef{'x', static_cast<int>(i - 1)}, t[0][i]});
            if (t[0][0]) w.push_back({GeneratorRef{'u', 0}, t[0][0]});
            break;
        }
        case GroupKind::hp: {
            for (size_t i = 0; i < t[0].size(); ++i)
                if (t[0][i]) w.push_back({GeneratorRef{'x', static_cast<int>(i)}, t[0][i]});
            for (size_t k = 1; k < t[1].size(); ++k)
                if (t[1][k]) w.push_back({GeneratorRef{'z', static_cast<int>(k)}, t[1][k]});
            break;
        }
        default:
            throw PresentationMismatch("decode needs a built-in group");
    }
    return w;
}

GeneratorWord generator_word_from_string(const std::string& text) {
    std::string spaced = text;
    std::replace(spaced.begin(), spaced.end(), '*', ' ');
    std::istringstream in(spaced);
    std::string tok;
    GeneratorWord w;
    while (in >> tok) {
        if (tok == "e") continue;
        int exp = 1;
        auto caret = tok.find('^');
        if (caret != std::string::npos) {
            try {
                exp = std::stoi(tok.substr(caret + 1));
            } catch (const std::exception&) {
                throw BadGenerator("bad exponent in: " + tok);
            }
            tok.erase(caret);
        }
        GeneratorRef gen;
        if (tok == "u") {
            gen = GeneratorRef{'u', 0};
        } else if (tok.size() >= 2 && (tok[0] == 'x' || tok[0] == 'z')) {
            gen.kind = tok[0];
            try {
                gen.index = std::stoi(tok.substr(1));
            } catch (const std::exception&) {
                throw BadGenerator("bad generator index in: " + tok);
            }
        } else {
            throw BadGenerator("cannot parse generator: " + tok);
        }
        w.push_back({gen, exp});
    }
    return w;
}

std::string to_string(const GeneratorWord& w) {
    if (w.empty()) return "e";
    std::ostringstream out;
    bool first = true;
    for (const auto& [gen, exp] : w) {
        if (!first) out << ' ';
        first = false;
        if (gen.kind == 'u')
            out << 'u';
        else
            out << gen.kind << gen.index;
        if (exp != 1) out << '^' << exp;
    }
    return out.str();
}

// --- builders ------------------------------------------------------------------

namespace {

void add_generator_constants(Presentation& pres) {
    pres.constants["e"] = "e";
    for (int i = 0; i <= 7; ++i)
        pres.constants["x" + std::to_string(i)] =
            element_string(pres, generator_tuple(pres, GeneratorRef{'x', i}, 1));
    if (pres.kind == GroupKind::gp)
        pres.constants["u"] = element_string(pres, generator_tuple(pres, GeneratorRef{'u', 0}, 1));
    if (pres.kind == GroupKind::hp)
        for (int k = 1; k <= 7; ++k)
            pres.constants["z" + std::to_string(k)] =
                element_string(pres, generator_tuple(pres, GeneratorRef{'z', k}, 1));
}

void require_odd_prime(int p) {
    if (!is_prime(p)) throw NotPrime("p must be prime, got " + std::to_string(p));
    if (p == 2)
        throw EvenPrimeUnsupported("the alternating form degenerates at p = 2; use an odd prime");
}

} // namespace

Presentation make_elem_abelian(int p) {
    if (!is_prime(p)) throw NotPrime("p must be prime, got " + std::to_string(p));
    Presentation pres;
    pres.name = "fp";
    pres.kind = GroupKind::fp;
    pres.p = p;
    pres.tracks_per_element = 1;
    pres.domain = build_fp_domain(p);
    pres.relations["M"] = RelationInfo{3, build_fp_mul(p)};
    pres.relations["inv"] = RelationInfo{2, build_fp_inv(p)};
    add_generator_constants(pres);
    return pres;
}

Presentation make_gp(int p) {
    require_odd_prime(p);
    Presentation pres;
    pres.name = "gp";
    pres.kind = GroupKind::gp;
    pres.p = p;
    pres.tracks_per_element = 1;
    pres.domain = build_gp_domain(p);
    pres.relations["M"] = RelationInfo{3, build_gp_mul(p)};
    pres.relations["inv"] = RelationInfo{2, build_gp_inv(p)};
    add_generator_constants(pres);
    return pres;
}

Presentation make_hp(int p) {
    require_odd_prime(p);
    Presentation pres;
    pres.name = "hp";
    pres.kind = GroupKind::hp;
    pres.p = p;
    pres.tracks_per_element = 2;
    pres.domain = build_hp_domain(p);
    pres.relations["M"] = RelationInfo{3, build_hp_mul(p)};
    pres.relations["inv"] = RelationInfo{2, build_hp_inv(p)};
    add_generator_constants(pres);
    return pres;
}

// --- oracle bridge ---------------------------------------------------------

StructureConstants StructureConstants::for_presentation(const Presentation& pres) {
    StructureConstants sc;
    switch (pres.kind) {
        case GroupKind::gp: sc.target = Target::central_u; return sc;
        case GroupKind::hp: sc.target = Target::graded_z; return sc;
        default:
            throw PresentationMismatch("no central quotient map onto '" + pres.name + "'");
    }
}

std::string quotient(const Nil2Element& g, const StructureConstants& sc,
                     const Presentation& pres) {
    if (g.p != pres.p) throw PresentationMismatch("modulus mismatch in quotient");
    if (pres.kind != GroupKind::gp && pres.kind != GroupKind::hp)
        throw PresentationMismatch("quotient targets the gp or hp presentations");
    if ((sc.target == StructureConstants::Target::central_u) != (pres.kind == GroupKind::gp) ||
        (sc.target == StructureConstants::Target::graded_z) != (pres.kind == GroupKind::hp))
        throw PresentationMismatch("structure constants do not match the presentation");

    int max_idx = -1;
    for (const auto& [i, e] : g.a) {
        (void)e;
        max_idx = std::max(max_idx, i);
    }
    Digits alpha(max_idx + 1, 0);
    for (const auto& [i, e] : g.a) alpha[i] = static_cast<uint8_t>(e);

    if (pres.kind == GroupKind::gp) {
        int c = 0;
        for (const auto& [ik, e] : g.b) {
            (void)ik;
            c = (c + e) % pres.p;
        }
        // alpha never ends in zero, so prefixing the central digit is canonical
        Digits d{static_cast<uint8_t>(c)};
        d.insert(d.end(), alpha.begin(), alpha.end());
        return element_string(pres, {d});
    }

    int max_k = max_idx;
    for (const auto& [ik, e] : g.b) {
        (void)e;
        max_k = std::max(max_k, ik.second);
    }
    Digits a(max_k + 1, 0), gm(max_k + 1, 0);
    for (const auto& [i, e] : g.a) a[i] = static_cast<uint8_t>(e);
    for (const auto& [ik, e] : g.b) gm[ik.second] = static_cast<uint8_t>((gm[ik.second] + e) % pres.p);
    while (!a.empty() && a.back() == 0 && gm.back() == 0) {
        a.pop_back();
        gm.pop_back();
    }
    return element_string(pres, {a, gm});
}

Nil2Element nil2_from_generator_word(int p, const GeneratorWord& w) {
    Nil2Element acc = nil2_identity(p);
    for (const auto& [gen, exp] : w) {
        if (gen.kind != 'x')
            throw BadGenerator("oracle words range over the x generators only");
        acc = oracle_mul(acc, oracle_pow(nil2_generator(p, gen.index), ((exp % p) + p) % p));
    }
    return acc;
}

} // namespace autostruct
