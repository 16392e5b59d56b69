#include "autostruct/alphabet.hpp"

#include <algorithm>

namespace autostruct {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Alphabet::Alphabet(int p_, int tracks_) : p(p_), tracks(tracks_) {
    if (!is_prime(p))
        throw NotPrime("p must be prime, got " + std::to_string(p));
    if (p > kMaxPrime)
        throw NotPrime("p must be at most " + std::to_string(kMaxPrime));
    if (tracks < 0 || tracks > kMaxTracks)
        throw TrackOutOfRange("track count must be in 0.." + std::to_string(kMaxTracks) +
                              ", got " + std::to_string(tracks));
}

SymbolPattern SymbolPattern::full(const Alphabet& al) {
    SymbolPattern p;
    for (int t = 0; t < al.tracks; ++t) p.m[t] = any_mask(al.p);
    return p;
}

SymbolPattern SymbolPattern::concrete(const Alphabet& al, const SymbolVec& sym) {
    SymbolPattern p;
    for (int t = 0; t < al.tracks; ++t) p.m[t] = digit_bit(sym[t]);
    return p;
}

bool SymbolPattern::matches(const Alphabet& al, const SymbolVec& sym) const {
    for (int t = 0; t < al.tracks; ++t)
        if (!(m[t] & digit_bit(sym[t]))) return false;
    return true;
}

bool SymbolPattern::intersect(const Alphabet& al, const SymbolPattern& o, SymbolPattern& out) const {
    for (int t = 0; t < al.tracks; ++t) {
        TrackMask v = static_cast<TrackMask>(m[t] & o.m[t]);
        if (!v) return false;
        out.m[t] = v;
    }
    return true;
}

bool SymbolPattern::allows_all_pad(const Alphabet& al) const {
    for (int t = 0; t < al.tracks; ++t)
        if (!(m[t] & pad_bit(al.p))) return false;
    return true;
}

uint64_t SymbolPattern::size(const Alphabet& al) const {
    uint64_t n = 1;
    for (int t = 0; t < al.tracks; ++t) n *= static_cast<uint64_t>(__builtin_popcount(m[t]));
    return n;
}

SymbolVec SymbolPattern::least(const Alphabet& al) const {
    SymbolVec s(al.tracks);
    for (int t = 0; t < al.tracks; ++t)
        s[t] = static_cast<uint8_t>(__builtin_ctz(m[t]));
    return s;
}

int SymbolPattern::compare(const Alphabet& al, const SymbolPattern& o) const {
    for (int t = 0; t < al.tracks; ++t) {
        if (m[t] != o.m[t]) return m[t] < o.m[t] ? -1 : 1;
    }
    return 0;
}

void subtract_pattern(const Alphabet& al, const SymbolPattern& a, const SymbolPattern& b,
                      std::vector<SymbolPattern>& out) {
    // Classic rectangle subtraction: peel one track at a time.
    SymbolPattern prefix = a;
    for (int t = 0; t < al.tracks; ++t) {
        TrackMask keep = static_cast<TrackMask>(a.m[t] & ~b.m[t]);
        if (keep) {
            SymbolPattern piece = prefix;
            piece.m[t] = keep;
            out.push_back(piece);
        }
        TrackMask shared = static_cast<TrackMask>(a.m[t] & b.m[t]);
        if (!shared) return; // nothing of a remains under b on this track
        prefix.m[t] = shared;
    }
}

std::vector<SymbolVec> convolve(const Alphabet& al, const TrackWordTuple& words) {
    if (static_cast<int>(words.size()) != al.tracks)
        throw TrackOutOfRange("expected " + std::to_string(al.tracks) + " tracks, got " +
                              std::to_string(words.size()));
    size_t len = 0;
    for (const auto& w : words) {
        for (uint8_t d : w)
            if (d >= al.p)
                throw InvalidDigit("digit " + std::to_string(int(d)) + " out of range for p=" +
                                   std::to_string(al.p));
        len = std::max(len, w.size());
    }
    std::vector<SymbolVec> word(len, SymbolVec(al.tracks, al.pad()));
    for (int t = 0; t < al.tracks; ++t)
        for (size_t i = 0; i < words[t].size(); ++i) word[i][t] = words[t][i];
    return word;
}

TrackWordTuple deconvolve(const Alphabet& al, const std::vector<SymbolVec>& word) {
    TrackWordTuple out(al.tracks);
    for (int t = 0; t < al.tracks; ++t) {
        for (const auto& sym : word) {
            if (sym[t] == al.pad()) break; // pads only at the tail in valid convolutions
            out[t].push_back(sym[t]);
        }
    }
    return out;
}

char digit_to_char(int d) {
    return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10);
}

int char_to_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    return -1;
}

std::string track_word_to_string(const TrackWord& w) {
    std::string s;
    s.reserve(w.size());
    for (uint8_t d : w) s.push_back(digit_to_char(d));
    return s;
}

TrackWord track_word_from_string(const std::string& s, int p) {
    TrackWord w;
    w.reserve(s.size());
    for (char c : s) {
        int d = char_to_digit(c);
        if (d < 0 || d >= p)
            throw InvalidDigit(std::string("bad digit '") + c + "' for p=" + std::to_string(p));
        w.push_back(static_cast<uint8_t>(d));
    }
    return w;
}

} // namespace autostruct
