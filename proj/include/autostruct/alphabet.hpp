#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "autostruct/errors.hpp"

namespace autostruct {

// Implementation caps: per-track value masks live in 16 bits (p digits plus
// one pad bit), symbol patterns in a fixed array.
inline constexpr int kMaxTracks = 16;
inline constexpr int kMaxPrime = 13;

using TrackWord = std::vector<uint8_t>;       // digit string, values 0..p-1
using TrackWordTuple = std::vector<TrackWord>; // k tracks, lengths may differ
using SymbolVec = std::vector<uint8_t>;        // one k-track symbol; pad = p

bool is_prime(int n);

// Alphabet of k-track symbols over digits 0..p-1 plus a pad marker that
// fills the tail of shorter tracks. The pad discipline (no digit after pad
// on a track, never an all-pad symbol) is a property of the words the
// automata accept, not of single symbols.
struct Alphabet {
    int p = 2;
    int tracks = 1;

    Alphabet() = default;
    Alphabet(int p_, int tracks_);

    uint8_t pad() const { return static_cast<uint8_t>(p); }

    bool operator==(const Alphabet& o) const { return p == o.p && tracks == o.tracks; }
    bool operator!=(const Alphabet& o) const { return !(*this == o); }
};

inline void require_same_alphabet(const Alphabet& a, const Alphabet& b) {
    if (a != b)
        throw AlphabetMismatch("alphabet mismatch: p=" + std::to_string(a.p) + "/tracks=" +
                               std::to_string(a.tracks) + " vs p=" + std::to_string(b.p) +
                               "/tracks=" + std::to_string(b.tracks));
}

// Per-track value set: bit d (d < p) allows digit d, bit p allows pad.
using TrackMask = uint16_t;

inline TrackMask digit_bit(int d) { return static_cast<TrackMask>(1u << d); }
inline TrackMask pad_bit(int p) { return static_cast<TrackMask>(1u << p); }
inline TrackMask any_digit_mask(int p) { return static_cast<TrackMask>((1u << p) - 1u); }
inline TrackMask any_mask(int p) { return static_cast<TrackMask>((1u << (p + 1)) - 1u); }

// A rectangular set of symbols: one value mask per track. This is the
// transition label; unconstrained tracks carry the full mask, so dense
// alphabets (up to (p+1)^k symbols) are never materialized.
struct SymbolPattern {
    std::array<TrackMask, kMaxTracks> m{};

    static SymbolPattern full(const Alphabet& al);
    static SymbolPattern concrete(const Alphabet& al, const SymbolVec& sym);

    bool matches(const Alphabet& al, const SymbolVec& sym) const;
    // Track-wise intersection; empty result on any track means no symbol.
    bool intersect(const Alphabet& al, const SymbolPattern& o, SymbolPattern& out) const;
    bool allows_all_pad(const Alphabet& al) const;
    // Number of concrete symbols matched.
    uint64_t size(const Alphabet& al) const;
    // Lexicographically least matched symbol (digits before pad, per track).
    SymbolVec least(const Alphabet& al) const;

    int compare(const Alphabet& al, const SymbolPattern& o) const;
};

// this \ o, as disjoint rectangles. Appends to out.
void subtract_pattern(const Alphabet& al, const SymbolPattern& a, const SymbolPattern& b,
                      std::vector<SymbolPattern>& out);

// Convolution: interleave a tuple of digit strings into one symbol word of
// length max(track lengths), shorter tracks padded at the tail.
std::vector<SymbolVec> convolve(const Alphabet& al, const TrackWordTuple& words);
TrackWordTuple deconvolve(const Alphabet& al, const std::vector<SymbolVec>& word);

// Digit characters: 0-9 then a,b,c,... (p <= 13 keeps this single-char).
char digit_to_char(int d);
int char_to_digit(char c);
std::string track_word_to_string(const TrackWord& w);
TrackWord track_word_from_string(const std::string& s, int p);

} // namespace autostruct
