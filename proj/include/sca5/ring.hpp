#pragma once

// Bit-packed cyclic binary words ("rings") and rotation-based pattern
// counting.
//
// Site j of a length-L ring is stored at bit (L-1-j) of a little-endian limb
// array, so the packed value of a ring equals its 0/1 string read as a binary
// number.  Two consequences are used throughout:
//   * ascending numeric order == ascending lexicographic order of strings,
//   * a cyclic shift of sites is a cyclic shift of the L-bit value.
//
// Ring (one 64-bit limb, L <= 64) is the working type of the analysis stack;
// WideRing is the fallback representation for longer lattices and is accepted
// by the templated update kernels and Monte Carlo paths.

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sca5 {

// Shortest length on which the 5-neighbor update windows are injective.
inline constexpr int min_ring_length = 4;

template <std::size_t MaxWords>
class BasicRing {
    static_assert(MaxWords >= 1);

public:
    static constexpr int max_length = int(64 * MaxWords);

    BasicRing() = default;

    static BasicRing zeros(int length) { return BasicRing(length); }

    static BasicRing ones(int length) {
        BasicRing r(length);
        for (std::size_t i = 0; i < MaxWords; ++i) r.limbs_[i] = ~std::uint64_t{0};
        r.trim();
        return r;
    }

    static BasicRing from_string(std::string_view bits) {
        BasicRing r(int(bits.size()));
        for (int j = 0; j < r.len_; ++j) {
            const char c = bits[std::size_t(j)];
            if (c != '0' && c != '1') throw std::invalid_argument("ring: string must be over {0,1}");
            if (c == '1') r.set(j, true);
        }
        return r;
    }

    int length() const { return len_; }

    // Site indexing is modulo L everywhere, negative offsets included.
    bool bit(int site) const {
        const int p = pos(site);
        return (limbs_[std::size_t(p >> 6)] >> (p & 63)) & 1u;
    }

    void set(int site, bool value) {
        const int p = pos(site);
        const std::uint64_t m = std::uint64_t{1} << (p & 63);
        if (value)
            limbs_[std::size_t(p >> 6)] |= m;
        else
            limbs_[std::size_t(p >> 6)] &= ~m;
    }

    int popcount() const {
        int n = 0;
        for (std::size_t i = 0; i < MaxWords; ++i) n += std::popcount(limbs_[i]);
        return n;
    }

    // Ring whose bit(j) equals this->bit(j + shift).
    BasicRing rotated(int shift) const {
        const int s = mod(shift, len_);
        if (s == 0) return *this;
        BasicRing out(len_);
        // new bit position p' holds old position (p' - s) mod L, i.e. the
        // packed value rotates towards the high end by s.
        shifted_or(out.limbs_, limbs_, s, len_);
        shifted_or(out.limbs_, limbs_, s - len_, len_);
        out.trim();
        return out;
    }

    BasicRing operator~() const {
        BasicRing out(len_);
        for (std::size_t i = 0; i < MaxWords; ++i) out.limbs_[i] = ~limbs_[i];
        out.trim();
        return out;
    }

    BasicRing& operator&=(const BasicRing& o) {
        for (std::size_t i = 0; i < MaxWords; ++i) limbs_[i] &= o.limbs_[i];
        return *this;
    }
    BasicRing& operator|=(const BasicRing& o) {
        for (std::size_t i = 0; i < MaxWords; ++i) limbs_[i] |= o.limbs_[i];
        return *this;
    }
    BasicRing& operator^=(const BasicRing& o) {
        for (std::size_t i = 0; i < MaxWords; ++i) limbs_[i] ^= o.limbs_[i];
        return *this;
    }
    friend BasicRing operator&(BasicRing a, const BasicRing& b) { return a &= b; }
    friend BasicRing operator|(BasicRing a, const BasicRing& b) { return a |= b; }
    friend BasicRing operator^(BasicRing a, const BasicRing& b) { return a ^= b; }

    friend bool operator==(const BasicRing& a, const BasicRing& b) {
        return a.len_ == b.len_ && a.limbs_ == b.limbs_;
    }

    friend std::strong_ordering operator<=>(const BasicRing& a, const BasicRing& b) {
        if (a.len_ != b.len_) return a.len_ <=> b.len_;
        for (std::size_t i = MaxWords; i-- > 0;)
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
        return std::strong_ordering::equal;
    }

    std::string to_string() const {
        std::string s(std::size_t(len_), '0');
        for (int j = 0; j < len_; ++j)
            if (bit(j)) s[std::size_t(j)] = '1';
        return s;
    }

    // Lexicographically smallest rotation; the representative of the shift class.
    BasicRing canonical_rotation() const {
        BasicRing best = *this;
        for (int s = 1; s < len_; ++s) {
            BasicRing r = rotated(s);
            if (r < best) best = r;
        }
        return best;
    }

    bool is_canonical_rotation() const {
        for (int s = 1; s < len_; ++s)
            if (rotated(s) < *this) return false;
        return true;
    }

    // Number of distinct rotations (equals the smallest period dividing L).
    int orbit_size() const {
        for (int d = 1; d < len_; ++d)
            if (len_ % d == 0 && rotated(d) == *this) return d;
        return len_;
    }

    // Packed value; only meaningful for single-limb rings.
    std::uint64_t value() const
        requires(MaxWords == 1)
    {
        return limbs_[0];
    }

    static BasicRing from_value(int length, std::uint64_t v)
        requires(MaxWords == 1)
    {
        BasicRing r(length);
        r.limbs_[0] = v;
        r.trim();
        return r;
    }

    std::vector<int> set_sites() const {
        std::vector<int> out;
        out.reserve(std::size_t(popcount()));
        for (int j = 0; j < len_; ++j)
            if (bit(j)) out.push_back(j);
        return out;
    }

private:
    explicit BasicRing(int length) : len_(length) {
        if (length < min_ring_length || length > max_length)
            throw std::invalid_argument("ring: length must be in [" + std::to_string(min_ring_length) +
                                        ", " + std::to_string(max_length) + "]");
    }

    static int mod(int a, int m) {
        int r = a % m;
        return r < 0 ? r + m : r;
    }

    int pos(int site) const { return len_ - 1 - mod(site, len_); }

    void trim() {
        const int full = len_ >> 6;
        const int rem = len_ & 63;
        for (std::size_t i = std::size_t(full + (rem ? 1 : 0)); i < MaxWords; ++i) limbs_[i] = 0;
        if (rem) limbs_[std::size_t(full)] &= (std::uint64_t{1} << rem) - 1;
    }

    // dst |= src shifted up by s bit positions (s may be negative for down).
    static void shifted_or(std::array<std::uint64_t, MaxWords>& dst,
                           const std::array<std::uint64_t, MaxWords>& src, int s, int /*len*/) {
        if (s >= 0) {
            const int word = s >> 6, off = s & 63;
            for (int i = int(MaxWords) - 1; i >= word; --i) {
                std::uint64_t v = src[std::size_t(i - word)] << off;
                if (off && i - word - 1 >= 0) v |= src[std::size_t(i - word - 1)] >> (64 - off);
                dst[std::size_t(i)] |= v;
            }
        } else {
            const int t = -s;
            const int word = t >> 6, off = t & 63;
            for (int i = 0; i + word < int(MaxWords); ++i) {
                std::uint64_t v = src[std::size_t(i + word)] >> off;
                if (off && i + word + 1 < int(MaxWords)) v |= src[std::size_t(i + word + 1)] << (64 - off);
                dst[std::size_t(i)] |= v;
            }
        }
    }

    std::array<std::uint64_t, MaxWords> limbs_{};
    int len_ = 0;
};

using Ring = BasicRing<1>;
using WideRing = BasicRing<4>;

// Mask of occurrence start sites: bit j is set iff pattern[i] == x_{j+i} for
// all i, indices cyclic.  Patterns longer than the ring are matched with
// wrapping indices (an occurrence then covers some sites more than once).
template <std::size_t W>
BasicRing<W> occurrence_mask(const BasicRing<W>& x, std::string_view pattern) {
    if (pattern.empty()) throw std::invalid_argument("pattern: must be nonempty");
    BasicRing<W> acc = BasicRing<W>::ones(x.length());
    for (int i = 0; i < int(pattern.size()); ++i) {
        const char c = pattern[std::size_t(i)];
        if (c != '0' && c != '1') throw std::invalid_argument("pattern: must be over {0,1}");
        const BasicRing<W> r = x.rotated(i);
        acc &= (c == '1') ? r : ~r;
    }
    return acc;
}

template <std::size_t W>
std::vector<int> occurrence_starts(const BasicRing<W>& x, std::string_view pattern) {
    return occurrence_mask(x, pattern).set_sites();
}

// Cyclic occurrence count without the length-vs-pattern restriction.
template <std::size_t W>
int count_pattern_wrapping(const BasicRing<W>& x, std::string_view pattern) {
    return occurrence_mask(x, pattern).popcount();
}

// Cyclic occurrence count of a local pattern, 1 <= |pattern| <= L.
template <std::size_t W>
int count_pattern(const BasicRing<W>& x, std::string_view pattern) {
    if (pattern.empty() || int(pattern.size()) > x.length())
        throw std::invalid_argument("count_pattern: pattern length must be in [1, L]");
    return count_pattern_wrapping(x, pattern);
}

}  // namespace sca5
