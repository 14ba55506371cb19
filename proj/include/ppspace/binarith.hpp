#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ppspace {

/// Set of exponents in the binary expansion of a non-negative integer.
/// Empty exactly for the value 0, and value() recovers the source integer.
class BitSet {
public:
    BitSet() = default;

    static BitSet of(std::uint64_t value) {
        BitSet b;
        b.mask_ = value;
        return b;
    }

    bool contains(int e) const { return e >= 0 && e < 64 && ((mask_ >> e) & 1u); }
    bool subset_of(const BitSet& o) const { return (mask_ & ~o.mask_) == 0; }
    bool disjoint_from(const BitSet& o) const { return (mask_ & o.mask_) == 0; }
    bool empty() const { return mask_ == 0; }

    /// Sum of 2^e over the members.
    std::uint64_t value() const { return mask_; }

    std::vector<int> positions() const {
        std::vector<int> out;
        for (std::uint64_t m = mask_; m;) {
            int e = std::countr_zero(m);
            out.push_back(e);
            m &= m - 1;
        }
        return out;
    }

private:
    std::uint64_t mask_ = 0;
};

/// 2-adic valuation: largest e with 2^e dividing m. Sign is ignored.
inline int nu(std::int64_t m) {
    if (m == 0) throw std::domain_error("nu(0) undefined");
    // Two's complement keeps trailing zeros, so no abs() is needed.
    return std::countr_zero(static_cast<std::uint64_t>(m));
}

/// Number of ones in the binary expansion of m >= 0.
inline int alpha(std::int64_t m) {
    if (m < 0) throw std::domain_error("alpha: negative argument");
    return std::popcount(static_cast<std::uint64_t>(m));
}

/// Count of integers in [1, n] congruent to 0, 1, 2 or 4 mod 8.
inline std::int64_t phi(std::int64_t n) {
    if (n < 0) throw std::domain_error("phi: negative argument");
    static constexpr std::int64_t partial[8] = {0, 1, 2, 2, 3, 3, 3, 3};
    return 4 * (n / 8) + partial[n % 8];
}

/// Parity of the binomial coefficient C(k, m) for m >= 0 and any integer k.
///
/// For k >= 0 this is Lucas' criterion: odd iff Bin(m) is a subset of Bin(k).
/// For k = -j it is odd iff Bin(j-1) and Bin(m) are disjoint.
inline bool binom_odd(std::int64_t k, std::int64_t m) {
    if (m < 0) throw std::domain_error("binom_odd: m must be non-negative");
    if (m == 0) return true;
    if (k >= 0) {
        if (k < m) return false;  // C(k, m) = 0
        return BitSet::of(static_cast<std::uint64_t>(m))
            .subset_of(BitSet::of(static_cast<std::uint64_t>(k)));
    }
    // ~k == -k - 1 == j - 1 without overflow.
    return BitSet::of(static_cast<std::uint64_t>(~k))
        .disjoint_from(BitSet::of(static_cast<std::uint64_t>(m)));
}

/// nu of C(l+m, l), equal to the number of carries when adding l and m in
/// base 2 (Kummer).
inline int binom_nu(std::int64_t l, std::int64_t m) {
    if (l < 0 || m < 0) throw std::domain_error("binom_nu: arguments must be non-negative");
    if (l > (std::int64_t{1} << 62) - m) throw std::overflow_error("binom_nu: l+m too large");
    return alpha(l) + alpha(m) - alpha(l + m);
}

}  // namespace ppspace
