// Independent oracles for the arithmetic kernels. Everything here is
// computed by a different route than the library (exact Pascal rows,
// digit-carry counting, direct enumeration) so the two sides genuinely
// cross-check each other.
#pragma once

#include <cstdint>
#include <vector>

namespace oracles {

/// Exact Pascal triangle in 128-bit arithmetic; rows up to 100 stay exact.
class PascalTable {
public:
    explicit PascalTable(int max_row) : rows_(static_cast<std::size_t>(max_row) + 1) {
        for (int k = 0; k <= max_row; ++k) {
            rows_[k].assign(static_cast<std::size_t>(k) + 1, 1);
            for (int m = 1; m < k; ++m)
                rows_[k][m] = rows_[k - 1][m - 1] + rows_[k - 1][m];
        }
    }

    unsigned __int128 at(int k, int m) const {
        if (m < 0 || m > k) return 0;
        return rows_[k][m];
    }

    bool odd(int k, int m) const { return (at(k, m) & 1) != 0; }

private:
    std::vector<std::vector<unsigned __int128>> rows_;
};

/// Carries when adding l and m in binary.
inline int carries(std::uint64_t l, std::uint64_t m) {
    int count = 0;
    std::uint64_t carry = 0;
    for (int b = 0; b < 64; ++b) {
        const std::uint64_t lb = (l >> b) & 1, mb = (m >> b) & 1;
        const std::uint64_t sum = lb + mb + carry;
        carry = sum >> 1;
        if (carry) ++count;
    }
    return count;
}

/// nu of n! by Legendre's formula.
inline std::int64_t factorial_nu(std::int64_t n) {
    std::int64_t total = 0;
    for (std::int64_t p = 2; p <= n; p *= 2) total += n / p;
    return total;
}

/// Count of integers in [1, n] congruent to 0, 1, 2 or 4 mod 8 by direct
/// enumeration.
inline std::int64_t phi_enumerated(std::int64_t n) {
    std::int64_t count = 0;
    for (std::int64_t j = 1; j <= n; ++j) {
        const std::int64_t r = j % 8;
        if (r == 0 || r == 1 || r == 2 || r == 4) ++count;
    }
    return count;
}

/// Largest m <= n whose binary digits all appear in `digits`, by scan.
inline std::int64_t largest_subset_leq_scan(std::uint64_t digits, std::int64_t n) {
    for (std::int64_t m = n; m >= 0; --m)
        if ((static_cast<std::uint64_t>(m) & ~digits) == 0) return m;
    return 0;
}

}  // namespace oracles
