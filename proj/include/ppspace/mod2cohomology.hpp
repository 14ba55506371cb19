#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "binarith.hpp"
#include "tuple.hpp"

namespace ppspace {

/// Monomial y^a * prod_{i in S} x_i in the mod-2 cohomology of P_n:
/// a <= n_1 (the power truncates above that) and S is a set of positions
/// in {2..r}, stored as a mask with bit i-2 for position i.
struct Mod2Monomial {
    std::int64_t ypow = 0;
    std::uint64_t xmask = 0;

    bool operator==(const Mod2Monomial& o) const {
        return ypow == o.ypow && xmask == o.xmask;
    }
    bool operator!=(const Mod2Monomial& o) const { return !(*this == o); }

    bool has_position(int pos) const { return (xmask >> (pos - 2)) & 1u; }

    static Mod2Monomial unit() { return {}; }
    static Mod2Monomial y_power(std::int64_t a) { return {a, 0}; }
    static Mod2Monomial x(int pos) {
        if (pos < 2) throw std::domain_error("mod2: x positions start at 2");
        return {0, std::uint64_t{1} << (pos - 2)};
    }

    std::vector<int> positions() const {
        std::vector<int> out;
        for (std::uint64_t m = xmask; m;) {
            out.push_back(std::countr_zero(m) + 2);
            m &= m - 1;
        }
        return out;
    }
};

/// y powers ascending, then x subsets in lexicographic order on their
/// position sequences ((2) < (2,3) < (3)).
inline bool mod2_less(const Mod2Monomial& a, const Mod2Monomial& b) {
    if (a.ypow != b.ypow) return a.ypow < b.ypow;
    std::uint64_t ma = a.xmask, mb = b.xmask;
    while (ma && mb) {
        const int pa = std::countr_zero(ma), pb = std::countr_zero(mb);
        if (pa != pb) return pa < pb;
        ma &= ma - 1;
        mb &= mb - 1;
    }
    return ma == 0 && mb != 0;  // proper prefix compares smaller
}

struct Mod2MonomialLess {
    bool operator()(const Mod2Monomial& a, const Mod2Monomial& b) const {
        return mod2_less(a, b);
    }
};

/// Formal Z/2 sum of monomials, kept as a duplicate-free ordered set.
class Mod2Class {
public:
    Mod2Class() = default;
    explicit Mod2Class(const Mod2Monomial& m) { monomials_.insert(m); }
    explicit Mod2Class(const std::vector<Mod2Monomial>& ms) {
        for (const auto& m : ms) toggle(m);
    }

    /// Add one monomial mod 2.
    void toggle(const Mod2Monomial& m) {
        auto [it, inserted] = monomials_.insert(m);
        if (!inserted) monomials_.erase(it);
    }

    void add(const Mod2Class& o) {
        for (const auto& m : o.monomials_) toggle(m);
    }

    bool zero() const { return monomials_.empty(); }
    std::size_t size() const { return monomials_.size(); }

    std::vector<Mod2Monomial> monomials() const {
        return {monomials_.begin(), monomials_.end()};
    }

    bool operator==(const Mod2Class& o) const { return monomials_ == o.monomials_; }
    bool operator!=(const Mod2Class& o) const { return !(*this == o); }

private:
    std::set<Mod2Monomial, Mod2MonomialLess> monomials_;
};

inline void validate_monomial(const Tuple& t, const Mod2Monomial& m) {
    if (m.ypow < 0 || m.ypow > t.min_entry())
        throw std::domain_error("mod2: y power exceeds truncation degree");
    if (t.length() < 2) {
        if (m.xmask != 0) throw std::domain_error("mod2: x position out of range");
    } else if (m.xmask >> (t.length() - 1)) {
        throw std::domain_error("mod2: x position out of range");
    }
}

inline std::int64_t degree(const Tuple& t, const Mod2Monomial& m) {
    validate_monomial(t, m);
    std::int64_t d = m.ypow;
    for (int pos : m.positions()) d += t.entry(pos);
    return d;
}

/// Degree of a homogeneous class; throws on mixed degrees.
inline std::int64_t degree(const Tuple& t, const Mod2Class& c) {
    if (c.zero()) throw std::domain_error("mod2: zero class has no degree");
    const auto ms = c.monomials();
    const std::int64_t d = degree(t, ms.front());
    for (const auto& m : ms)
        if (degree(t, m) != d)
            throw std::domain_error("mod2: class is not homogeneous");
    return d;
}

inline bool is_homogeneous(const Tuple& t, const Mod2Class& c) {
    if (c.zero()) return true;
    const auto ms = c.monomials();
    const std::int64_t d = degree(t, ms.front());
    for (const auto& m : ms)
        if (degree(t, m) != d) return false;
    return true;
}

namespace detail {

inline void basis_rec(const Tuple& t, int pos, std::int64_t remaining,
                      std::uint64_t mask, std::vector<Mod2Monomial>& out,
                      std::int64_t ypow) {
    if (remaining == 0) {
        out.push_back({ypow, mask});
        return;
    }
    for (int p = pos; p <= t.length(); ++p)
        if (t.entry(p) <= remaining)
            basis_rec(t, p + 1, remaining - t.entry(p),
                      mask | (std::uint64_t{1} << (p - 2)), out, ypow);
}

}  // namespace detail

/// All basis monomials of degree d, ordered y power ascending then subset
/// lexicographic. Out-of-range degrees give an empty list.
inline std::vector<Mod2Monomial> basis(const Tuple& t, std::int64_t d) {
    std::vector<Mod2Monomial> out;
    if (d < 0 || d > t.total()) return out;
    for (std::int64_t a = 0; a <= t.min_entry() && a <= d; ++a)
        detail::basis_rec(t, 2, d - a, 0, out, a);
    return out;
}

/// Product of two monomials. A common exterior factor x_i squares to
/// C(n_i+1, n_i) y^{n_i} x_i, which keeps the factor and contributes y^{n_i}
/// when n_i is even and kills the product when n_i is odd; the y power then
/// truncates above n_1.
inline std::optional<Mod2Monomial> multiply(const Tuple& t, const Mod2Monomial& u,
                                            const Mod2Monomial& v) {
    validate_monomial(t, u);
    validate_monomial(t, v);
    std::int64_t ypow = u.ypow + v.ypow;
    for (std::uint64_t common = u.xmask & v.xmask; common;) {
        const int pos = std::countr_zero(common) + 2;
        const std::int64_t n = t.entry(pos);
        if (n % 2 != 0) return std::nullopt;
        ypow += n;
        common &= common - 1;
    }
    if (ypow > t.min_entry()) return std::nullopt;
    return Mod2Monomial{ypow, u.xmask | v.xmask};
}

inline Mod2Class multiply(const Tuple& t, const Mod2Class& u, const Mod2Class& v) {
    Mod2Class out;
    for (const auto& mu : u.monomials())
        for (const auto& mv : v.monomials())
            if (auto prod = multiply(t, mu, mv)) out.toggle(*prod);
    return out;
}

/// Steenrod square Sq^k. On a monomial the Cartan expansion collapses to a
/// single term: every composition lands on y^{a+k} times the same exterior
/// part, and the mod-2 coefficient sums to the coefficient of t^k in
/// (1+t)^{a + sum (n_i+1)}, i.e. C(a + sum_{i in S}(n_i+1), k).
inline Mod2Class sq(const Tuple& t, std::int64_t k, const Mod2Class& u) {
    if (k < 0) throw std::domain_error("sq: negative operation degree");
    if (!is_homogeneous(t, u))
        throw std::domain_error("sq: class is not homogeneous");
    Mod2Class out;
    for (const auto& m : u.monomials()) {
        std::int64_t expo = m.ypow;
        for (int pos : m.positions()) expo += t.entry(pos) + 1;
        if (!binom_odd(expo, k)) continue;
        const std::int64_t ypow = m.ypow + k;
        if (ypow > t.min_entry()) continue;
        out.toggle({ypow, m.xmask});
    }
    return out;
}

/// Ranks of the mod-2 cohomology in each degree 0..|n|: the coefficients of
/// (1 + t + ... + t^{n_1}) * prod_{i>=2} (1 + t^{n_i}).
inline std::vector<std::uint64_t> poincare_poly(const Tuple& t) {
    std::vector<std::uint64_t> coeff(static_cast<std::size_t>(t.total()) + 1, 0);
    for (std::int64_t a = 0; a <= t.min_entry(); ++a) coeff[a] = 1;
    for (int pos = 2; pos <= t.length(); ++pos) {
        const std::int64_t n = t.entry(pos);
        for (std::int64_t d = t.total(); d >= n; --d) coeff[d] += coeff[d - n];
    }
    return coeff;
}

/// Euler characteristic: 2^{r-1} when every entry is even, otherwise 0.
inline std::uint64_t euler_char(const Tuple& t) {
    for (std::int64_t n : t.entries())
        if (n % 2 != 0) return 0;
    return std::uint64_t{1} << (t.length() - 1);
}

/// Kervaire semicharacteristic: mod-2 sum of the even-degree mod-2 ranks.
/// Only defined in odd dimensions.
inline int kervaire_semichar(const Tuple& t) {
    if (t.total() % 2 == 0)
        throw std::domain_error("kervaire_semichar: requires odd dimension");
    const auto ranks = poincare_poly(t);
    std::uint64_t sum = 0;
    for (std::size_t d = 0; d < ranks.size(); d += 2) sum += ranks[d];
    return static_cast<int>(sum % 2);
}

// ---- class syntax: "y^a*x2*x3", monomials joined by " + ", unit "1" ----

inline std::string to_string(const Mod2Monomial& m) {
    std::string s;
    if (m.ypow > 0) s = "y^" + std::to_string(m.ypow);
    for (int pos : m.positions()) {
        if (!s.empty()) s += '*';
        s += 'x' + std::to_string(pos);
    }
    return s.empty() ? "1" : s;
}

inline std::string to_string(const Mod2Class& c) {
    if (c.zero()) return "0";
    std::string s;
    for (const auto& m : c.monomials()) {
        if (!s.empty()) s += " + ";
        s += to_string(m);
    }
    return s;
}

namespace detail {

/// Returns nullopt when the y power lands above the truncation degree, in
/// which case the monomial is zero in the ring.
inline std::optional<Mod2Monomial> parse_monomial(const Tuple& t, const std::string& text) {
    Mod2Monomial m;
    std::size_t i = 0;
    const auto skip_ws = [&] {
        while (i < text.size() && text[i] == ' ') ++i;
    };
    const auto parse_int = [&]() -> std::int64_t {
        std::size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (i == start) throw std::invalid_argument("class syntax: expected integer in '" + text + "'");
        return std::stoll(text.substr(start, i - start));
    };
    bool first = true;
    while (true) {
        skip_ws();
        if (i >= text.size()) {
            if (first) throw std::invalid_argument("class syntax: empty monomial");
            break;
        }
        if (!first) {
            if (text[i] != '*') throw std::invalid_argument("class syntax: expected '*' in '" + text + "'");
            ++i;
            skip_ws();
        }
        if (text[i] == '1' && first) {
            ++i;
            skip_ws();
            if (i != text.size()) throw std::invalid_argument("class syntax: unexpected input after '1'");
            break;
        }
        if (text[i] == 'y') {
            ++i;
            std::int64_t a = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                a = parse_int();
            }
            m.ypow += a;
        } else if (text[i] == 'x') {
            ++i;
            const std::int64_t pos = parse_int();
            if (pos < 2 || pos > t.length())
                throw std::invalid_argument("class syntax: x index out of range in '" + text + "'");
            const std::uint64_t bit = std::uint64_t{1} << (pos - 2);
            if (m.xmask & bit)
                throw std::invalid_argument("class syntax: repeated x index in '" + text + "'");
            m.xmask |= bit;
        } else {
            throw std::invalid_argument("class syntax: unexpected character in '" + text + "'");
        }
        first = false;
        skip_ws();
        if (i >= text.size()) break;
    }
    if (m.ypow > t.min_entry()) return std::nullopt;
    validate_monomial(t, m);
    return m;
}

}  // namespace detail

/// Parse "y^2*x2 + x3" style input; monomials separated by '+'.
inline Mod2Class parse_class(const Tuple& t, const std::string& text) {
    Mod2Class out;
    if (text == "0") return out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t plus = text.find('+', start);
        const std::string part =
            text.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
        if (auto m = detail::parse_monomial(t, part)) out.toggle(*m);
        if (plus == std::string::npos) break;
        start = plus + 1;
    }
    return out;
}

}  // namespace ppspace
