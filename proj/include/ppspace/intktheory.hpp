#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "binarith.hpp"
#include "tuple.hpp"

namespace ppspace {

/// Finitely generated abelian group with 2-primary torsion only: a free
/// rank plus a multiset of cyclic summands Z/2^e, stored by exponent and
/// kept sorted ascending.
struct AbelianGroup {
    std::uint64_t free_rank = 0;
    std::vector<std::uint64_t> torsion_exponents;

    static constexpr std::uint64_t max_summands = std::uint64_t{1} << 20;

    void add_torsion(std::uint64_t e, std::uint64_t count = 1) {
        if (e == 0 || count == 0) return;
        if (count > max_summands || torsion_exponents.size() + count > max_summands)
            throw std::domain_error("abelian group: too many torsion summands to enumerate");
        torsion_exponents.insert(torsion_exponents.end(), count, e);
    }

    void normalize() { std::sort(torsion_exponents.begin(), torsion_exponents.end()); }

    bool trivial() const { return free_rank == 0 && torsion_exponents.empty(); }

    bool operator==(const AbelianGroup& o) const {
        return free_rank == o.free_rank && torsion_exponents == o.torsion_exponents;
    }
    bool operator!=(const AbelianGroup& o) const { return !(*this == o); }

    /// "Z^a + Z/2^e + ..." rendering; "0" for the zero group.
    std::string to_string() const {
        std::string s;
        if (free_rank == 1) s = "Z";
        else if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
        for (std::uint64_t e : torsion_exponents) {
            if (!s.empty()) s += " + ";
            s += (e == 1) ? "Z/2" : "Z/2^" + std::to_string(e);
        }
        return s.empty() ? "0" : s;
    }
};

/// Shape data shared by the integral and K-theory descriptions:
/// n_1 = 2 m_1 + eps, and the positions i > 1 split by parity of n_i.
struct TupleShape {
    std::int64_t m1 = 0;
    int eps = 0;
    std::uint64_t even_mask = 0;  // bit i-2 for positions i > 1 with n_i even
    std::uint64_t odd_mask = 0;   // bit i-2 for positions i > 1 with n_i odd
};

inline TupleShape classify(const Tuple& t) {
    TupleShape s;
    s.m1 = t.min_entry() / 2;
    s.eps = static_cast<int>(t.min_entry() % 2);
    for (int pos = 2; pos <= t.length(); ++pos) {
        const std::uint64_t bit = std::uint64_t{1} << (pos - 2);
        if (t.entry(pos) % 2 == 0) s.even_mask |= bit;
        else s.odd_mask |= bit;
    }
    return s;
}

namespace detail {

inline std::int64_t mask_degree(const Tuple& t, std::uint64_t mask) {
    std::int64_t d = 0;
    for (std::uint64_t m = mask; m;) {
        d += t.entry(std::countr_zero(m) + 2);
        m &= m - 1;
    }
    return d;
}

inline std::vector<int> mask_positions(std::uint64_t mask) {
    std::vector<int> out;
    for (std::uint64_t m = mask; m;) {
        out.push_back(std::countr_zero(m) + 2);
        m &= m - 1;
    }
    return out;
}

/// Walk subsets of positions 2..r with entry sum <= limit, reporting
/// (mask, sum) at every node of the inclusion tree.
template <typename F>
inline void subsets_bounded(const Tuple& t, int pos, std::uint64_t mask,
                            std::int64_t sum, std::int64_t limit, F&& fn) {
    fn(mask, sum);
    for (int p = pos; p <= t.length(); ++p) {
        const std::int64_t n = t.entry(p);
        if (sum + n > limit) break;  // entries ascend, so later ones are no smaller
        subsets_bounded(t, p + 1, mask | (std::uint64_t{1} << (p - 2)), sum + n, limit, fn);
    }
}

}  // namespace detail

/// Integral cohomology group in degree d, assembled from three families of
/// generators tensored with the exterior algebra on the odd x_{n_i}:
///
///   unit family   z^j . prod_S x  (S even subset of the even positions):
///                 Z for j = 0, one Z/2 for each 1 <= j <= m_1;
///   top family    2 x_{n_1} . prod_S x with |S| /= eps mod 2: Z;
///   p family      z^j . p_S (S odd, 0 <= j < m_1 + eps): Z/2,
///                 where |p_S| = 1 + sum over S.
inline AbelianGroup integral_group(const Tuple& t, std::int64_t d) {
    AbelianGroup g;
    if (d < 0 || d > t.total()) return g;
    const TupleShape sh = classify(t);
    const std::int64_t n1 = t.min_entry();
    detail::subsets_bounded(t, 2, 0, 0, d, [&](std::uint64_t mask, std::int64_t sum) {
        const int s_par = std::popcount(mask & sh.even_mask) % 2;
        const std::int64_t rest = d - sum;
        if (s_par == 0) {
            // unit family: rest = 2j
            if (rest % 2 == 0 && rest / 2 <= sh.m1) {
                if (rest == 0) g.free_rank += 1;
                else g.add_torsion(1);
            }
            // top family needs |S| == 1 - eps mod 2, handled in the other branch
            if (sh.eps == 1 && rest == n1) g.free_rank += 1;
        } else {
            if (sh.eps == 0 && rest == n1) g.free_rank += 1;
            // p family: rest = 2j + 1
            if (rest % 2 == 1 && (rest - 1) / 2 < sh.m1 + sh.eps) g.add_torsion(1);
        }
    });
    g.normalize();
    return g;
}

/// Rank of H^d with rational or odd-primary field coefficients: the number
/// of subsets I of {1..r} with sum of (n_i + 1) even and sum of n_i equal
/// to d. Independent of the (valid) characteristic.
inline std::uint64_t field_rank(const Tuple& t, std::int64_t d, std::int64_t characteristic) {
    if (characteristic == 2)
        throw std::domain_error("field_rank: use the mod-2 module for characteristic 2");
    if (characteristic != 0) {
        if (characteristic < 3 || characteristic % 2 == 0)
            throw std::domain_error("field_rank: characteristic must be 0 or an odd prime");
        for (std::int64_t f = 3; f * f <= characteristic; f += 2)
            if (characteristic % f == 0)
                throw std::domain_error("field_rank: characteristic must be 0 or an odd prime");
    }
    if (d < 0 || d > t.total()) return 0;
    std::uint64_t count = 0;
    // DFS over all positions, tracking the parity of sum (n_i + 1).
    const auto rec = [&](auto&& self, int pos, std::int64_t sum, int par) -> void {
        if (sum == d && par == 0) ++count;
        for (int p = pos; p <= t.length(); ++p) {
            const std::int64_t n = t.entry(p);
            if (sum + n > d) break;
            self(self, p + 1, sum + n, (par + static_cast<int>((n + 1) % 2)) % 2);
        }
    };
    rec(rec, 1, 0, 0);
    return count;
}

/// The two Z/2-graded K-theory groups (K^0, K^1). Families mirror the
/// integral description: the unit family contributes Z + Z/2^{m_1} per even
/// S, the top family Z, and each p_S a Z/2^{m_1+eps}; tensoring with an
/// odd exterior generator flips the grading.
inline std::pair<AbelianGroup, AbelianGroup> k_groups(const Tuple& t) {
    const TupleShape sh = classify(t);
    const int ne = std::popcount(sh.even_mask);
    const int no = std::popcount(sh.odd_mask);
    const std::uint64_t s_even = ne ? std::uint64_t{1} << (ne - 1) : 1;
    const std::uint64_t s_odd = ne ? std::uint64_t{1} << (ne - 1) : 0;
    const std::uint64_t s_ne = ne ? std::uint64_t{1} << (ne - 1)
                                  : (sh.eps == 1 ? 1 : 0);
    const std::uint64_t o_even = no ? std::uint64_t{1} << (no - 1) : 1;
    const std::uint64_t o_odd = no ? std::uint64_t{1} << (no - 1) : 0;

    AbelianGroup k0, k1;
    // unit family sits in grading |O|
    k0.free_rank += s_even * o_even;
    k1.free_rank += s_even * o_odd;
    if (sh.m1 >= 1) {
        k0.add_torsion(static_cast<std::uint64_t>(sh.m1), s_even * o_even);
        k1.add_torsion(static_cast<std::uint64_t>(sh.m1), s_even * o_odd);
    }
    // top family sits in grading eps + |O|
    k0.free_rank += s_ne * (sh.eps ? o_odd : o_even);
    k1.free_rank += s_ne * (sh.eps ? o_even : o_odd);
    // p family sits in grading 1 + |O|
    const std::uint64_t pexp = static_cast<std::uint64_t>(sh.m1 + sh.eps);
    k0.add_torsion(pexp, s_odd * o_odd);
    k1.add_torsion(pexp, s_odd * o_even);
    k0.normalize();
    k1.normalize();
    return {k0, k1};
}

// ---- generators and products ----

enum class GenFamily { Unit, Top, P };

/// Generator of the integral cohomology ring in the family presentation.
/// Unit: z^zexp . prod_S x . prod_O x, S an even subset of even positions.
/// Top:  2 x_{n_1} . prod_S x . prod_O x, |S| /= eps mod 2.
/// P:    z^zexp . p_S . prod_O x, S odd.
struct IntGenerator {
    GenFamily family = GenFamily::Unit;
    std::int64_t zexp = 0;
    std::uint64_t smask = 0;
    std::uint64_t omask = 0;

    IntGenerator() = default;
    IntGenerator(const Tuple& t, GenFamily f, std::int64_t z, std::uint64_t s,
                 std::uint64_t o)
        : family(f), zexp(z), smask(s), omask(o) {
        const TupleShape sh = classify(t);
        if ((s & ~sh.even_mask) != 0)
            throw std::domain_error("generator: S must consist of even positions");
        if ((o & ~sh.odd_mask) != 0)
            throw std::domain_error("generator: O must consist of odd positions");
        const int s_par = std::popcount(s) % 2;
        switch (f) {
            case GenFamily::Unit:
                if (s_par != 0) throw std::domain_error("generator: unit family needs |S| even");
                if (z < 0 || z > sh.m1) throw std::domain_error("generator: z power out of range");
                break;
            case GenFamily::Top:
                if (s_par == sh.eps) throw std::domain_error("generator: top family needs |S| /= eps");
                if (z != 0) throw std::domain_error("generator: top family carries no z power");
                break;
            case GenFamily::P:
                if (s_par != 1) throw std::domain_error("generator: p family needs |S| odd");
                if (z < 0 || z >= sh.m1 + sh.eps)
                    throw std::domain_error("generator: z power out of range");
                break;
        }
    }

    bool operator==(const IntGenerator& o) const {
        return family == o.family && zexp == o.zexp && smask == o.smask && omask == o.omask;
    }

    std::int64_t degree(const Tuple& t) const {
        std::int64_t d = 2 * zexp + detail::mask_degree(t, smask) +
                         detail::mask_degree(t, omask);
        if (family == GenFamily::Top) d += t.min_entry();
        if (family == GenFamily::P) d += 1;
        return d;
    }

    /// Torsion order exponent; 0 means infinite order.
    std::uint64_t torsion_exponent() const {
        if (family == GenFamily::P) return 1;
        if (family == GenFamily::Unit && zexp >= 1) return 1;
        return 0;
    }

    std::string to_string() const {
        std::string s;
        const auto append = [&s](const std::string& part) {
            if (!s.empty()) s += '*';
            s += part;
        };
        if (zexp == 1) append("z");
        else if (zexp > 1) append("z^" + std::to_string(zexp));
        if (family == GenFamily::Top) append("2x1");
        if (family == GenFamily::P) {
            std::string p = "p{";
            bool first = true;
            for (int pos : detail::mask_positions(smask)) {
                if (!first) p += ',';
                p += std::to_string(pos);
                first = false;
            }
            append(p + "}");
            for (int pos : detail::mask_positions(omask)) append("x" + std::to_string(pos));
            return s;
        }
        for (int pos : detail::mask_positions(smask)) append("x" + std::to_string(pos));
        for (int pos : detail::mask_positions(omask)) append("x" + std::to_string(pos));
        return s.empty() ? "1" : s;
    }
};

/// K-theory generator; same subset data with the z-powers collapsed. The
/// unit family optionally carries the factor g = 1 - xi of order 2^{m_1}.
struct KGenerator {
    GenFamily family = GenFamily::Unit;
    bool with_g = false;
    std::uint64_t smask = 0;
    std::uint64_t omask = 0;

    KGenerator() = default;
    KGenerator(const Tuple& t, GenFamily f, bool g, std::uint64_t s, std::uint64_t o)
        : family(f), with_g(g), smask(s), omask(o) {
        const TupleShape sh = classify(t);
        if ((s & ~sh.even_mask) != 0)
            throw std::domain_error("generator: S must consist of even positions");
        if ((o & ~sh.odd_mask) != 0)
            throw std::domain_error("generator: O must consist of odd positions");
        if (g && f != GenFamily::Unit)
            throw std::domain_error("generator: only the unit family carries g");
        if (g && sh.m1 == 0)
            throw std::domain_error("generator: g vanishes when m_1 = 0");
        const int s_par = std::popcount(s) % 2;
        switch (f) {
            case GenFamily::Unit:
                if (s_par != 0) throw std::domain_error("generator: unit family needs |S| even");
                break;
            case GenFamily::Top:
                if (s_par == sh.eps) throw std::domain_error("generator: top family needs |S| /= eps");
                break;
            case GenFamily::P:
                if (s_par != 1) throw std::domain_error("generator: p family needs |S| odd");
                break;
        }
    }

    bool operator==(const KGenerator& o) const {
        return family == o.family && with_g == o.with_g && smask == o.smask &&
               omask == o.omask;
    }

    /// Z/2 grading: family base plus the number of odd exterior factors.
    int grading(const Tuple& t) const {
        int base = 0;
        if (family == GenFamily::Top) base = static_cast<int>(t.min_entry() % 2);
        if (family == GenFamily::P) base = 1;
        return (base + std::popcount(omask)) % 2;
    }

    /// Torsion order exponent; 0 means infinite order.
    std::uint64_t torsion_exponent(const Tuple& t) const {
        const TupleShape sh = classify(t);
        if (family == GenFamily::P) return static_cast<std::uint64_t>(sh.m1 + sh.eps);
        if (family == GenFamily::Unit && with_g) return static_cast<std::uint64_t>(sh.m1);
        return 0;
    }

    std::string to_string() const {
        IntGenerator shadow;
        shadow.family = family;
        shadow.smask = smask;
        shadow.omask = omask;
        std::string s = shadow.to_string();
        if (with_g) s = (s == "1") ? "g" : "g*" + s;
        return s;
    }
};

template <typename Gen>
struct Term {
    std::int64_t coeff = 0;
    Gen gen;
};

namespace detail {

/// Parity sign of merging two ascending runs of odd generators:
/// (-1)^{#{(a,b) : a in first, b in second, a > b}}.
inline int merge_sign(std::uint64_t first, std::uint64_t second) {
    int inversions = 0;
    for (std::uint64_t m = first; m;) {
        const int e = std::countr_zero(m);
        inversions += std::popcount(second & ((std::uint64_t{1} << e) - 1));
        m &= m - 1;
    }
    return (inversions % 2) ? -1 : 1;
}

}  // namespace detail

/// Ring product of two integral generators. Only the products stated by the
/// family presentation are nonzero: z-multiplication inside the truncated
/// polynomial parts, x-multiplication moving between families, and
/// x_i x_j p_S = p_{S u {i,j}}; everything else is zero.
inline std::vector<Term<IntGenerator>> integral_product(const Tuple& t,
                                                        const IntGenerator& g1,
                                                        const IntGenerator& g2) {
    const TupleShape sh = classify(t);
    if (g1.omask & g2.omask) return {};  // odd exterior square
    if (g1.smask & g2.smask) return {};  // even x squares are not among the stated products
    const std::uint64_t smask = g1.smask | g2.smask;
    const std::uint64_t omask = g1.omask | g2.omask;

    const auto unit_unit = [&]() -> std::vector<Term<IntGenerator>> {
        const std::int64_t z = g1.zexp + g2.zexp;
        if (z > sh.m1) return {};
        IntGenerator gen(t, GenFamily::Unit, z, smask, omask);
        const std::int64_t coeff =
            (z >= 1) ? 1 : detail::merge_sign(g1.omask, g2.omask);
        return {{coeff, gen}};
    };
    const auto unit_top = [&](const IntGenerator& unit, bool unit_first)
        -> std::vector<Term<IntGenerator>> {
        if (unit.zexp >= 1) return {};  // 2z = 0 kills the doubled generator
        IntGenerator gen(t, GenFamily::Top, 0, smask, omask);
        int sign = detail::merge_sign(g1.omask, g2.omask);
        // x_{n_1} is odd for eps = 1 and has to cross the left factor's O.
        if (unit_first && sh.eps == 1 && std::popcount(unit.omask) % 2 != 0) sign = -sign;
        return {{sign, gen}};
    };
    const auto unit_p = [&]() -> std::vector<Term<IntGenerator>> {
        const std::int64_t z = g1.zexp + g2.zexp;
        if (z >= sh.m1 + sh.eps) return {};
        IntGenerator gen(t, GenFamily::P, z, smask, omask);
        return {{1, gen}};  // order 2, so signs collapse
    };

    switch (g1.family) {
        case GenFamily::Unit:
            if (g2.family == GenFamily::Unit) return unit_unit();
            if (g2.family == GenFamily::Top) return unit_top(g1, true);
            return unit_p();
        case GenFamily::Top:
            if (g2.family == GenFamily::Unit) return unit_top(g2, false);
            return {};  // top*top and top*p are unstated, hence zero
        case GenFamily::P:
            if (g2.family == GenFamily::Unit) return unit_p();
            return {};
    }
    return {};
}

/// Ring product of two K-theory generators: g^2 = 2g, g p_S = 2 p_S,
/// x_i x_j p_S = p_{S u {i,j}} and the obvious x products; all other
/// products vanish. Torsion coefficients reduce into [0, 2^e) when the
/// order fits machine range.
inline std::vector<Term<KGenerator>> k_product(const Tuple& t, const KGenerator& g1,
                                               const KGenerator& g2) {
    const TupleShape sh = classify(t);
    if (g1.omask & g2.omask) return {};
    if (g1.smask & g2.smask) return {};
    const std::uint64_t smask = g1.smask | g2.smask;
    const std::uint64_t omask = g1.omask | g2.omask;

    const auto reduced = [&](std::int64_t coeff, const KGenerator& gen)
        -> std::vector<Term<KGenerator>> {
        const std::uint64_t e = gen.torsion_exponent(t);
        if (e >= 1 && e <= 62) {
            const std::int64_t order = std::int64_t{1} << e;
            coeff = ((coeff % order) + order) % order;
        }
        if (coeff == 0) return {};
        return {{coeff, gen}};
    };

    switch (g1.family) {
        case GenFamily::Unit:
            if (g2.family == GenFamily::Unit) {
                KGenerator gen(t, GenFamily::Unit, g1.with_g || g2.with_g, smask, omask);
                std::int64_t coeff = (g1.with_g && g2.with_g) ? 2 : 1;
                coeff *= detail::merge_sign(g1.omask, g2.omask);
                return reduced(coeff, gen);
            }
            if (g2.family == GenFamily::Top) {
                if (g1.with_g) return {};
                KGenerator gen(t, GenFamily::Top, false, smask, omask);
                int sign = detail::merge_sign(g1.omask, g2.omask);
                if (sh.eps == 1 && std::popcount(g1.omask) % 2 != 0) sign = -sign;
                return {{sign, gen}};
            }
            {
                KGenerator gen(t, GenFamily::P, false, smask, omask);
                std::int64_t coeff = g1.with_g ? 2 : 1;
                int sign = detail::merge_sign(g1.omask, g2.omask);
                if (std::popcount(g1.omask) % 2 != 0) sign = -sign;  // p crosses O_1
                return reduced(coeff * sign, gen);
            }
        case GenFamily::Top:
            if (g2.family == GenFamily::Unit) {
                if (g2.with_g) return {};
                KGenerator gen(t, GenFamily::Top, false, smask, omask);
                return {{detail::merge_sign(g1.omask, g2.omask), gen}};
            }
            return {};
        case GenFamily::P:
            if (g2.family == GenFamily::Unit) {
                KGenerator gen(t, GenFamily::P, false, smask, omask);
                std::int64_t coeff = g2.with_g ? 2 : 1;
                return reduced(coeff * detail::merge_sign(g1.omask, g2.omask), gen);
            }
            return {};
    }
    return {};
}

}  // namespace ppspace
