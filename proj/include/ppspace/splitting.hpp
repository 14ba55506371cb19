#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "binarith.hpp"
#include "mod2cohomology.hpp"
#include "tuple.hpp"

namespace ppspace {

/// One wedge summand of the suspension: the stunted projective space
/// P_{bottom}^{top} shifted by `desuspension`, generated by the subtuple u
/// of positions in {2..r}. After the shift its cells occupy dimensions
/// usum+1 .. usum+n_1+1; in particular top - bottom = n_1 for every
/// summand. The empty subtuple names the distinguished summand P_0^{n_1}
/// with a cell in dimension 0.
struct StuntedSummand {
    std::vector<int> u_positions;
    std::int64_t usum = 0;
    int ell = 0;
    int desuspension = 1;
    std::int64_t bottom = 0;
    std::int64_t top = 0;

    bool operator==(const StuntedSummand& o) const {
        return u_positions == o.u_positions && usum == o.usum && ell == o.ell &&
               desuspension == o.desuspension && bottom == o.bottom && top == o.top;
    }
};

namespace detail {

constexpr int max_enumerated_length = 24;

inline StuntedSummand make_summand(const Tuple& t, const std::vector<int>& positions,
                                   std::int64_t usum) {
    StuntedSummand s;
    s.u_positions = positions;
    s.usum = usum;
    s.ell = static_cast<int>(positions.size());
    s.desuspension = 1 - s.ell;
    s.bottom = usum + s.ell;
    s.top = t.min_entry() + usum + s.ell;
    return s;
}

inline void summands_rec(const Tuple& t, int pos, std::vector<int>& current,
                         std::int64_t usum, std::vector<StuntedSummand>& out) {
    out.push_back(make_summand(t, current, usum));
    for (int p = pos; p <= t.length(); ++p) {
        current.push_back(p);
        summands_rec(t, p + 1, current, usum + t.entry(p), out);
        current.pop_back();
    }
}

}  // namespace detail

/// Number of wedge summands, 2^{r-1}.
inline std::uint64_t wedge_summand_count(const Tuple& t) {
    return std::uint64_t{1} << (t.length() - 1);
}

/// All 2^{r-1} summands, one per subset of positions {2..r}, in subset
/// lexicographic order.
inline std::vector<StuntedSummand> wedge_summands(const Tuple& t) {
    if (t.length() > detail::max_enumerated_length)
        throw std::domain_error("wedge_summands: too many summands to enumerate");
    std::vector<StuntedSummand> out;
    out.reserve(static_cast<std::size_t>(wedge_summand_count(t)));
    std::vector<int> current;
    detail::summands_rec(t, 2, current, 0, out);
    return out;
}

/// Bookkeeping check of the splitting against the mod-2 ranks: the multiset
/// of suspended cell dimensions over all summands must equal the multiset
/// of basis degrees shifted up by one. Returning false signals a bug.
inline bool splitting_poincare_check(const Tuple& t) {
    std::map<std::int64_t, std::uint64_t> cells;
    for (const auto& s : wedge_summands(t))
        for (std::int64_t j = 0; j <= t.min_entry(); ++j) ++cells[s.usum + 1 + j];
    const auto ranks = poincare_poly(t);
    std::map<std::int64_t, std::uint64_t> shifted;
    for (std::size_t d = 0; d < ranks.size(); ++d)
        if (ranks[d]) shifted[static_cast<std::int64_t>(d) + 1] = ranks[d];
    return cells == shifted;
}

/// Sphere factor split: T collects the positions i > 1 whose sphere splits
/// off as a product factor, which happens exactly when nu(n_i + 1) >=
/// phi(n_1); `remaining` keeps everything else (always including n_1).
struct SphereFactors {
    std::vector<int> t_positions;
    Tuple remaining;
};

inline SphereFactors sphere_factors(const Tuple& t) {
    std::vector<int> split;
    std::vector<std::int64_t> rest{t.min_entry()};
    const std::int64_t threshold = phi(t.min_entry());
    for (int pos = 2; pos <= t.length(); ++pos) {
        if (nu(t.entry(pos) + 1) >= threshold) split.push_back(pos);
        else rest.push_back(t.entry(pos));
    }
    return {std::move(split), Tuple(std::move(rest))};
}

/// Decision form of the criterion for a single position i > 1.
inline bool splits_off(const Tuple& t, int pos) {
    if (pos < 2 || pos > t.length())
        throw std::out_of_range("splits_off: position out of range");
    return nu(t.entry(pos) + 1) >= phi(t.min_entry());
}

/// The sphere bundle of k copies of the canonical line bundle over P_n is
/// the projective product space on (n_1,...,n_r,k-1); requires k >= 2 so
/// the new entry stays positive.
inline Tuple sphere_bundle(const Tuple& t, std::int64_t k) {
    if (k < 2) throw std::domain_error("sphere_bundle: requires k >= 2");
    std::vector<std::int64_t> entries = t.entries();
    entries.push_back(k - 1);
    return Tuple(std::move(entries));
}

}  // namespace ppspace
