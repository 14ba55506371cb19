#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "binarith.hpp"
#include "gvfp.hpp"
#include "mod2cohomology.hpp"
#include "splitting.hpp"
#include "tuple.hpp"

namespace ppspace {

/// Which criterion settled the span interval.
enum class SpanCase {
    AllEvenZero,        // every n_i even: chi /= 0, span = 0
    EvenDimKoschorke,   // |n| even with some odd entry: span = stable span
    Dim3Mod8Koschorke,  // |n| = 3 mod 8, r = 1 mod 4: span = stable span
    Parallelizable,     // trivial tangent bundle: span = |n|
    Undecided,          // honest interval [1, stablespan.upper]
};

inline const char* to_string(SpanCase c) {
    switch (c) {
        case SpanCase::AllEvenZero: return "all-even-zero";
        case SpanCase::EvenDimKoschorke: return "even-dim-koschorke";
        case SpanCase::Dim3Mod8Koschorke: return "dim3mod8-koschorke";
        case SpanCase::Parallelizable: return "parallelizable";
        case SpanCase::Undecided: return "undecided";
    }
    return "?";
}

struct SpanResult {
    Bound span;
    Bound stablespan;
    SpanCase exactness_case = SpanCase::Undecided;
};

/// P_n is orientable exactly when |n| + r is even.
inline bool orientable(const Tuple& t) { return (t.total() + t.length()) % 2 == 0; }

/// P_n is parallelizable exactly when nu(|n|+r) >= phi(n_1) and some entry
/// is odd.
inline bool parallelizable(const Tuple& t) {
    bool some_odd = false;
    for (std::int64_t n : t.entries())
        if (n % 2 != 0) some_odd = true;
    return some_odd && nu(t.total() + t.length()) >= phi(t.min_entry());
}

/// Immersion dimension: |n| plus the geometric dimension of the stable
/// normal bundle -(|n|+r) xi_{n_1}, floored at one extra dimension for a
/// closed manifold. Always lands in [|n|+1, |n|+n_1].
inline Bound imm_bounds(const Tuple& t, const RuleSet& rules = RuleSet::all()) {
    const std::int64_t c = t.total() + t.length();
    Bound gd = stable_gd(HopfMultiple(-c, t.min_entry()), rules);
    Bound out;
    out.lower = t.total() + std::max<std::int64_t>(gd.lower, 1);
    out.upper = t.total() + std::max<std::int64_t>(gd.upper, 1);
    out.exact = (out.lower == out.upper);
    out.provenance = std::move(gd.provenance);
    out.provenance.push_back(detail::describe("imm:dim-plus-normal-gd", {{"k", -c}}));
    return out;
}

/// Stable span: |n| - gd((|n|+r) xi_{n_1}); at least |n| - n_1.
inline Bound stablespan_bounds(const Tuple& t, const RuleSet& rules = RuleSet::all()) {
    const std::int64_t c = t.total() + t.length();
    Bound gd = stable_gd(HopfMultiple(c, t.min_entry()), rules);
    Bound out;
    out.lower = t.total() - gd.upper;
    out.upper = t.total() - gd.lower;
    out.exact = (out.lower == out.upper);
    out.provenance = std::move(gd.provenance);
    out.provenance.push_back(detail::describe("stablespan:dim-minus-gd", {{"k", c}}));
    return out;
}

/// Span, settled case by case; when no criterion applies the result is the
/// honest interval [1, stablespan.upper] (1 because chi vanishes).
inline SpanResult span_bounds(const Tuple& t, const RuleSet& rules = RuleSet::all()) {
    SpanResult res;
    res.stablespan = stablespan_bounds(t, rules);

    bool all_even = true;
    for (std::int64_t n : t.entries())
        if (n % 2 != 0) all_even = false;

    if (all_even) {
        res.exactness_case = SpanCase::AllEvenZero;
        res.span = Bound{0, 0, true, {"span:all-even chi nonzero"}};
        return res;
    }
    if (t.total() % 2 == 0) {
        res.exactness_case = SpanCase::EvenDimKoschorke;
        res.span = res.stablespan;
        res.span.provenance.push_back("span:even-dim equals stablespan");
        return res;
    }
    if (t.total() % 8 == 3 && t.length() % 4 == 1) {
        res.exactness_case = SpanCase::Dim3Mod8Koschorke;
        res.span = res.stablespan;
        res.span.provenance.push_back("span:dim-3-mod-8 equals stablespan");
        return res;
    }
    if (parallelizable(t)) {
        res.exactness_case = SpanCase::Parallelizable;
        res.span = Bound{t.total(), t.total(), true, {"span:parallelizable"}};
        return res;
    }
    res.exactness_case = SpanCase::Undecided;
    res.span = Bound{1, res.stablespan.upper, false, res.stablespan.provenance};
    res.span.exact = (res.span.lower == res.span.upper);
    res.span.provenance.push_back("span:undecided lower 1 from vanishing chi");
    return res;
}

/// The deficiency table: for n_1 <= 7 the immersion dimension is
/// |n| + n_1 - delta(n_1, |n|+r mod 8) whenever the entry is below n_1
/// (rows index n_1 = 0..7, columns |n|+r = 1..8 mod 8). Kept as a frozen
/// cross-check against the rule engine.
inline const std::array<std::array<int, 8>, 8>& delta_table() {
    static const std::array<std::array<int, 8>, 8> table = {{
        {0, 0, 0, 0, 0, 0, 0, 0},
        {0, 1, 0, 1, 0, 1, 0, 1},
        {0, 0, 1, 2, 0, 0, 1, 2},
        {0, 1, 2, 3, 0, 1, 2, 3},
        {0, 0, 0, 0, 1, 2, 3, 4},
        {0, 1, 0, 1, 2, 3, 4, 5},
        {0, 0, 1, 2, 3, 4, 5, 6},
        {0, 1, 2, 3, 4, 5, 6, 7},
    }};
    return table;
}

/// Everything the calculator knows about one space, cross-consistent by
/// construction: each field is exactly the output of its defining
/// operation.
struct InvariantReport {
    explicit InvariantReport(Tuple t) : tuple(std::move(t)) {}

    Tuple tuple;
    std::int64_t dimension = 0;
    bool orientable = false;
    std::uint64_t euler_char = 0;
    std::optional<int> kervaire_semichar;  // only in odd dimensions
    bool parallelizable = false;
    Bound imm;
    SpanResult span_result;
    std::vector<int> sphere_factor_positions;
    std::vector<std::int64_t> sphere_factor_remaining;
    std::uint64_t wedge_summand_count = 0;
    std::vector<std::uint64_t> mod2_ranks;
};

inline InvariantReport report(const Tuple& t) {
    InvariantReport rep(t);
    rep.dimension = t.total();
    rep.orientable = orientable(t);
    rep.euler_char = euler_char(t);
    if (t.total() % 2 != 0) rep.kervaire_semichar = kervaire_semichar(t);
    rep.parallelizable = ppspace::parallelizable(t);
    rep.imm = imm_bounds(t);
    rep.span_result = span_bounds(t);
    SphereFactors sf = sphere_factors(t);
    rep.sphere_factor_positions = std::move(sf.t_positions);
    rep.sphere_factor_remaining = sf.remaining.entries();
    rep.wedge_summand_count = ppspace::wedge_summand_count(t);
    rep.mod2_ranks = poincare_poly(t);
    return rep;
}

}  // namespace ppspace
