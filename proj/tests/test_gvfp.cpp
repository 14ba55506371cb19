#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "ppspace/gvfp.hpp"
#include "ppspace/manifold.hpp"

using namespace ppspace;

TEST_CASE("normalize") {
    const Normalized a = normalize(HopfMultiple(-7, 2));
    CHECK(a.residue == 1);
    REQUIRE(a.representatives.size() == 16);
    CHECK(a.representatives[0] == 5);
    CHECK(a.representatives[1] == 9);
    CHECK(a.representatives[2] == 13);

    CHECK(normalize(HopfMultiple(-8, 1)).residue == 0);

    const Normalized c = normalize(HopfMultiple(-5, 4));
    CHECK(c.residue == 3);
    CHECK(c.representatives.front() == 11);

    for (const auto& norm : {a, c}) {
        CHECK(!norm.representatives.empty());
        for (std::size_t i = 0; i < norm.representatives.size(); ++i)
            CHECK(norm.representatives[i] > 0);
    }
}

TEST_CASE("stable_gd exact small cases") {
    for (std::int64_t i = 0; i <= 6; ++i) {
        const Bound b = stable_gd(16 * i + 3, 8);
        CHECK(b.exact);
        CHECK(b.lower == 3);
    }
    // the stably trivial class
    for (std::int64_t n : {1, 2, 3, 5, 8, 9, 12}) {
        const Bound b = stable_gd(std::int64_t{3} << phi(n), n);
        CHECK(b.exact);
        CHECK(b.lower == 0);
    }
    const Bound b72 = stable_gd(7, 2);
    CHECK(b72.exact);
    CHECK(b72.lower == 2);
    // base 9 exact table: class of 17 realizes gd 5; 33 = 1 mod 32 is the
    // class of xi itself
    CHECK(stable_gd(17, 9).lower == 5);
    CHECK(stable_gd(17, 9).exact);
    CHECK(stable_gd(33, 9).lower == 1);
    CHECK(stable_gd(33, 9).exact);
}

TEST_CASE("base 8 and 9 tables keyed on the residue") {
    for (int res = 0; res < 16; ++res) {
        const Bound b = stable_gd(res, 8);
        CHECK(b.exact);
        CHECK(b.lower == gd_table_base8[res]);
    }
    for (int res = 0; res < 32; ++res) {
        const Bound b = stable_gd(res + 5 * 32, 9);
        CHECK(b.exact);
        CHECK(b.lower == gd_table_base9[res]);
    }
}

TEST_CASE("span_multiple") {
    const Bound s = span_multiple(7, 2);
    CHECK(s.exact);
    CHECK(s.lower == 5);
    for (std::int64_t n : {1, 2, 4, 8}) {
        const std::int64_t k = std::int64_t{1} << phi(n);
        const Bound b = span_multiple(k, n);
        CHECK(b.exact);
        CHECK(b.lower == k);
    }
    const Bound t = span_multiple(16, 8);
    CHECK(t.exact);
    CHECK(t.lower == 16);
    CHECK_THROWS_AS(span_multiple(2, 2), std::domain_error);
    CHECK_THROWS_AS(span_multiple(1, 5), std::domain_error);
}

TEST_CASE("stable_gd depends only on the residue class") {
    for (std::int64_t n = 1; n <= 12; ++n) {
        const std::int64_t mod = std::int64_t{1} << phi(n);
        for (std::int64_t k = -40; k <= 40; ++k) {
            const Bound a = stable_gd(k, n);
            const Bound b = stable_gd(k + mod, n);
            CHECK(a.lower == b.lower);
            CHECK(a.upper == b.upper);
            CHECK(a.exact == b.exact);
        }
    }
}

TEST_CASE("exact for every base dimension up to 9") {
    for (std::int64_t n = 1; n <= 9; ++n)
        for (std::int64_t k = -70; k <= 70; ++k) {
            const Bound b = stable_gd(k, n);
            CHECK(b.exact);
            CHECK(b.lower == b.upper);
            CHECK(b.lower >= 0);
            CHECK(b.upper <= n);
        }
}

TEST_CASE("monotone soundness of the composition") {
    const auto sweep_kn = [](const std::function<void(std::int64_t, std::int64_t)>& fn) {
        for (std::int64_t n : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 18, 20, 21, 24})
            for (std::int64_t k = -48; k <= 48; ++k) fn(k, n);
    };
    sweep_kn([](std::int64_t k, std::int64_t n) {
        const Bound full = stable_gd(k, n);
        CHECK(full.lower <= full.upper);
        CHECK(full.exact == (full.lower == full.upper));
        for (int rule = 1; rule <= 7; ++rule) {
            const Bound single = stable_gd(k, n, RuleSet::only(rule));
            CHECK(full.contained_in(single));
        }
        const Bound general = stable_gd(k, n, RuleSet::general());
        CHECK(full.contained_in(general));
    });
}

TEST_CASE("general rules bracket the exact tables for bases 8 and 9") {
    for (int res = 0; res < 16; ++res) {
        const Bound g = stable_gd(res, 8, RuleSet::general());
        CHECK(g.contains_value(gd_table_base8[res]));
    }
    for (int res = 0; res < 32; ++res) {
        const Bound g = stable_gd(res, 9, RuleSet::general());
        CHECK(g.contains_value(gd_table_base9[res]));
    }
}

TEST_CASE("deficiency table identity for bases up to 7") {
    for (int n1 = 1; n1 <= 7; ++n1)
        for (int c = 1; c <= 8; ++c) {
            const Bound b = stable_gd(-c, n1);
            REQUIRE(b.exact);
            CHECK(n1 - b.lower == delta_table()[n1][c - 1]);
        }
}

TEST_CASE("reversed deficiency table gives the stable span of multiples") {
    // For n_1 <= 7 the stable span of the tangent class is
    // |n| - n_1 + delta(n_1, column 8 - ((|n|+r) mod 8)).
    const std::vector<std::vector<std::int64_t>> tuples = {
        {1}, {2}, {3}, {4}, {5}, {6}, {7}, {1, 1}, {2, 3}, {3, 3}, {2, 5},
        {4, 7}, {1, 2, 3}, {2, 2, 2}, {3, 4, 5}, {5, 8, 9}, {7, 7, 7, 7}};
    for (const auto& entries : tuples) {
        const Tuple t(entries);
        const std::int64_t n1 = t.min_entry();
        if (n1 > 7) continue;
        const std::int64_t k = t.total() + t.length();
        const Bound gd = stable_gd(k, n1);
        REQUIRE(gd.exact);
        const int c = static_cast<int>(k % 8);
        const int col = 8 - c;  // column labels run 7..0
        CHECK(t.total() - gd.lower ==
              t.total() - n1 + delta_table()[n1][col - 1]);
    }
}

TEST_CASE("lam lower bound matches a direct scan over representatives") {
    for (std::int64_t n : {1, 3, 5, 8, 9, 11, 12, 20, 31})
        for (std::int64_t k = -33; k <= 33; ++k) {
            const Normalized norm = normalize(HopfMultiple(k, n));
            const std::int64_t rep = norm.representatives.front();
            std::int64_t m0 = 0;
            for (std::int64_t m = n; m >= 0; --m)
                if (binom_odd(rep, m)) {
                    m0 = m;
                    break;
                }
            const Bound b = stable_gd(k, n, RuleSet::only(2));
            CHECK(b.lower == m0);
            // representative independence
            for (std::int64_t other : norm.representatives) {
                std::int64_t m0b = 0;
                for (std::int64_t m = n; m >= 0; --m)
                    if (binom_odd(other, m)) {
                        m0b = m;
                        break;
                    }
                CHECK(m0b == m0);
            }
        }
}

TEST_CASE("large base dimensions stay bit-local") {
    // phi(114) = 58 > 57: representative lists leave machine range
    CHECK_THROWS_AS(normalize(HopfMultiple(1, 114)), std::domain_error);
    CHECK_NOTHROW(normalize(HopfMultiple(1, 113)));

    // the engine still produces sound intervals from the residue digits
    const Bound b = stable_gd(-5, 127);
    CHECK(b.exact);
    CHECK(b.lower == 123);  // Bin(-5 mod 2^63) contains the digits of 123

    for (std::int64_t n : {127, 128, 200, 1 << 20})
        for (std::int64_t k : {-9, -5, -1, 1, 3, 17}) {
            const Bound bd = stable_gd(k, n);
            CHECK(bd.lower >= 0);
            CHECK(bd.lower <= bd.upper);
            CHECK(bd.upper <= n);
        }

    // digit-greedy m0 against a scan: residue digits of k < 0 with
    // phi >= 63 are the two's-complement digits
    for (std::int64_t k = -12; k <= -1; ++k) {
        const Bound b2 = stable_gd(k, 127, RuleSet::only(2));
        const std::uint64_t digits = static_cast<std::uint64_t>(k) & ((1u << 20) - 1);
        CHECK(b2.lower == oracles::largest_subset_leq_scan(digits, 127));
    }
}

TEST_CASE("low geometric dimension classification for large bases") {
    // residues 0..4 pin the value exactly
    for (std::int64_t d = 0; d <= 4; ++d) {
        const Bound b = stable_gd(d, 18, RuleSet::only(5));
        CHECK(b.exact);
        CHECK(b.lower == d);
    }
    // nu(residue) = phi(n) - 1 with n = 2 mod 8: exactly five
    REQUIRE(phi(18) == 10);
    const Bound five = stable_gd(std::int64_t{1} << 9, 18, RuleSet::only(5));
    CHECK(five.exact);
    CHECK(five.lower == 5);
    // nu(residue) = phi(n) - 2 with n = 4 mod 8: exactly five
    REQUIRE(phi(20) == 11);
    const Bound five2 = stable_gd(std::int64_t{1} << 9, 20, RuleSet::only(5));
    CHECK(five2.exact);
    CHECK(five2.lower == 5);
    // residue divisible by 4 matching no pattern: at least six
    const Bound ge6 = stable_gd(32, 18, RuleSet::only(5));
    CHECK_FALSE(ge6.exact);
    CHECK(ge6.lower == 6);
    // candidate pattern for five: no claim either way
    REQUIRE(phi(23) == 11);
    const Bound open = stable_gd(std::int64_t{1} << 10, 23, RuleSet::only(5));
    CHECK(open.lower == 0);
    CHECK(open.upper == 23);
}

TEST_CASE("no rule conflicts across a wide sweep") {
    // every exact rule must agree with every lower bound; a violation
    // throws std::logic_error out of stable_gd
    for (std::int64_t n = 1; n <= 60; ++n)
        for (std::int64_t k = -220; k <= 220; ++k) {
            const Bound b = stable_gd(k, n);
            CHECK(b.lower <= b.upper);
        }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(HopfMultiple(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(HopfMultiple(1, (std::int64_t{1} << 20) + 1), std::invalid_argument);
    CHECK_THROWS_AS(HopfMultiple(std::int64_t{1} << 41, 5), std::invalid_argument);
    CHECK_NOTHROW(HopfMultiple(-40, 1 << 20));
}

TEST_CASE("provenance is populated and deterministic") {
    const Bound a = stable_gd(-7, 2);
    const Bound b = stable_gd(-7, 2);
    CHECK(a.provenance == b.provenance);
    REQUIRE(!a.provenance.empty());
    CHECK(a.provenance.front().rfind("R0:", 0) == 0);
}
