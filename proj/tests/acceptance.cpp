// Acceptance suite: every criterion is an exact integer statement, so all
// comparisons are equalities. Prints one PASS/FAIL line per criterion and
// exits with the number of failures.

#include <cstdio>
#include <functional>
#include <random>
#include <map>
#include <tuple>
#include <vector>

#include "sweep.hpp"
#include "ppspace/manifold.hpp"
#include "ppspace/intktheory.hpp"

using namespace ppspace;

namespace {

int failures = 0;

void criterion(int number, const char* name, const std::function<bool()>& body) {
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        std::printf("FAIL %2d %s (exception: %s)\n", number, name, e.what());
        ++failures;
        return;
    }
    std::printf("%s %2d %s\n", ok ? "PASS" : "FAIL", number, name);
    if (!ok) ++failures;
}

std::vector<Mod2Monomial> all_basis(const Tuple& t) {
    std::vector<Mod2Monomial> out;
    for (std::int64_t d = 0; d <= t.total(); ++d)
        for (const auto& m : basis(t, d)) out.push_back(m);
    return out;
}

}  // namespace

int main() {
    criterion(1, "deficiency table reproduced exactly (56 entries)", [] {
        int matched = 0;
        for (int n1 = 1; n1 <= 7; ++n1)
            for (int c = 1; c <= 8; ++c) {
                const Bound b = stable_gd(-c, n1);
                if (!b.exact) return false;
                if (n1 - b.lower != delta_table()[n1][c - 1]) return false;
                ++matched;
            }
        return matched == 56;
    });

    criterion(2, "general rules bracket the exact tables for bases 8 and 9", [] {
        for (int res = 0; res < 16; ++res)
            if (!stable_gd(res, 8, RuleSet::general()).contains_value(gd_table_base8[res]))
                return false;
        for (int res = 0; res < 32; ++res)
            if (!stable_gd(res, 9, RuleSet::general()).contains_value(gd_table_base9[res]))
                return false;
        return true;
    });

    criterion(3, "immersion dimension exact whenever min entry <= 9", [] {
        bool ok = true;
        sweep::tuples(5, 12, [&](const Tuple& t) {
            if (t.min_entry() <= 9 && !imm_bounds(t).exact) ok = false;
        });
        return ok;
    });

    criterion(4, "classical sanity values", [] {
        return imm_bounds(Tuple{1, 1}).exact && imm_bounds(Tuple{1, 1}).lower == 3 &&
               imm_bounds(Tuple{3}).exact && imm_bounds(Tuple{3}).lower == 4 &&
               imm_bounds(Tuple{4}).exact && imm_bounds(Tuple{4}).lower == 7 &&
               parallelizable(Tuple{1, 1}) && parallelizable(Tuple{3}) &&
               parallelizable(Tuple{7}) && !parallelizable(Tuple{2, 4});
    });

    criterion(5, "mod-2 ranks match the cell counts", [] {
        bool ok = true;
        sweep::tuples(4, 8, [&](const Tuple& t) {
            const auto ranks = poincare_poly(t);
            std::uint64_t total = 0;
            for (std::int64_t d = 0; d <= t.total(); ++d) {
                if (ranks[d] != basis(t, d).size()) ok = false;
                total += ranks[d];
            }
            const std::uint64_t expected =
                static_cast<std::uint64_t>(t.min_entry() + 1) << (t.length() - 1);
            if (total != expected) ok = false;
        });
        return ok;
    });

    criterion(6, "integral, rational and K-theory agree with mod 2", [] {
        bool ok = true;
        sweep::tuples(4, 8, [&](const Tuple& t) {
            const auto ranks = poincare_poly(t);
            std::int64_t alternating = 0;
            for (std::int64_t d = 0; d <= t.total(); ++d) {
                const AbelianGroup now = integral_group(t, d);
                const AbelianGroup next = integral_group(t, d + 1);
                if (ranks[d] != now.free_rank + now.torsion_exponents.size() +
                                    next.torsion_exponents.size())
                    ok = false;
                const std::uint64_t rat = field_rank(t, d, 0);
                if (now.free_rank != rat) ok = false;
                alternating += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(rat);
            }
            const auto [k0, k1] = k_groups(t);
            const std::uint64_t chi = euler_char(t);
            if (static_cast<std::uint64_t>(alternating) != chi) ok = false;
            if (k0.free_rank - k1.free_rank != chi) ok = false;
        });
        return ok;
    });

    criterion(7, "steenrod operation suite", [] {
        // identity, unstability and the top square on a compact family
        bool ok = true;
        sweep::tuples(3, 6, [&](const Tuple& t) {
            for (const auto& m : all_basis(t)) {
                const Mod2Class u(m);
                const std::int64_t d = degree(t, m);
                if (sq(t, 0, u) != u) ok = false;
                if (!sq(t, d + 1, u).zero() || !sq(t, d + 3, u).zero()) ok = false;
                if (sq(t, d, u) != multiply(t, u, u)) ok = false;
            }
        });
        if (!ok) return false;

        // Cartan on 500 random homogeneous pairs
        std::mt19937 rng(1729);
        const std::vector<Tuple> pool = {Tuple{2, 3},    Tuple{3, 5},    Tuple{2, 2},
                                         Tuple{1, 2, 4}, Tuple{4, 4},    Tuple{2, 4, 6},
                                         Tuple{3, 4, 5}, Tuple{1, 1, 2, 3}};
        int checked = 0;
        while (checked < 500) {
            const Tuple& t = pool[rng() % pool.size()];
            const auto bu = basis(t, static_cast<std::int64_t>(rng() % (t.total() + 1)));
            const auto bv = basis(t, static_cast<std::int64_t>(rng() % (t.total() + 1)));
            if (bu.empty() || bv.empty()) continue;
            Mod2Class u, v;
            for (const auto& m : bu)
                if (rng() % 2) u.toggle(m);
            for (const auto& m : bv)
                if (rng() % 2) v.toggle(m);
            if (u.zero()) u.toggle(bu[rng() % bu.size()]);
            if (v.zero()) v.toggle(bv[rng() % bv.size()]);
            const std::int64_t k = static_cast<std::int64_t>(rng() % 7);
            Mod2Class rhs;
            for (std::int64_t i = 0; i <= k; ++i)
                rhs.add(multiply(t, sq(t, i, u), sq(t, k - i, v)));
            if (sq(t, k, multiply(t, u, v)) != rhs) return false;
            ++checked;
        }

        // Sq1 Sq1 = 0 and Sq1 Sq2 = Sq3 on every basis element of every
        // tuple with at most 5 entries and dimension at most 20
        bool adem = true;
        sweep::tuples(5, 20, [&](const Tuple& t) {
            for (const auto& m : all_basis(t)) {
                const Mod2Class u(m);
                if (!sq(t, 1, sq(t, 1, u)).zero()) adem = false;
                if (sq(t, 1, sq(t, 2, u)) != sq(t, 3, u)) adem = false;
            }
        }, 20);
        return adem;
    });

    criterion(8, "suspension splitting bookkeeping", [] {
        bool ok = true;
        sweep::tuples(5, 8, [&](const Tuple& t) {
            if (!splitting_poincare_check(t)) ok = false;
            if (wedge_summands(t).size() !=
                (std::uint64_t{1} << (t.length() - 1)))
                ok = false;
        });
        return ok;
    });

    criterion(9, "kervaire semicharacteristic case split", [] {
        bool ok = true;
        sweep::tuples(4, 9, [&](const Tuple& t) {
            if (t.total() % 2 == 0) return;
            const int expected =
                (t.length() == 1 && t.min_entry() % 4 == 1) ||
                        (t.length() == 2 && t.entry(1) % 2 == 0 && t.entry(2) % 2 == 1)
                    ? 1
                    : 0;
            if (kervaire_semichar(t) != expected) ok = false;
        });
        return ok;
    });

    criterion(10, "invariance of imm under (min,total,r) and of gd under the residue", [] {
        // group the sweep by the triple and require identical bounds
        std::map<std::tuple<std::int64_t, std::int64_t, int>, Bound> seen;
        bool ok = true;
        sweep::tuples(4, 10, [&](const Tuple& t) {
            const Bound b = imm_bounds(t);
            const auto key = std::make_tuple(t.min_entry(), t.total(), t.length());
            const auto [it, inserted] = seen.emplace(key, b);
            if (!inserted &&
                (it->second.lower != b.lower || it->second.upper != b.upper ||
                 it->second.exact != b.exact))
                ok = false;
        });
        if (!ok) return false;
        const Bound a = imm_bounds(Tuple{2, 3, 7});
        const Bound b = imm_bounds(Tuple{2, 4, 6});
        if (a.lower != b.lower || a.upper != b.upper) return false;
        for (std::int64_t n = 1; n <= 12; ++n) {
            const std::int64_t mod = std::int64_t{1} << phi(n);
            for (std::int64_t k = -32; k <= 32; ++k) {
                const Bound x = stable_gd(k, n);
                const Bound y = stable_gd(k + mod, n);
                if (x.lower != y.lower || x.upper != y.upper || x.exact != y.exact)
                    return false;
            }
        }
        return true;
    });

    criterion(11, "sandwich bounds over the full sweep", [] {
        bool ok = true;
        sweep::tuples(5, 12, [&](const Tuple& t) {
            const Bound imm = imm_bounds(t);
            if (imm.lower < t.total() + 1) ok = false;
            if (imm.upper > t.total() + t.min_entry()) ok = false;
            const Bound ss = stablespan_bounds(t);
            if (ss.lower < t.total() - t.min_entry()) ok = false;
        });
        return ok;
    });

    if (failures == 0) std::printf("all %d criteria passed\n", 11);
    else std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
