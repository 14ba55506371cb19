#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ppspace/tuple.hpp"

namespace sweep {

/// Visit every sorted tuple with at most max_r entries, each in
/// [1, max_entry]; optionally bounded total.
inline void tuples(int max_r, std::int64_t max_entry,
                   const std::function<void(const ppspace::Tuple&)>& fn,
                   std::int64_t max_total = -1) {
    std::vector<std::int64_t> current;
    const auto rec = [&](auto&& self, std::int64_t from, std::int64_t budget) -> void {
        if (!current.empty()) fn(ppspace::Tuple(current));
        if (static_cast<int>(current.size()) == max_r) return;
        for (std::int64_t n = from; n <= max_entry; ++n) {
            if (budget >= 0 && n > budget) break;
            current.push_back(n);
            self(self, n, budget >= 0 ? budget - n : budget);
            current.pop_back();
        }
    };
    rec(rec, 1, max_total);
}

}  // namespace sweep
