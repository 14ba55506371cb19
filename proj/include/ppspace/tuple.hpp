#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppspace {

/// Dimension tuple (n_1,...,n_r), canonically sorted so n_1 is minimal.
///
/// Every operation in the library indexes entries by 1-based position in
/// the sorted order; positions 2..r name the exterior generators.
class Tuple {
public:
    static constexpr std::size_t max_length = 64;
    static constexpr std::int64_t max_entry = std::int64_t{1} << 20;

    explicit Tuple(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
        if (entries_.empty())
            throw std::invalid_argument("tuple: at least one entry required");
        if (entries_.size() > max_length)
            throw std::invalid_argument("tuple: more than 64 entries");
        for (std::int64_t n : entries_)
            if (n < 1 || n > max_entry)
                throw std::invalid_argument("tuple: entries must lie in [1, 2^20]");
        canonicalized_ = !std::is_sorted(entries_.begin(), entries_.end());
        std::sort(entries_.begin(), entries_.end());
        total_ = std::accumulate(entries_.begin(), entries_.end(), std::int64_t{0});
    }

    Tuple(std::initializer_list<std::int64_t> entries)
        : Tuple(std::vector<std::int64_t>(entries)) {}

    const std::vector<std::int64_t>& entries() const { return entries_; }

    /// r, the number of sphere factors.
    int length() const { return static_cast<int>(entries_.size()); }

    /// |n|, the dimension of the manifold.
    std::int64_t total() const { return total_; }

    /// n_1, the minimal entry.
    std::int64_t min_entry() const { return entries_.front(); }

    /// 1-based access following the sorted order.
    std::int64_t entry(int pos) const {
        if (pos < 1 || pos > length())
            throw std::out_of_range("tuple: position out of range");
        return entries_[static_cast<std::size_t>(pos) - 1];
    }

    /// True when the constructor had to reorder the input.
    bool canonicalized() const { return canonicalized_; }

    bool operator==(const Tuple& o) const { return entries_ == o.entries_; }
    bool operator!=(const Tuple& o) const { return !(*this == o); }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(entries_[i]);
        }
        s += ')';
        return s;
    }

private:
    std::vector<std::int64_t> entries_;
    std::int64_t total_ = 0;
    bool canonicalized_ = false;
};

}  // namespace ppspace
