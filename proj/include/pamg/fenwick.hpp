#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pamg/error.hpp"

namespace pamg {

/// Fenwick (binary indexed) tree over int64 weights with O(log n) point
/// update and weighted-index lookup. Backs degree-proportional sampling:
/// a flat endpoint array would need Theta(F(t)) memory, this needs O(n).
class FenwickTree {
public:
    explicit FenwickTree(std::size_t capacity)
        : size_(capacity), tree_(capacity + 1, 0), total_(0) {
        top_ = 1;
        while (top_ * 2 <= size_)
            top_ *= 2;
    }

    std::size_t capacity() const { return size_; }
    std::int64_t total() const { return total_; }

    void add(std::size_t index, std::int64_t delta) {
        if (index >= size_)
            throw DomainError("fenwick index out of range");
        total_ += delta;
        for (std::size_t i = index + 1; i <= size_; i += i & (~i + 1))
            tree_[i] += delta;
    }

    /// Sum of weights at indices [0, index).
    std::int64_t prefix_sum(std::size_t index) const {
        std::int64_t s = 0;
        for (std::size_t i = index; i > 0; i -= i & (~i + 1))
            s += tree_[i];
        return s;
    }

    std::int64_t value(std::size_t index) const {
        return prefix_sum(index + 1) - prefix_sum(index);
    }

    /// Smallest index whose prefix sum exceeds w; pre: 0 <= w < total().
    /// Weighted sampling: feed w uniform in [0, total).
    std::size_t find_by_weight(std::int64_t w) const {
        std::size_t pos = 0;
        for (std::size_t step = top_; step > 0; step >>= 1) {
            const std::size_t next = pos + step;
            if (next <= size_ && tree_[next] <= w) {
                pos = next;
                w -= tree_[next];
            }
        }
        return pos;
    }

private:
    std::size_t size_;
    std::size_t top_;
    std::vector<std::int64_t> tree_;
    std::int64_t total_;
};

} // namespace pamg
