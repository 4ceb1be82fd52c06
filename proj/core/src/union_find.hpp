#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace autoglosh::detail {

// Union by size with path compression.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        std::size_t root = x;
        while (parent_[root] != root) {
            root = parent_[root];
        }
        while (parent_[x] != root) {
            x = std::exchange(parent_[x], root);
        }
        return root;
    }

    /// Returns the surviving root; a and b must be roots of distinct sets.
    std::size_t unite_roots(std::size_t a, std::size_t b) {
        if (size_[a] < size_[b]) {
            std::swap(a, b);
        }
        parent_[b] = a;
        size_[a] += size_[b];
        return a;
    }

    std::size_t set_size(std::size_t root) const { return size_[root]; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

} // namespace autoglosh::detail
