#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

namespace mcmp {

// Union-find with path compression and union by rank.
class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t size() const { return parent_.size(); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Returns true if a and b were in distinct sets.
    bool join(std::size_t a, std::size_t b) {
        std::size_t ra = find(a);
        std::size_t rb = find(b);
        if (ra == rb)
            return false;
        if (rank_[ra] < rank_[rb])
            std::swap(ra, rb);
        parent_[rb] = ra;
        if (rank_[ra] == rank_[rb])
            ++rank_[ra];
        return true;
    }

    bool connected(std::size_t a, std::size_t b) { return find(a) == find(b); }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::uint8_t> rank_;
};

} // namespace mcmp
