#ifndef FORWARD_DETAIL_UNION_FIND_HPP
#define FORWARD_DETAIL_UNION_FIND_HPP

#include <numeric>
#include <utility>
#include <vector>

namespace forward::detail {

// Union by size with path halving.
class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    /// Returns false if a and b were already joined.
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (size_[a] < size_[b])
            std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    std::size_t size() const noexcept { return parent_.size(); }

  private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

// No path compression, so unions can be undone in LIFO order. Used by the
// exhaustive enumerator.
class RollbackUnionFind {
  public:
    explicit RollbackUnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) const {
        while (parent_[x] != x)
            x = parent_[x];
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (size_[a] < size_[b])
            std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        history_.push_back(b);
        return true;
    }

    void rollback() {
        const std::size_t b = history_.back();
        history_.pop_back();
        size_[parent_[b]] -= size_[b];
        parent_[b] = b;
    }

  private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::vector<std::size_t> history_;
};

} // namespace forward::detail

#endif // FORWARD_DETAIL_UNION_FIND_HPP
