#pragma once

// Disjoint-set forest with path halving and union by size.

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

namespace cion {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    return true;
  }

  std::size_t component_count() const { return components_; }
  std::size_t size() const { return parent_.size(); }

  // Labels each element with the smallest member index of its component.
  // Independent of the order in which edges were united.
  std::vector<std::uint32_t> smallest_member_labels() {
    const std::size_t n = parent_.size();
    std::vector<std::uint32_t> min_of_root(n, static_cast<std::uint32_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = find(i);
      if (static_cast<std::uint32_t>(i) < min_of_root[r])
        min_of_root[r] = static_cast<std::uint32_t>(i);
    }
    std::vector<std::uint32_t> label(n);
    for (std::size_t i = 0; i < n; ++i) label[i] = min_of_root[find(i)];
    return label;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t components_;
};

}  // namespace cion
