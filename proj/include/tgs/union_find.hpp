#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace tgs {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Returns true when the two were in different classes.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  std::size_t size() const noexcept { return parent_.size(); }

  /// Dense labels 0..k-1 in order of first occurrence.
  std::vector<std::size_t> labels(std::size_t* count = nullptr) {
    std::vector<std::size_t> root_label(parent_.size(), npos), out(parent_.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      std::size_t r = find(i);
      if (root_label[r] == npos) root_label[r] = next++;
      out[i] = root_label[r];
    }
    if (count) *count = next;
    return out;
  }

  static constexpr std::size_t npos = ~std::size_t{0};

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace tgs
