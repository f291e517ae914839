#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tordec {

using Table = std::vector<std::vector<int>>;

// Invalid input (bad files, mismatched families, non-Heyting lattices, ...).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A certified construction failed to certify; always a bug, never valid output.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // returns true if the classes were distinct
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    return true;
  }
  int size() const { return static_cast<int>(parent_.size()); }

 private:
  std::vector<int> parent_;
};

// Renumber class ids so the partition reads 0,1,2,... in element order.
inline std::vector<int> normalize_partition(const std::vector<int>& raw) {
  std::vector<int> out(raw.size(), -1);
  std::vector<int> seen;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto it = std::find(seen.begin(), seen.end(), raw[i]);
    if (it == seen.end()) {
      out[i] = static_cast<int>(seen.size());
      seen.push_back(raw[i]);
    } else {
      out[i] = static_cast<int>(it - seen.begin());
    }
  }
  return out;
}

}  // namespace tordec
