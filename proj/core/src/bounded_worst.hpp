#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace ragg::detail {

/// Keeps the `cap` entries with the smallest (margin, rank). Rank is the
/// enumeration position, so ties resolve deterministically.
template <typename T>
class BoundedWorst {
 public:
  explicit BoundedWorst(std::size_t cap) : cap_(cap) {}

  void add(double margin, std::size_t rank, T item) {
    entries_.push_back({margin, rank, std::move(item)});
    if (entries_.size() > 2 * cap_ + 64) trim();
  }

  std::vector<T> take() {
    trim();
    std::vector<T> out;
    out.reserve(entries_.size());
    for (auto& e : entries_) out.push_back(std::move(e.item));
    entries_.clear();
    return out;
  }

 private:
  struct Entry {
    double margin;
    std::size_t rank;
    T item;
  };

  void trim() {
    std::sort(entries_.begin(), entries_.end(), [](const Entry& x, const Entry& y) {
      if (x.margin != y.margin) return x.margin < y.margin;
      return x.rank < y.rank;
    });
    if (entries_.size() > cap_) entries_.resize(cap_);
  }

  std::size_t cap_;
  std::vector<Entry> entries_;
};

}  // namespace ragg::detail
