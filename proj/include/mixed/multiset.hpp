#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

namespace mixed {

// Finite multiset kept as a sorted vector. T needs a strict weak order (<)
// consistent with ==.
template <typename T>
class Multiset {
 public:
  using const_iterator = typename std::vector<T>::const_iterator;

  Multiset() = default;
  Multiset(std::initializer_list<T> init) : items_(init) { std::sort(items_.begin(), items_.end()); }
  explicit Multiset(std::vector<T> items) : items_(std::move(items)) {
    std::sort(items_.begin(), items_.end());
  }

  void insert(const T& x) { items_.insert(std::upper_bound(items_.begin(), items_.end(), x), x); }

  void insert_n(const T& x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) insert(x);
  }

  // Removes one occurrence; false if x is absent.
  bool erase_one(const T& x) {
    auto it = std::lower_bound(items_.begin(), items_.end(), x);
    if (it == items_.end() || !(*it == x)) return false;
    items_.erase(it);
    return true;
  }

  std::size_t count(const T& x) const {
    auto [lo, hi] = std::equal_range(items_.begin(), items_.end(), x);
    return static_cast<std::size_t>(hi - lo);
  }

  bool contains(const T& x) const { return std::binary_search(items_.begin(), items_.end(), x); }

  // True iff every occurrence of `other` fits inside *this.
  bool includes(const Multiset& other) const {
    return std::includes(items_.begin(), items_.end(), other.items_.begin(), other.items_.end());
  }

  // this - other, or nullopt when other is not included.
  std::optional<Multiset> minus(const Multiset& other) const {
    if (!includes(other)) return std::nullopt;
    Multiset out;
    std::set_difference(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                        std::back_inserter(out.items_));
    return out;
  }

  std::optional<Multiset> without(const T& x) const {
    Multiset out = *this;
    if (!out.erase_one(x)) return std::nullopt;
    return out;
  }

  Multiset with(const T& x) const {
    Multiset out = *this;
    out.insert(x);
    return out;
  }

  friend Multiset operator+(const Multiset& a, const Multiset& b) {
    Multiset out;
    out.items_.reserve(a.size() + b.size());
    std::merge(a.items_.begin(), a.items_.end(), b.items_.begin(), b.items_.end(),
               std::back_inserter(out.items_));
    return out;
  }

  // Multiset intersection (min of multiplicities).
  Multiset common(const Multiset& other) const {
    Multiset out;
    std::set_intersection(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                          std::back_inserter(out.items_));
    return out;
  }

  std::vector<T> distinct() const {
    std::vector<T> out;
    for (const T& x : items_)
      if (out.empty() || !(out.back() == x)) out.push_back(x);
    return out;
  }

  template <typename Pred>
  bool all_of(Pred p) const {
    return std::all_of(items_.begin(), items_.end(), p);
  }

  template <typename Pred>
  bool any_of(Pred p) const {
    return std::any_of(items_.begin(), items_.end(), p);
  }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }
  const std::vector<T>& items() const { return items_; }

  friend bool operator==(const Multiset& a, const Multiset& b) { return a.items_ == b.items_; }
  friend bool operator<(const Multiset& a, const Multiset& b) { return a.items_ < b.items_; }

 private:
  std::vector<T> items_;
};

}  // namespace mixed
