#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace plottlat {

/// A set of contracts, stored as a bitset over the element indices of a
/// fixed poset. `universe()` is the element count of that poset; whether the
/// set is downward closed is a property checked by `Poset::is_ideal`.
class System {
 public:
  System() = default;
  explicit System(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static System full(std::size_t universe) {
    System s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(i);
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  bool contains(std::size_t i) const noexcept {
    return i < universe_ && ((words_[i >> 6] >> (i & 63)) & 1u) != 0;
  }
  void insert(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void erase(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const noexcept {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  bool subset_of(const System& other) const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if ((words_[k] & ~other.words_[k]) != 0) return false;
    return true;
  }
  bool intersects(const System& other) const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if ((words_[k] & other.words_[k]) != 0) return true;
    return false;
  }

  System& operator|=(const System& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  System& operator&=(const System& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  System& operator-=(const System& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }
  friend System operator|(System a, const System& b) noexcept { return a |= b; }
  friend System operator&(System a, const System& b) noexcept { return a &= b; }
  friend System operator-(System a, const System& b) noexcept { return a -= b; }

  friend bool operator==(const System& a, const System& b) noexcept {
    return a.universe_ == b.universe_ &&
           std::equal(a.words_.begin(), a.words_.end(), b.words_.begin());
  }

  /// Smallest member index, or `universe()` when empty.
  std::size_t first() const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] != 0) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
    return universe_;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w != 0) {
        fn(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::size_t hash() const noexcept {
    std::size_t h = universe_ * 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  std::size_t universe_ = 0;
  boost::container::small_vector<std::uint64_t, 2> words_;
};

struct SystemHash {
  std::size_t operator()(const System& s) const noexcept { return s.hash(); }
};

/// Canonical order: ascending cardinality, ties broken by comparing the
/// sorted index lists lexicographically.
inline bool canonical_less(const System& a, const System& b) noexcept {
  const auto ca = a.count();
  const auto cb = b.count();
  if (ca != cb) return ca < cb;
  // With equal sizes the sorted lists first differ at min(a Δ b); the set
  // holding that element sorts first.
  const System diff = (a - b) | (b - a);
  const auto pivot = diff.first();
  if (pivot == diff.universe()) return false;
  return a.contains(pivot);
}

}  // namespace plottlat
