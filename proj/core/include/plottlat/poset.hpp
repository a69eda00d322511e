#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "plottlat/system.hpp"

namespace plottlat {

/// Default bound on the number of ideals any exhaustive operation may visit.
inline constexpr std::uint64_t kDefaultIdealCap = std::uint64_t{1} << 20;

/// A finite poset of contracts. The order is stored reflexive-transitively
/// closed: `leq` is a bit lookup in the principal ideal of the upper element.
/// A discrete poset (empty order) models plain sets of contracts.
class Poset {
 public:
  using Cover = std::pair<std::string, std::string>;

  Poset() = default;

  /// Throws DuplicateElement, UnknownElement, or CycleDetected.
  static Poset build(std::vector<std::string> elements, std::span<const Cover> covers);
  static Poset discrete(std::vector<std::string> elements);

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<std::string>& elements() const noexcept { return elements_; }
  const std::string& name(std::size_t i) const { return elements_.at(i); }

  std::optional<std::size_t> find(std::string_view id) const;
  /// Throws UnknownElement.
  std::size_t index_of(std::string_view id) const;

  bool leq(std::size_t lower, std::size_t upper) const noexcept { return down_[upper].contains(lower); }
  bool is_discrete() const noexcept { return discrete_; }

  /// ⟨e⟩ = {x : x ≤ e}.
  const System& principal(std::size_t e) const { return down_.at(e); }
  /// {x : e ≤ x}.
  const System& upset(std::size_t e) const { return up_.at(e); }

  System empty_system() const { return System(size()); }
  System full_system() const { return System::full(size()); }

  bool is_ideal(const System& s) const;
  System down_closure(const System& s) const;

  /// Identifier list to index set; no closure. Throws UnknownElement.
  System system_of(std::span<const std::string> ids) const;
  /// Member identifiers in element order.
  std::vector<std::string> names(const System& s) const;

  /// The sub-poset on `members` (in the given order) with the induced order.
  Poset induced(std::span<const std::size_t> members) const;

  /// Hasse diagram edges (lower, upper), sorted by (lower, upper) index.
  std::vector<std::pair<std::size_t, std::size_t>> cover_pairs() const;

  friend bool operator==(const Poset& a, const Poset& b) noexcept {
    return a.elements_ == b.elements_ && a.down_ == b.down_;
  }

 private:
  std::vector<std::string> elements_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<System> down_;
  std::vector<System> up_;
  bool discrete_ = true;
};

/// Number of ideals of `p`, or `limit + 1` as soon as the count exceeds
/// `limit`.
std::uint64_t count_ideals(const Poset& p, std::uint64_t limit);

/// Every ideal exactly once, ascending by cardinality with ties broken
/// lexicographically by element index. Throws DomainTooLarge when the ideal
/// count exceeds `cap`, before any ideal is materialized.
std::vector<System> enumerate_ideals(const Poset& p, std::uint64_t cap = kDefaultIdealCap);

/// The enumerated ideal lattice with an index for constant-time lookup.
class IdealLattice {
 public:
  explicit IdealLattice(const Poset& p, std::uint64_t cap = kDefaultIdealCap);

  std::size_t size() const noexcept { return ideals_.size(); }
  const System& operator[](std::size_t i) const { return ideals_[i]; }
  const std::vector<System>& ideals() const noexcept { return ideals_; }
  auto begin() const noexcept { return ideals_.begin(); }
  auto end() const noexcept { return ideals_.end(); }

  /// Index of an ideal; throws NotAnIdeal for any other set.
  std::size_t index_of(const System& s) const;
  std::optional<std::size_t> find(const System& s) const;

 private:
  std::vector<System> ideals_;
  std::unordered_map<System, std::size_t, SystemHash> index_;
};

}  // namespace plottlat
