#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "plottlat/poset.hpp"
#include "plottlat/system.hpp"

namespace plottlat {

enum class Family { Table, Quota, Aggregate };

/// PlottByConstruction marks a function that belongs to a family known to be
/// Plott but whose domain was too large for the construction-time check.
enum class Validation { Unchecked, PlottVerified, PlottByConstruction, PlottFailed };

std::string_view to_string(Family f) noexcept;
std::string_view to_string(Validation v) noexcept;

/// Which law a PlottWitness breaks.
enum class PlottLaw {
  Substitutability,  // A ⊆ B ⇒ A ∩ C(B) ⊆ C(A)
  Consistency,       // C(A) ⊆ B ⊆ A ⇒ C(A) = C(B)
  IdealValued,       // C(A) ⊆ A and C(A) is an ideal
  UnionInclusion,    // C(A ∪ B) ⊆ C(A) ∪ B
  PathIndependence,  // C(A ∪ B) = C(C(A) ∪ B)
};
std::string_view to_string(PlottLaw law) noexcept;

struct PlottWitness {
  PlottLaw law;
  System a;
  System b;
  System choice_a;
  System choice_b;
};

struct PlottReport {
  bool consistency_ok = true;
  bool substitutability_ok = true;
  bool ideal_valued_ok = true;
  bool union_laws_ok = true;
  std::uint64_t cases_checked = 0;
  /// At most one witness per violated law, the one with the fewest members.
  std::vector<PlottWitness> witnesses;

  bool ok() const noexcept {
    return consistency_ok && substitutability_ok && ideal_valued_ok && union_laws_ok;
  }
};

/// Ideal count up to which families known to be Plott are still checked
/// exhaustively at construction.
inline constexpr std::uint64_t kConstructionCheckCap = 1024;

namespace detail {
struct ChoiceImpl;
struct ChoiceAccess;
}  // namespace detail

/// A choice function on the ideals of a poset. Values are immutable and cheap
/// to copy; concurrent evaluation is safe.
class ChoiceFunction {
 public:
  struct QuotaParams {
    std::vector<std::size_t> priority;  // highest priority first
    std::size_t quota = 0;
  };
  struct TableParams {
    std::unordered_map<System, System, SystemHash> entries;
  };
  struct AggregateParams {
    std::vector<std::vector<std::size_t>> parts;  // global element indices
    std::vector<ChoiceFunction> children;         // each on the induced sub-poset
  };

  Family family() const noexcept;
  const Poset& poset() const noexcept;
  const std::shared_ptr<const Poset>& poset_ptr() const noexcept;
  Validation validation() const noexcept;
  /// True for PlottVerified and PlottByConstruction.
  bool trusted() const noexcept;
  /// Report of the most recent exhaustive validation, if any ran.
  const PlottReport* report() const noexcept;

  const QuotaParams* quota_params() const noexcept;
  const TableParams* table_params() const noexcept;
  const AggregateParams* aggregate_params() const noexcept;

  /// C(A). Throws NotAnIdeal when `a` is not an ideal of the poset.
  System choose(const System& a) const;
  /// C(A) without the ideal check; `a` must be an ideal.
  System choose_unchecked(const System& a) const;

  /// A copy carrying `report` and the matching validation status.
  ChoiceFunction with_report(PlottReport report) const;

  /// Structural equality: same poset, family, and parameters.
  friend bool operator==(const ChoiceFunction& a, const ChoiceFunction& b);

 private:
  explicit ChoiceFunction(std::shared_ptr<const detail::ChoiceImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::ChoiceImpl> impl_;

  friend struct detail::ChoiceAccess;
};

System choose(const ChoiceFunction& cf, const System& a);

/// D(A) = {e : e ∈ C(A ∪ ⟨e⟩)}. Throws NotAnIdeal.
System desirability(const ChoiceFunction& cf, const System& a);
System desirability_unchecked(const ChoiceFunction& cf, const System& a);

/// Blair relation A ⪯ B ⇔ C(A ∪ B) ⊆ B. Throws NotAnIdeal or PosetMismatch.
bool blair_leq(const ChoiceFunction& cf, const System& a, const System& b);

/// Exhaustive check of the Plott axioms and the union laws over every ideal
/// and ideal pair. Throws DomainTooLarge.
PlottReport validate_plott(const ChoiceFunction& cf, std::uint64_t cap = kDefaultIdealCap);

/// Returns `cf` carrying its validation report.
ChoiceFunction validated(const ChoiceFunction& cf, std::uint64_t cap = kDefaultIdealCap);

/// Top-`quota` elements of A ∩ Acc by `priority` (Acc = the listed elements).
/// Only discrete posets are accepted. Throws QuotaOnNontrivialPoset,
/// UnknownElement, DuplicateElement.
ChoiceFunction make_quota(std::shared_ptr<const Poset> poset, std::vector<std::size_t> priority,
                          std::size_t quota);

struct TableOptions {
  bool validate = true;
  bool strict = true;  // throw PlottFailed when validation fails
  std::uint64_t cap = kDefaultIdealCap;
};

using TableEntries = std::unordered_map<System, System, SystemHash>;

/// Explicit ideal → ideal table. Throws NotAnIdeal, TableIncomplete,
/// ValueNotSubset, ValueNotIdeal, and PlottFailed (strict validation).
ChoiceFunction make_table(std::shared_ptr<const Poset> poset, TableEntries entries,
                          const TableOptions& options = {});

/// Materializes `fn` over every ideal as a Table.
ChoiceFunction make_table_from(std::shared_ptr<const Poset> poset,
                               const std::function<System(const System&)>& fn,
                               const TableOptions& options = {});

ChoiceFunction identity_choice(std::shared_ptr<const Poset> poset, const TableOptions& options = {});
/// A ↦ A ∩ keep, for an ideal `keep`.
ChoiceFunction cut_choice(std::shared_ptr<const Poset> poset, const System& keep,
                          const TableOptions& options = {});

/// Union of per-part choices, C(A) = ∪ Cᵢ(A ∩ partᵢ). `parts` must partition
/// the elements with no order relation across parts, and child i must live
/// on the sub-poset induced by part i (same identifiers, same order).
/// Throws NotAPartition, OrderCrossesParts, PosetMismatch.
ChoiceFunction make_aggregate(std::shared_ptr<const Poset> poset, std::vector<std::vector<std::size_t>> parts,
                              std::vector<ChoiceFunction> children);

}  // namespace plottlat
