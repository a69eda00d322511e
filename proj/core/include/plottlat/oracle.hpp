#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plottlat/choice.hpp"
#include "plottlat/poset.hpp"
#include "plottlat/stability.hpp"

namespace plottlat::oracle {

enum class SystemClass { Stable, Neat, Ample, QuasiStable, AcceptableW, AcceptableF };
std::string_view to_string(SystemClass kind) noexcept;
/// Parses "stable", "neat", "ample", "quasi_stable", "acceptable_w",
/// "acceptable_f".
std::optional<SystemClass> parse_system_class(std::string_view name) noexcept;

/// Choice and desirability of one choice function tabulated over every ideal.
/// Everything the oracle knows about a choice function comes from here.
class ChoiceTables {
 public:
  ChoiceTables(const ChoiceFunction& cf, const IdealLattice& lattice);

  const IdealLattice& lattice() const noexcept { return *lattice_; }
  std::size_t size() const noexcept { return chosen_.size(); }

  /// Index of C(Aᵢ).
  std::size_t chosen(std::size_t i) const noexcept { return chosen_[i]; }
  /// D(Aᵢ) and its index.
  const System& desired(std::size_t i) const noexcept { return desired_[i]; }
  std::size_t desired_index(std::size_t i) const noexcept { return desired_index_[i]; }

 private:
  const IdealLattice* lattice_;
  std::vector<std::size_t> chosen_;
  std::vector<System> desired_;
  std::vector<std::size_t> desired_index_;
};

/// Pairwise joins and meets of an ideal lattice by index.
class JoinTable {
 public:
  explicit JoinTable(const IdealLattice& lattice);
  std::size_t join(std::size_t i, std::size_t j) const;
  std::size_t meet(std::size_t i, std::size_t j) const;

 private:
  const IdealLattice* lattice_;
  std::vector<std::uint32_t> join_;  // empty when the lattice is too large to tabulate
};

/// Brute-force view of a problem: ideals, both agents' tables, and the class
/// predicates evaluated straight from their definitions.
class ProblemTables {
 public:
  explicit ProblemTables(const Problem& pr, std::uint64_t cap = kDefaultIdealCap);
  ProblemTables(const ProblemTables&) = delete;
  ProblemTables& operator=(const ProblemTables&) = delete;

  const Problem& problem() const noexcept { return problem_; }
  const IdealLattice& lattice() const noexcept { return lattice_; }
  const JoinTable& joins() const noexcept { return joins_; }
  const ChoiceTables& worker() const noexcept { return worker_; }
  const ChoiceTables& firm() const noexcept { return firm_; }
  std::size_t size() const noexcept { return lattice_.size(); }
  const System& operator[](std::size_t i) const { return lattice_[i]; }

  bool in_class(std::size_t i, SystemClass kind) const;
  std::vector<std::size_t> members(SystemClass kind) const;

  /// Aᵢ ⪯_W Aⱼ and Aᵢ ⪯_F Aⱼ.
  bool blair_w(std::size_t i, std::size_t j) const;
  bool blair_f(std::size_t i, std::size_t j) const;

 private:
  Problem problem_;
  IdealLattice lattice_;
  JoinTable joins_;
  ChoiceTables worker_;
  ChoiceTables firm_;
};

/// Ideals of the given class, in canonical order. Throws DomainTooLarge.
std::vector<System> enumerate_class(const Problem& pr, SystemClass kind, std::uint64_t cap = kDefaultIdealCap);

struct MinimalAmple {
  System ample;  // intersection of every ample system containing u
  System core;   // W(ample)
};

/// Throws DomainTooLarge; InternalInvariant if the intersection is not ample
/// or misses u.
MinimalAmple minimal_ample_containing(const Problem& pr, const System& u, std::uint64_t cap = kDefaultIdealCap);

struct TheoremCheck {
  std::string id;
  bool passed = true;
  std::uint64_t checked = 0;
  /// Counterexample with the fewest members among those found.
  std::vector<System> witness;
};

/// Records cases for one named statement and keeps the smallest witness.
class CheckRecorder {
 public:
  explicit CheckRecorder(std::string id) { result_.id = std::move(id); }
  void pass() { ++result_.checked; }
  void fail(std::vector<System> witness);
  void expect(bool ok, std::vector<System> witness) { ok ? pass() : fail(std::move(witness)); }
  TheoremCheck finish() { return std::move(result_); }

 private:
  TheoremCheck result_;
  std::size_t witness_weight_ = 0;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::uint64_t cap = kDefaultIdealCap;
  /// Random three-member stable families fed to the lattice cross-check.
  std::size_t random_families = 64;
  /// Ideal count up to which triples are enumerated exhaustively; larger
  /// lattices use `sampled_triples` random triples.
  std::size_t exhaustive_triple_limit = 256;
  std::size_t sampled_triples = 200000;
};

/// The choice/desirability operator laws and the Blair preorder laws for one
/// choice function, over every ideal pair and every family of at most three
/// ideals. Ids are suffixed with `suffix`.
std::vector<TheoremCheck> check_operator_laws(const ChoiceFunction& cf, std::string_view suffix,
                                              const VerifyOptions& options = {});

struct TheoremReport {
  std::uint64_t seed = 0;
  std::size_t ideal_count = 0;
  std::vector<TheoremCheck> checks;

  std::vector<System> stable;
  std::vector<System> neat;
  std::vector<System> ample;
  std::vector<System> quasi_stable;

  System minimal_ample;
  System minimal_ample_core;
  System intersection_of_ample;
  System intersection_of_stable;
  System ample_closure_of_empty;

  bool all_passed() const noexcept;
  const TheoremCheck* find(std::string_view id) const noexcept;
};

/// Exhaustive verification of the stability theory on one problem, with
/// every solver output cross-checked against brute force. Throws
/// UncheckedChoiceFunction unless both functions are trusted; DomainTooLarge.
TheoremReport verify_theorems(const Problem& pr, const VerifyOptions& options = {});

/// Brute-force greatest lower / least upper ⪯_W bound of `family` within the
/// stable systems `stable` (indices into `tables`); nullopt if none exists.
std::optional<std::size_t> brute_force_bound(const ProblemTables& tables, const std::vector<std::size_t>& stable,
                                             const std::vector<std::size_t>& family, bool lower);

}  // namespace plottlat::oracle
