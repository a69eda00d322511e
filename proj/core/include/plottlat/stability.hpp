#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "plottlat/choice.hpp"
#include "plottlat/poset.hpp"
#include "plottlat/system.hpp"

namespace plottlat {

/// Strict problems accept only trusted (Plott) choice functions. Permissive
/// problems accept anything; theorem guarantees are then void.
enum class Mode { Strict, Permissive };

/// Two agents, Worker (W) and Firm (F), choosing over ideals of one poset.
class Problem {
 public:
  /// Throws PosetMismatch, or UncheckedChoiceFunction in strict mode.
  Problem(ChoiceFunction worker, ChoiceFunction firm, Mode mode = Mode::Strict);

  const Poset& poset() const noexcept { return worker_.poset(); }
  const ChoiceFunction& worker() const noexcept { return worker_; }
  const ChoiceFunction& firm() const noexcept { return firm_; }
  Mode mode() const noexcept { return mode_; }

  /// Same market with the roles of Worker and Firm exchanged.
  Problem swapped() const { return Problem(firm_, worker_, mode_); }

  friend bool operator==(const Problem& a, const Problem& b) {
    return a.mode_ == b.mode_ && a.worker_ == b.worker_ && a.firm_ == b.firm_;
  }

 private:
  ChoiceFunction worker_;
  ChoiceFunction firm_;
  Mode mode_;
};

struct Classification {
  bool acceptable_w = false;
  bool acceptable_f = false;
  bool stable = false;        // S = D_F(S) ∩ D_W(S)
  bool neat = false;          // A = D_F(W(A))
  bool ample = false;         // D_F(W(B)) ⊆ B
  bool quasi_stable = false;  // Q ⊆ W(D_F(Q))

  friend bool operator==(const Classification&, const Classification&) = default;
};

/// All six flags by direct evaluation. Stability is computed both as
/// D_F(S) ∩ D_W(S) = S and as W(D_F(S)) = S; in strict mode a disagreement
/// throws InternalInvariant. Throws NotAnIdeal.
Classification classify(const Problem& pr, const System& x);

enum class TraceKind { Descending, Increasing };
std::string_view to_string(TraceKind kind) noexcept;

/// One exchange: Worker offers W(B), Firm keeps F(W(B)) and rejects the rest,
/// and the next system is formed from D_F(W(B)).
struct Round {
  System current;
  System offered;
  System retained;
  System rejected;
  System next;
};

struct IterationTrace {
  TraceKind kind = TraceKind::Descending;
  std::vector<Round> rounds;
  System fixpoint;
};

struct SigmaResult {
  System stable;     // W(N(B))
  System neat_core;  // N(B), the largest neat system inside B
  IterationTrace trace;
};

/// Iterates B ↦ D_F(W(B)) from an ample seed to its fixpoint.
/// Throws NotAmple (witness: seed and D_F(W(seed))), NotAnIdeal.
SigmaResult sigma(const Problem& pr, const System& seed);

struct ClosureResult {
  System ample;
  IterationTrace trace;
};

/// Iterates A ↦ A ∪ D_F(W(A)) to its fixpoint, which is ample and contains
/// the input. Throws NotAnIdeal.
ClosureResult ample_closure(const Problem& pr, const System& start);

struct ExtremalStable {
  System max_w;  // best stable system for Worker
  System min_w;  // worst stable system for Worker
};

/// The ⪯_W-extremes of the stable set. The minimum is the ⪯_F-maximum of the
/// role-swapped problem.
ExtremalStable extremal_stable(const Problem& pr);

enum class LatticeOp { MeetW, JoinW, InfW, SupW };
std::string_view to_string(LatticeOp op) noexcept;

/// Greatest lower / least upper bound of stable systems under ⪯_W.
/// Throws EmptyFamily, NotStable (witness: offending member).
System lattice_op(const Problem& pr, LatticeOp op, std::span<const System> family);

struct ComparativeCheck {
  enum class Violation { None, FirmDesirability, WorkerChoice };
  bool holds = true;
  Violation violation = Violation::None;
  std::optional<System> witness;  // an ideal where the required inclusion fails
};

/// Whether `modified` is comparable to `original`: for every ideal A,
/// D_F'(A) ⊆ D_F(A) and W(A) ⊆ W'(A). Throws PosetMismatch, DomainTooLarge.
ComparativeCheck check_comparative(const Problem& original, const Problem& modified,
                                   std::uint64_t cap = kDefaultIdealCap);

/// S ↦ Σ'(D_F(S)), carrying a stable system of `original` to one of
/// `modified`. Throws PreconditionFailed, NotStable.
System transfer(const Problem& original, const Problem& modified, const System& stable,
                std::uint64_t cap = kDefaultIdealCap);

/// Same map without re-running the comparability check.
System transfer_unchecked(const Problem& original, const Problem& modified, const System& stable);

}  // namespace plottlat
