#include "plottlat/stability.hpp"

#include "plottlat/error.hpp"

namespace plottlat {

namespace {

void require_ideal(const Problem& pr, const System& x, std::string_view what) {
  if (!pr.poset().is_ideal(x)) throw Error(Errc::NotAnIdeal, std::string(what) + " is not an ideal", {x});
}

// Monotone sequences in the subset lattice of an n-element set settle within
// n + 1 rounds.
std::size_t round_bound(const Problem& pr) { return pr.poset().size() + 2; }

bool is_stable(const Problem& pr, const System& s) {
  const auto df = desirability_unchecked(pr.firm(), s);
  return pr.worker().choose_unchecked(df) == s;
}

}  // namespace

Problem::Problem(ChoiceFunction worker, ChoiceFunction firm, Mode mode)
    : worker_(std::move(worker)), firm_(std::move(firm)), mode_(mode) {
  if (worker_.poset_ptr() != firm_.poset_ptr() && !(worker_.poset() == firm_.poset()))
    throw Error(Errc::PosetMismatch, "worker and firm choose over different posets");
  if (mode_ == Mode::Strict) {
    if (!worker_.trusted())
      throw Error(Errc::UncheckedChoiceFunction,
                  "worker choice function is " + std::string(to_string(worker_.validation())));
    if (!firm_.trusted())
      throw Error(Errc::UncheckedChoiceFunction,
                  "firm choice function is " + std::string(to_string(firm_.validation())));
  }
}

Classification classify(const Problem& pr, const System& x) {
  require_ideal(pr, x, "system");
  const auto& w = pr.worker();
  const auto& f = pr.firm();
  const auto df = desirability_unchecked(f, x);
  const auto dw = desirability_unchecked(w, x);
  const auto wx = w.choose_unchecked(x);
  const auto dfw = desirability_unchecked(f, wx);
  const auto wdf = w.choose_unchecked(df);

  Classification c;
  c.acceptable_w = wx == x;
  c.acceptable_f = f.choose_unchecked(x) == x;
  c.stable = (df & dw) == x;
  c.neat = dfw == x;
  c.ample = dfw.subset_of(x);
  c.quasi_stable = x.subset_of(wdf);
  if (pr.mode() == Mode::Strict && c.stable != (wdf == x))
    throw Error(Errc::InternalInvariant, "two-sided and one-sided stability disagree", {x});
  return c;
}

std::string_view to_string(TraceKind kind) noexcept {
  return kind == TraceKind::Descending ? "descending" : "increasing";
}

SigmaResult sigma(const Problem& pr, const System& seed) {
  require_ideal(pr, seed, "seed");
  const auto& w = pr.worker();
  const auto& f = pr.firm();

  SigmaResult out;
  out.trace.kind = TraceKind::Descending;
  System current = seed;
  for (std::size_t i = 0;; ++i) {
    if (i > round_bound(pr)) throw Error(Errc::InternalInvariant, "descending iteration did not settle", {seed});
    Round r;
    r.current = current;
    r.offered = w.choose_unchecked(current);
    r.retained = f.choose_unchecked(r.offered);
    r.rejected = r.offered - r.retained;
    r.next = desirability_unchecked(f, r.offered);
    if (!r.next.subset_of(current)) {
      if (i == 0) throw Error(Errc::NotAmple, "D_F(W(seed)) is not contained in the seed", {seed, r.next});
      throw Error(Errc::InternalInvariant, "descending iteration increased", {current, r.next});
    }
    const bool settled = r.next == current;
    current = r.next;
    out.trace.rounds.push_back(std::move(r));
    if (settled) break;
  }
  out.trace.fixpoint = current;
  out.stable = w.choose_unchecked(current);
  out.neat_core = std::move(current);
  return out;
}

ClosureResult ample_closure(const Problem& pr, const System& start) {
  require_ideal(pr, start, "start system");
  const auto& w = pr.worker();
  const auto& f = pr.firm();

  ClosureResult out;
  out.trace.kind = TraceKind::Increasing;
  System current = start;
  for (std::size_t i = 0;; ++i) {
    if (i > round_bound(pr)) throw Error(Errc::InternalInvariant, "increasing iteration did not settle", {start});
    Round r;
    r.current = current;
    r.offered = w.choose_unchecked(current);
    r.retained = f.choose_unchecked(r.offered);
    r.rejected = r.offered - r.retained;
    r.next = current | desirability_unchecked(f, r.offered);
    const bool settled = r.next == current;
    current = r.next;
    out.trace.rounds.push_back(std::move(r));
    if (settled) break;
  }
  out.trace.fixpoint = current;
  out.ample = std::move(current);
  return out;
}

ExtremalStable extremal_stable(const Problem& pr) {
  const auto full = pr.poset().full_system();
  return ExtremalStable{sigma(pr, full).stable, sigma(pr.swapped(), full).stable};
}

std::string_view to_string(LatticeOp op) noexcept {
  switch (op) {
    case LatticeOp::MeetW: return "meet_w";
    case LatticeOp::JoinW: return "join_w";
    case LatticeOp::InfW: return "inf_w";
    case LatticeOp::SupW: return "sup_w";
  }
  return "unknown";
}

System lattice_op(const Problem& pr, LatticeOp op, std::span<const System> family) {
  if (family.empty()) throw Error(Errc::EmptyFamily, "lattice operation needs at least one stable system");
  for (const auto& s : family) {
    require_ideal(pr, s, "family member");
    if (!is_stable(pr, s)) throw Error(Errc::NotStable, "family member is not stable", {s});
  }
  const bool lower = op == LatticeOp::MeetW || op == LatticeOp::InfW;
  // Lower bounds intersect neat shells D_F(Sᵢ); upper bounds do the same on
  // the swapped problem, where ⪯_F-lower means ⪯_W-upper.
  const auto& shell_of = lower ? pr.firm() : pr.worker();
  System shell = pr.poset().full_system();
  for (const auto& s : family) shell &= desirability_unchecked(shell_of, s);
  return lower ? sigma(pr, shell).stable : sigma(pr.swapped(), shell).stable;
}

ComparativeCheck check_comparative(const Problem& original, const Problem& modified, std::uint64_t cap) {
  if (!(original.poset() == modified.poset()))
    throw Error(Errc::PosetMismatch, "compared problems live on different posets");
  ComparativeCheck out;
  for (const auto& a : enumerate_ideals(original.poset(), cap)) {
    if (!desirability_unchecked(modified.firm(), a).subset_of(desirability_unchecked(original.firm(), a))) {
      return ComparativeCheck{false, ComparativeCheck::Violation::FirmDesirability, a};
    }
    if (!original.worker().choose_unchecked(a).subset_of(modified.worker().choose_unchecked(a))) {
      return ComparativeCheck{false, ComparativeCheck::Violation::WorkerChoice, a};
    }
  }
  return out;
}

System transfer_unchecked(const Problem& original, const Problem& modified, const System& stable) {
  require_ideal(original, stable, "system");
  if (!is_stable(original, stable)) throw Error(Errc::NotStable, "system is not stable in the original problem", {stable});
  const auto shell = desirability_unchecked(original.firm(), stable);
  return sigma(modified, shell).stable;
}

System transfer(const Problem& original, const Problem& modified, const System& stable, std::uint64_t cap) {
  const auto check = check_comparative(original, modified, cap);
  if (!check.holds) {
    throw Error(Errc::PreconditionFailed,
                check.violation == ComparativeCheck::Violation::FirmDesirability
                    ? "modified firm desires a contract the original firm does not"
                    : "modified worker drops a contract the original worker chooses",
                {*check.witness});
  }
  return transfer_unchecked(original, modified, stable);
}

}  // namespace plottlat
