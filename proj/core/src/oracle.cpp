#include "plottlat/oracle.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "plottlat/error.hpp"

namespace plottlat::oracle {

namespace {

constexpr std::size_t kNotIdeal = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kJoinTableLimit = 2048;
constexpr std::size_t kBlairMatrixLimit = 4096;

std::size_t require_index(std::size_t i) {
  if (i == kNotIdeal) throw Error(Errc::InternalInvariant, "desirability produced a set that is not an ideal");
  return i;
}

}  // namespace

std::string_view to_string(SystemClass kind) noexcept {
  switch (kind) {
    case SystemClass::Stable: return "stable";
    case SystemClass::Neat: return "neat";
    case SystemClass::Ample: return "ample";
    case SystemClass::QuasiStable: return "quasi_stable";
    case SystemClass::AcceptableW: return "acceptable_w";
    case SystemClass::AcceptableF: return "acceptable_f";
  }
  return "unknown";
}

std::optional<SystemClass> parse_system_class(std::string_view name) noexcept {
  for (auto kind : {SystemClass::Stable, SystemClass::Neat, SystemClass::Ample, SystemClass::QuasiStable,
                    SystemClass::AcceptableW, SystemClass::AcceptableF}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

ChoiceTables::ChoiceTables(const ChoiceFunction& cf, const IdealLattice& lattice) : lattice_(&lattice) {
  const auto n = lattice.size();
  chosen_.reserve(n);
  desired_.reserve(n);
  desired_index_.reserve(n);
  for (const auto& a : lattice) {
    const auto c = lattice.find(cf.choose_unchecked(a));
    if (!c) throw Error(Errc::InternalInvariant, "choice is not an ideal", {a});
    chosen_.push_back(*c);
    desired_.push_back(desirability_unchecked(cf, a));
    desired_index_.push_back(lattice.find(desired_.back()).value_or(kNotIdeal));
  }
}

JoinTable::JoinTable(const IdealLattice& lattice) : lattice_(&lattice) {
  const auto n = lattice.size();
  if (n > kJoinTableLimit) return;
  join_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const auto u = static_cast<std::uint32_t>(lattice.index_of(lattice[i] | lattice[j]));
      join_[i * n + j] = u;
      join_[j * n + i] = u;
    }
  }
}

std::size_t JoinTable::join(std::size_t i, std::size_t j) const {
  if (!join_.empty()) return join_[i * lattice_->size() + j];
  return lattice_->index_of((*lattice_)[i] | (*lattice_)[j]);
}

std::size_t JoinTable::meet(std::size_t i, std::size_t j) const {
  return lattice_->index_of((*lattice_)[i] & (*lattice_)[j]);
}

ProblemTables::ProblemTables(const Problem& pr, std::uint64_t cap)
    : problem_(pr),
      lattice_(pr.poset(), cap),
      joins_(lattice_),
      worker_(pr.worker(), lattice_),
      firm_(pr.firm(), lattice_) {}

bool ProblemTables::in_class(std::size_t i, SystemClass kind) const {
  const auto& a = lattice_[i];
  switch (kind) {
    case SystemClass::Stable:
      return (firm_.desired(i) & worker_.desired(i)) == a;
    case SystemClass::Neat:
      return require_index(firm_.desired_index(worker_.chosen(i))) == i;
    case SystemClass::Ample:
      return firm_.desired(worker_.chosen(i)).subset_of(a);
    case SystemClass::QuasiStable:
      return a.subset_of(lattice_[worker_.chosen(require_index(firm_.desired_index(i)))]);
    case SystemClass::AcceptableW:
      return worker_.chosen(i) == i;
    case SystemClass::AcceptableF:
      return firm_.chosen(i) == i;
  }
  return false;
}

std::vector<std::size_t> ProblemTables::members(SystemClass kind) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (in_class(i, kind)) out.push_back(i);
  return out;
}

bool ProblemTables::blair_w(std::size_t i, std::size_t j) const {
  return lattice_[worker_.chosen(joins_.join(i, j))].subset_of(lattice_[j]);
}

bool ProblemTables::blair_f(std::size_t i, std::size_t j) const {
  return lattice_[firm_.chosen(joins_.join(i, j))].subset_of(lattice_[j]);
}

std::vector<System> enumerate_class(const Problem& pr, SystemClass kind, std::uint64_t cap) {
  const ProblemTables tables(pr, cap);
  std::vector<System> out;
  for (auto i : tables.members(kind)) out.push_back(tables[i]);
  return out;
}

MinimalAmple minimal_ample_containing(const Problem& pr, const System& u, std::uint64_t cap) {
  const ProblemTables tables(pr, cap);
  tables.lattice().index_of(u);
  System result = pr.poset().full_system();
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (u.subset_of(tables[i]) && tables.in_class(i, SystemClass::Ample)) result &= tables[i];
  }
  const auto idx = tables.lattice().index_of(result);
  if (!tables.in_class(idx, SystemClass::Ample) || !u.subset_of(result))
    throw Error(Errc::InternalInvariant, "intersection of ample systems is not ample", {u, result});
  return MinimalAmple{result, tables[tables.worker().chosen(idx)]};
}

void CheckRecorder::fail(std::vector<System> witness) {
  std::size_t weight = 0;
  for (const auto& s : witness) weight += s.count();
  if (result_.passed || weight < witness_weight_) {
    result_.witness = std::move(witness);
    witness_weight_ = weight;
  }
  result_.passed = false;
  ++result_.checked;
}

std::optional<std::size_t> brute_force_bound(const ProblemTables& tables, const std::vector<std::size_t>& stable,
                                             const std::vector<std::size_t>& family, bool lower) {
  // Bounds of the family within the stable set.
  std::vector<std::size_t> bounds;
  for (auto t : stable) {
    bool ok = true;
    for (auto s : family) {
      if (!(lower ? tables.blair_w(t, s) : tables.blair_w(s, t))) {
        ok = false;
        break;
      }
    }
    if (ok) bounds.push_back(t);
  }
  // The extreme bound dominates every other bound.
  for (auto g : bounds) {
    bool extreme = true;
    for (auto x : bounds) {
      if (!(lower ? tables.blair_w(x, g) : tables.blair_w(g, x))) {
        extreme = false;
        break;
      }
    }
    if (extreme) return g;
  }
  return std::nullopt;
}

std::vector<TheoremCheck> check_operator_laws(const ChoiceFunction& cf, std::string_view suffix,
                                              const VerifyOptions& options) {
  const auto& p = cf.poset();
  const IdealLattice lattice(p, options.cap);
  const JoinTable joins(lattice);
  const ChoiceTables t(cf, lattice);
  const auto n = lattice.size();
  const std::string sfx(suffix);

  std::vector<char> blair_matrix;
  if (n <= kBlairMatrixLimit) {
    blair_matrix.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        blair_matrix[i * n + j] = lattice[t.chosen(joins.join(i, j))].subset_of(lattice[j]) ? 1 : 0;
  }
  auto blair = [&](std::size_t i, std::size_t j) -> bool {
    if (!blair_matrix.empty()) return blair_matrix[i * n + j] != 0;
    return lattice[t.chosen(joins.join(i, j))].subset_of(lattice[j]);
  };
  auto chosen = [&](std::size_t i) -> const System& { return lattice[t.chosen(i)]; };

  CheckRecorder union_inclusion("union_inclusion" + sfx);
  CheckRecorder path_independence("path_independence" + sfx);
  CheckRecorder choice_equivalence("choice_equivalence" + sfx);
  CheckRecorder choice_via_desirability("choice_via_desirability" + sfx);
  CheckRecorder desirability_of_choice("desirability_of_choice" + sfx);
  CheckRecorder blair_antitone("blair_antitone" + sfx);
  CheckRecorder union_antitone("union_antitone" + sfx);
  CheckRecorder blair_preorder("blair_preorder" + sfx);
  CheckRecorder blair_order("blair_order_on_acceptable" + sfx);
  CheckRecorder desirability_ideal("desirability_ideal_valued" + sfx);
  CheckRecorder acceptable_iff("acceptable_iff_within_desirability" + sfx);

  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = lattice[i];
    const auto ci = t.chosen(i);
    choice_equivalence.expect(blair(i, ci) && blair(ci, i), {a});
    choice_via_desirability.expect(chosen(i) == (a & t.desired(i)), {a});
    desirability_of_choice.expect(t.desired(i) == t.desired(ci), {a});
    desirability_ideal.expect(t.desired_index(i) != kNotIdeal, {a, t.desired(i)});
    acceptable_iff.expect((ci == i) == a.subset_of(t.desired(i)), {a});
    blair_preorder.expect(blair(i, i), {a});

    for (std::size_t j = 0; j < n; ++j) {
      const auto& b = lattice[j];
      const auto u = joins.join(i, j);
      union_inclusion.expect(chosen(u).subset_of(chosen(i) | b), {a, b});
      path_independence.expect(chosen(joins.join(ci, j)) == chosen(u), {a, b});
      if (blair(i, j)) blair_antitone.expect(t.desired(j).subset_of(t.desired(i)), {a, b});
      if (i < j) union_antitone.expect(t.desired(u).subset_of(t.desired(i) & t.desired(j)), {a, b});
      if (i != j && ci == i && t.chosen(j) == j && blair(i, j) && blair(j, i)) blair_order.fail({a, b});
      else if (ci == i && t.chosen(j) == j) blair_order.pass();
    }
  }

  auto check_triple = [&](std::size_t i, std::size_t j, std::size_t k, bool unordered) {
    if (blair(i, j) && blair(j, k)) blair_preorder.expect(blair(i, k), {lattice[i], lattice[j], lattice[k]});
    if (unordered) {
      const auto u = joins.join(joins.join(i, j), k);
      union_antitone.expect(t.desired(u).subset_of(t.desired(i) & t.desired(j) & t.desired(k)),
                            {lattice[i], lattice[j], lattice[k]});
    }
  };
  if (n <= options.exhaustive_triple_limit) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) check_triple(i, j, k, i < j && j < k);
  } else {
    std::mt19937_64 rng(options.seed ^ 0x5deece66dULL);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t s = 0; s < options.sampled_triples; ++s) check_triple(pick(rng), pick(rng), pick(rng), true);
  }

  std::vector<TheoremCheck> out;
  for (auto* r : {&union_inclusion, &path_independence, &choice_equivalence, &choice_via_desirability,
                  &desirability_of_choice, &blair_antitone, &union_antitone, &blair_preorder, &blair_order,
                  &desirability_ideal, &acceptable_iff})
    out.push_back(r->finish());
  return out;
}

bool TheoremReport::all_passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const TheoremCheck& c) { return c.passed; });
}

const TheoremCheck* TheoremReport::find(std::string_view id) const noexcept {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

TheoremReport verify_theorems(const Problem& pr, const VerifyOptions& options) {
  if (!pr.worker().trusted() || !pr.firm().trusted())
    throw Error(Errc::UncheckedChoiceFunction, "theorem verification needs Plott choice functions on both sides");

  const ProblemTables t(pr, options.cap);
  const auto n = t.size();
  const auto& W = t.worker();
  const auto& F = t.firm();
  auto sys = [&](std::size_t i) -> const System& { return t[i]; };
  auto in = [&](std::size_t i, SystemClass k) { return t.in_class(i, k); };
  auto shell = [&](std::size_t i) { return require_index(F.desired_index(i)); };

  TheoremReport report;
  report.seed = options.seed;
  report.ideal_count = n;
  for (auto& c : check_operator_laws(pr.worker(), "_w", options)) report.checks.push_back(std::move(c));
  for (auto& c : check_operator_laws(pr.firm(), "_f", options)) report.checks.push_back(std::move(c));

  const auto stable = t.members(SystemClass::Stable);
  const auto neat = t.members(SystemClass::Neat);
  const auto ample = t.members(SystemClass::Ample);
  const auto quasi = t.members(SystemClass::QuasiStable);
  for (auto i : stable) report.stable.push_back(sys(i));
  for (auto i : neat) report.neat.push_back(sys(i));
  for (auto i : ample) report.ample.push_back(sys(i));
  for (auto i : quasi) report.quasi_stable.push_back(sys(i));

  auto add = [&](CheckRecorder& r) { report.checks.push_back(r.finish()); };

  {
    CheckRecorder r("existence");
    r.expect(!stable.empty(), {});
    add(r);
  }
  {
    CheckRecorder agree("classify_agreement");
    CheckRecorder implications("class_implications");
    CheckRecorder one_sided("one_sided_stability");
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = classify(pr, sys(i));
      const Classification o{in(i, SystemClass::AcceptableW), in(i, SystemClass::AcceptableF),
                             in(i, SystemClass::Stable),      in(i, SystemClass::Neat),
                             in(i, SystemClass::Ample),       in(i, SystemClass::QuasiStable)};
      agree.expect(c == o, {sys(i)});
      implications.expect((!o.stable || o.quasi_stable) && (!o.neat || o.ample), {sys(i)});
      one_sided.expect(o.stable == (W.chosen(shell(i)) == i), {sys(i)});
    }
    add(agree);
    add(implications);
    add(one_sided);
  }
  {
    CheckRecorder r("blair_transfer");
    for (auto s : stable) {
      for (std::size_t a = 0; a < n; ++a) {
        if (t.blair_f(s, a)) r.expect(t.blair_w(F.chosen(a), s), {sys(s), sys(a)});
        if (t.blair_w(s, a)) r.expect(t.blair_f(W.chosen(a), s), {sys(s), sys(a)});
      }
    }
    add(r);
  }
  {
    CheckRecorder polar("polarization");
    CheckRecorder shell_order("shell_order");
    for (auto s : stable) {
      for (auto u : stable) {
        polar.expect(t.blair_f(s, u) == t.blair_w(u, s), {sys(s), sys(u)});
        shell_order.expect(t.blair_w(s, u) == F.desired(s).subset_of(F.desired(u)), {sys(s), sys(u)});
      }
    }
    add(polar);
    add(shell_order);
  }
  {
    CheckRecorder r("neat_stable_bijection");
    r.expect(stable.size() == neat.size(), {});
    for (auto s : stable) {
      const auto a = shell(s);
      r.expect(in(a, SystemClass::Neat) && W.chosen(a) == s, {sys(s)});
    }
    for (auto a : neat) {
      const auto s = W.chosen(a);
      r.expect(in(s, SystemClass::Stable) && shell(s) == a, {sys(a)});
    }
    add(r);
  }
  {
    CheckRecorder r("neat_below_descent");
    for (auto a : neat)
      for (std::size_t b = 0; b < n; ++b)
        if (sys(a).subset_of(sys(b))) r.expect(sys(a).subset_of(F.desired(W.chosen(b))), {sys(a), sys(b)});
    add(r);
  }
  {
    CheckRecorder r("ample_intersection");
    System all = t.problem().poset().full_system();
    for (auto b : ample) {
      all &= sys(b);
      for (auto c : ample) r.expect(in(t.joins().meet(b, c), SystemClass::Ample), {sys(b), sys(c)});
    }
    r.expect(in(t.lattice().index_of(all), SystemClass::Ample), {all});
    report.intersection_of_ample = all;
    add(r);
  }
  {
    CheckRecorder descent("ample_descent");
    CheckRecorder extension("ample_extension");
    for (auto b : ample) {
      descent.expect(in(shell(W.chosen(b)), SystemClass::Ample), {sys(b)});
      for (std::size_t b2 = 0; b2 < n; ++b2) {
        if (sys(b).subset_of(sys(b2)) && (sys(W.chosen(b2)) & sys(b)) == sys(W.chosen(b)))
          extension.expect(in(b2, SystemClass::Ample), {sys(b), sys(b2)});
      }
    }
    add(descent);
    add(extension);
  }
  {
    CheckRecorder fixed("ample_fixed_points");
    CheckRecorder retained("retained_shell_identity");
    for (std::size_t a = 0; a < n; ++a) {
      const auto dfw = F.desired(W.chosen(a));
      fixed.expect(((sys(a) | dfw) == sys(a)) == in(a, SystemClass::Ample), {sys(a)});
      retained.expect(F.desired(F.chosen(W.chosen(a))) == dfw, {sys(a)});
    }
    add(fixed);
    add(retained);
  }
  {
    CheckRecorder q2a("quasi_stable_shell_ample");
    for (auto q : quasi) q2a.expect(in(shell(q), SystemClass::Ample), {sys(q)});
    CheckRecorder a2q("ample_retained_quasi_stable");
    for (auto b : ample) a2q.expect(in(F.chosen(W.chosen(b)), SystemClass::QuasiStable), {sys(b)});
    add(q2a);
    add(a2q);
  }

  // Largest neat system inside each ideal, straight from the neat list.
  auto largest_neat_within = [&](std::size_t b) -> std::optional<std::size_t> {
    std::vector<std::size_t> inside;
    for (auto a : neat)
      if (sys(a).subset_of(sys(b))) inside.push_back(a);
    for (auto g : inside) {
      if (std::all_of(inside.begin(), inside.end(), [&](std::size_t x) { return sys(x).subset_of(sys(g)); }))
        return g;
    }
    return std::nullopt;
  };

  {
    CheckRecorder r("descending_iteration");
    for (std::size_t b = 0; b < n; ++b) {
      if (!in(b, SystemClass::Ample)) {
        bool refused = false;
        try {
          sigma(pr, sys(b));
        } catch (const Error& e) {
          refused = e.code() == Errc::NotAmple;
        }
        r.expect(refused, {sys(b)});
        continue;
      }
      const auto res = sigma(pr, sys(b));
      bool ok = !res.trace.rounds.empty() && res.trace.rounds.front().current == sys(b);
      for (std::size_t k = 0; ok && k < res.trace.rounds.size(); ++k) {
        const auto& round = res.trace.rounds[k];
        const bool last = k + 1 == res.trace.rounds.size();
        ok = round.next.subset_of(round.current) && (last ? round.next == round.current : !(round.next == round.current)) &&
             in(t.lattice().index_of(round.current), SystemClass::Ample) &&
             round.offered == sys(W.chosen(t.lattice().index_of(round.current))) &&
             (round.retained | round.rejected) == round.offered && !round.retained.intersects(round.rejected);
      }
      const auto expected = largest_neat_within(b);
      ok = ok && expected && res.neat_core == sys(*expected) && res.trace.fixpoint == res.neat_core &&
           res.stable == sys(W.chosen(*expected));
      r.expect(ok, {sys(b)});
    }
    add(r);
  }

  // ⪯_W extremes of the stable set.
  std::optional<std::size_t> top;
  std::optional<std::size_t> bottom;
  for (auto g : stable) {
    if (std::all_of(stable.begin(), stable.end(), [&](std::size_t s) { return t.blair_w(s, g); })) top = g;
    if (std::all_of(stable.begin(), stable.end(), [&](std::size_t s) { return t.blair_w(g, s); })) bottom = g;
  }
  const auto extremes = extremal_stable(pr);
  {
    CheckRecorder r("extremal_agreement");
    r.expect(top && bottom && extremes.max_w == sys(*top) && extremes.min_w == sys(*bottom),
             {extremes.max_w, extremes.min_w});
    add(r);
  }
  {
    CheckRecorder r("complete_lattice");
    r.expect(top.has_value() && bottom.has_value(), {});
    for (auto s : stable) {
      r.expect(t.blair_w(s, s), {sys(s)});
      for (auto u : stable) {
        if (s != u && t.blair_w(s, u) && t.blair_w(u, s)) r.fail({sys(s), sys(u)});
        const std::vector<std::size_t> pair{s, u};
        r.expect(brute_force_bound(t, stable, pair, true).has_value() &&
                     brute_force_bound(t, stable, pair, false).has_value(),
                 {sys(s), sys(u)});
        for (auto v : stable)
          if (t.blair_w(s, u) && t.blair_w(u, v)) r.expect(t.blair_w(s, v), {sys(s), sys(u), sys(v)});
      }
    }
    add(r);
  }
  {
    CheckRecorder r("lattice_formula");
    auto compare = [&](const std::vector<std::size_t>& family) {
      std::vector<System> members;
      for (auto i : family) members.push_back(sys(i));
      const auto lo = brute_force_bound(t, stable, family, true);
      const auto hi = brute_force_bound(t, stable, family, false);
      const bool ok = lo && hi && lattice_op(pr, LatticeOp::MeetW, members) == sys(*lo) &&
                      lattice_op(pr, LatticeOp::InfW, members) == sys(*lo) &&
                      lattice_op(pr, LatticeOp::JoinW, members) == sys(*hi) &&
                      lattice_op(pr, LatticeOp::SupW, members) == sys(*hi);
      r.expect(ok, members);
    };
    for (std::size_t x = 0; x < stable.size(); ++x)
      for (std::size_t y = x; y < stable.size(); ++y) compare({stable[x], stable[y]});
    std::mt19937_64 rng(options.seed);
    if (!stable.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, stable.size() - 1);
      for (std::size_t k = 0; k < options.random_families; ++k) {
        std::vector<std::size_t> family;
        if (stable.size() >= 3) {
          while (family.size() < 3) {
            const auto s = stable[pick(rng)];
            if (std::find(family.begin(), family.end(), s) == family.end()) family.push_back(s);
          }
        } else {
          for (int m = 0; m < 3; ++m) family.push_back(stable[pick(rng)]);
        }
        compare(family);
      }
      compare(stable);
    }
    add(r);
  }
  {
    CheckRecorder r("ample_closure");
    for (std::size_t a = 0; a < n; ++a) {
      const auto res = ample_closure(pr, sys(a));
      const auto idx = t.lattice().find(res.ample);
      bool ok = idx && in(*idx, SystemClass::Ample) && sys(a).subset_of(res.ample) &&
                res.trace.fixpoint == res.ample;
      if (in(a, SystemClass::Ample)) ok = ok && res.ample == sys(a) && res.trace.rounds.size() == 1;
      for (const auto& round : res.trace.rounds) ok = ok && round.current.subset_of(round.next);
      r.expect(ok, {sys(a)});
    }
    report.ample_closure_of_empty = ample_closure(pr, t.problem().poset().empty_system()).ample;
    add(r);
  }
  {
    CheckRecorder r("minimal_ample");
    const auto minimal = minimal_ample_containing(pr, t.problem().poset().empty_system(), options.cap);
    report.minimal_ample = minimal.ample;
    report.minimal_ample_core = minimal.core;
    const auto idx = t.lattice().index_of(minimal.ample);
    r.expect(in(idx, SystemClass::Neat), {minimal.ample});
    r.expect(minimal.core == extremes.min_w, {minimal.ample, minimal.core, extremes.min_w});
    for (auto b : ample) r.expect(minimal.ample.subset_of(sys(b)), {minimal.ample, sys(b)});
    // Every ideal has a least ample system above it.
    for (std::size_t u = 0; u < n; ++u) {
      System meet_all = t.problem().poset().full_system();
      for (auto b : ample)
        if (sys(u).subset_of(sys(b))) meet_all &= sys(b);
      r.expect(in(t.lattice().index_of(meet_all), SystemClass::Ample) && sys(u).subset_of(meet_all), {sys(u)});
    }
    add(r);
  }

  System stable_meet = t.problem().poset().full_system();
  for (auto s : stable) stable_meet &= sys(s);
  report.intersection_of_stable = stable_meet;
  return report;
}

}  // namespace plottlat::oracle
