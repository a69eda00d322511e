#include "plottlat/choice.hpp"

#include <algorithm>
#include <variant>

#include "plottlat/error.hpp"

namespace plottlat {

namespace detail {

struct ChoiceImpl {
  std::shared_ptr<const Poset> poset;
  std::variant<ChoiceFunction::QuotaParams, ChoiceFunction::TableParams, ChoiceFunction::AggregateParams> params;
  Validation validation = Validation::Unchecked;
  std::optional<PlottReport> report;
};

struct ChoiceAccess {
  static ChoiceFunction make(ChoiceImpl impl) {
    return ChoiceFunction(std::make_shared<const ChoiceImpl>(std::move(impl)));
  }
  static const ChoiceImpl& impl(const ChoiceFunction& cf) { return *cf.impl_; }
};

}  // namespace detail

using detail::ChoiceAccess;
using detail::ChoiceImpl;

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::Table: return "table";
    case Family::Quota: return "quota";
    case Family::Aggregate: return "aggregate";
  }
  return "unknown";
}

std::string_view to_string(Validation v) noexcept {
  switch (v) {
    case Validation::Unchecked: return "unchecked";
    case Validation::PlottVerified: return "plott-verified";
    case Validation::PlottByConstruction: return "plott-by-construction";
    case Validation::PlottFailed: return "plott-failed";
  }
  return "unknown";
}

std::string_view to_string(PlottLaw law) noexcept {
  switch (law) {
    case PlottLaw::Substitutability: return "substitutability";
    case PlottLaw::Consistency: return "consistency";
    case PlottLaw::IdealValued: return "ideal_valued";
    case PlottLaw::UnionInclusion: return "union_inclusion";
    case PlottLaw::PathIndependence: return "path_independence";
  }
  return "unknown";
}

Family ChoiceFunction::family() const noexcept {
  if (quota_params()) return Family::Quota;
  if (table_params()) return Family::Table;
  return Family::Aggregate;
}

const Poset& ChoiceFunction::poset() const noexcept { return *impl_->poset; }
const std::shared_ptr<const Poset>& ChoiceFunction::poset_ptr() const noexcept { return impl_->poset; }
Validation ChoiceFunction::validation() const noexcept { return impl_->validation; }

bool ChoiceFunction::trusted() const noexcept {
  return impl_->validation == Validation::PlottVerified || impl_->validation == Validation::PlottByConstruction;
}

const PlottReport* ChoiceFunction::report() const noexcept {
  return impl_->report ? &*impl_->report : nullptr;
}

const ChoiceFunction::QuotaParams* ChoiceFunction::quota_params() const noexcept {
  return std::get_if<QuotaParams>(&impl_->params);
}
const ChoiceFunction::TableParams* ChoiceFunction::table_params() const noexcept {
  return std::get_if<TableParams>(&impl_->params);
}
const ChoiceFunction::AggregateParams* ChoiceFunction::aggregate_params() const noexcept {
  return std::get_if<AggregateParams>(&impl_->params);
}

System ChoiceFunction::choose(const System& a) const {
  if (!impl_->poset->is_ideal(a)) throw Error(Errc::NotAnIdeal, "argument of choose is not an ideal", {a});
  return choose_unchecked(a);
}

System ChoiceFunction::choose_unchecked(const System& a) const {
  const auto n = impl_->poset->size();
  if (const auto* q = std::get_if<QuotaParams>(&impl_->params)) {
    System out(n);
    std::size_t taken = 0;
    for (auto e : q->priority) {
      if (taken == q->quota) break;
      if (a.contains(e)) {
        out.insert(e);
        ++taken;
      }
    }
    return out;
  }
  if (const auto* t = std::get_if<TableParams>(&impl_->params)) {
    auto it = t->entries.find(a);
    if (it == t->entries.end()) throw Error(Errc::NotAnIdeal, "set is not an ideal of the table's poset", {a});
    return it->second;
  }
  const auto& agg = std::get<AggregateParams>(impl_->params);
  System out(n);
  for (std::size_t i = 0; i < agg.parts.size(); ++i) {
    const auto& part = agg.parts[i];
    System local(part.size());
    for (std::size_t j = 0; j < part.size(); ++j)
      if (a.contains(part[j])) local.insert(j);
    agg.children[i].choose_unchecked(local).for_each([&](std::size_t j) { out.insert(part[j]); });
  }
  return out;
}

ChoiceFunction ChoiceFunction::with_report(PlottReport report) const {
  ChoiceImpl copy = *impl_;
  copy.validation = report.ok() ? Validation::PlottVerified : Validation::PlottFailed;
  copy.report = std::move(report);
  return ChoiceAccess::make(std::move(copy));
}

bool operator==(const ChoiceFunction& a, const ChoiceFunction& b) {
  if (a.impl_ == b.impl_) return true;
  if (!(a.poset() == b.poset()) || a.family() != b.family()) return false;
  if (const auto* qa = a.quota_params()) {
    const auto* qb = b.quota_params();
    return qa->priority == qb->priority && qa->quota == qb->quota;
  }
  if (const auto* ta = a.table_params()) return ta->entries == b.table_params()->entries;
  const auto* ga = a.aggregate_params();
  const auto* gb = b.aggregate_params();
  return ga->parts == gb->parts && ga->children == gb->children;
}

System choose(const ChoiceFunction& cf, const System& a) { return cf.choose(a); }

System desirability_unchecked(const ChoiceFunction& cf, const System& a) {
  const auto& p = cf.poset();
  System out(p.size());
  for (std::size_t e = 0; e < p.size(); ++e) {
    if (cf.choose_unchecked(a | p.principal(e)).contains(e)) out.insert(e);
  }
  return out;
}

System desirability(const ChoiceFunction& cf, const System& a) {
  if (!cf.poset().is_ideal(a)) throw Error(Errc::NotAnIdeal, "argument of desirability is not an ideal", {a});
  return desirability_unchecked(cf, a);
}

bool blair_leq(const ChoiceFunction& cf, const System& a, const System& b) {
  const auto n = cf.poset().size();
  if (a.universe() != n || b.universe() != n)
    throw Error(Errc::PosetMismatch, "systems belong to a different poset");
  if (!cf.poset().is_ideal(a)) throw Error(Errc::NotAnIdeal, "left argument is not an ideal", {a});
  if (!cf.poset().is_ideal(b)) throw Error(Errc::NotAnIdeal, "right argument is not an ideal", {b});
  return cf.choose_unchecked(a | b).subset_of(b);
}

namespace {

class WitnessKeeper {
 public:
  void offer(PlottLaw law, const System& a, const System& b, const System& ca, const System& cb) {
    const auto k = static_cast<std::size_t>(law);
    const auto weight = a.count() + b.count();
    if (!best_[k] || weight < best_[k]->a.count() + best_[k]->b.count())
      best_[k] = PlottWitness{law, a, b, ca, cb};
  }
  bool violated(PlottLaw law) const { return best_[static_cast<std::size_t>(law)].has_value(); }
  std::vector<PlottWitness> take() {
    std::vector<PlottWitness> out;
    for (auto& w : best_)
      if (w) out.push_back(std::move(*w));
    return out;
  }

 private:
  std::optional<PlottWitness> best_[5];
};

}  // namespace

PlottReport validate_plott(const ChoiceFunction& cf, std::uint64_t cap) {
  const auto& p = cf.poset();
  const IdealLattice lattice(p, cap);
  const auto n = lattice.size();
  std::vector<System> chosen;
  chosen.reserve(n);
  for (const auto& a : lattice) chosen.push_back(cf.choose_unchecked(a));

  PlottReport report;
  WitnessKeeper keep;
  std::vector<std::optional<std::size_t>> chosen_index(n);
  for (std::size_t i = 0; i < n; ++i) {
    ++report.cases_checked;
    if (!chosen[i].subset_of(lattice[i]) || !p.is_ideal(chosen[i])) {
      keep.offer(PlottLaw::IdealValued, lattice[i], lattice[i], chosen[i], chosen[i]);
    } else {
      chosen_index[i] = lattice.find(chosen[i]);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = lattice[i];
    for (std::size_t j = 0; j < n; ++j) {
      const auto& b = lattice[j];
      report.cases_checked += 1;
      if (a.subset_of(b) && !(a & chosen[j]).subset_of(chosen[i]))
        keep.offer(PlottLaw::Substitutability, a, b, chosen[i], chosen[j]);
      // Consistency, with the roles named as in C(A) ⊆ B ⊆ A.
      if (chosen[i].subset_of(b) && b.subset_of(a) && !(chosen[i] == chosen[j]))
        keep.offer(PlottLaw::Consistency, a, b, chosen[i], chosen[j]);

      const auto u = lattice.index_of(a | b);
      if (!chosen[u].subset_of(chosen[i] | b)) keep.offer(PlottLaw::UnionInclusion, a, b, chosen[i], chosen[j]);
      if (chosen_index[i]) {
        const auto v = lattice.find(chosen[i] | b);
        if (v && !(chosen[*v] == chosen[u])) keep.offer(PlottLaw::PathIndependence, a, b, chosen[i], chosen[j]);
      }
    }
  }

  report.ideal_valued_ok = !keep.violated(PlottLaw::IdealValued);
  report.substitutability_ok = !keep.violated(PlottLaw::Substitutability);
  report.consistency_ok = !keep.violated(PlottLaw::Consistency);
  report.union_laws_ok = !keep.violated(PlottLaw::UnionInclusion) && !keep.violated(PlottLaw::PathIndependence);
  report.witnesses = keep.take();
  return report;
}

ChoiceFunction validated(const ChoiceFunction& cf, std::uint64_t cap) {
  return cf.with_report(validate_plott(cf, cap));
}

namespace {

// Quota and well-formed aggregates are Plott by construction; small domains
// get the exhaustive check anyway.
ChoiceFunction settle_trusted(ChoiceImpl impl) {
  const auto ideal_count = count_ideals(*impl.poset, kConstructionCheckCap);
  if (ideal_count > kConstructionCheckCap) {
    impl.validation = Validation::PlottByConstruction;
    return ChoiceAccess::make(std::move(impl));
  }
  auto cf = ChoiceAccess::make(std::move(impl));
  return validated(cf, kConstructionCheckCap);
}

}  // namespace

ChoiceFunction make_quota(std::shared_ptr<const Poset> poset, std::vector<std::size_t> priority, std::size_t quota) {
  if (!poset->is_discrete())
    throw Error(Errc::QuotaOnNontrivialPoset, "quota choice requires a discrete poset");
  System seen(poset->size());
  for (auto e : priority) {
    if (e >= poset->size()) throw Error(Errc::UnknownElement, "priority lists an index outside the poset");
    if (seen.contains(e)) throw Error(Errc::DuplicateElement, "priority lists '" + poset->name(e) + "' twice");
    seen.insert(e);
  }
  ChoiceImpl impl{std::move(poset), ChoiceFunction::QuotaParams{std::move(priority), quota}, Validation::Unchecked, {}};
  auto cf = settle_trusted(std::move(impl));
  if (cf.validation() == Validation::PlottFailed)
    throw Error(Errc::InternalInvariant, "quota choice failed Plott validation");
  return cf;
}

ChoiceFunction make_table(std::shared_ptr<const Poset> poset, TableEntries entries, const TableOptions& options) {
  const auto& p = *poset;
  for (const auto& [key, value] : entries) {
    if (!p.is_ideal(key)) throw Error(Errc::NotAnIdeal, "table key is not an ideal", {key});
    if (value.universe() != p.size() || !value.subset_of(key))
      throw Error(Errc::ValueNotSubset, "table value is not a subset of its key", {key, value});
    if (!p.is_ideal(value)) throw Error(Errc::ValueNotIdeal, "table value is not an ideal", {key, value});
  }
  const auto ideal_count = count_ideals(p, options.cap);
  if (ideal_count > options.cap)
    throw Error(Errc::DomainTooLarge, "poset has more than " + std::to_string(options.cap) + " ideals");
  if (entries.size() != ideal_count) {
    for (const auto& ideal : enumerate_ideals(p, options.cap)) {
      if (!entries.contains(ideal)) throw Error(Errc::TableIncomplete, "table has no entry for an ideal", {ideal});
    }
  }

  auto cf = ChoiceAccess::make(
      ChoiceImpl{std::move(poset), ChoiceFunction::TableParams{std::move(entries)}, Validation::Unchecked, {}});
  if (!options.validate) return cf;
  cf = validated(cf, options.cap);
  if (options.strict && cf.validation() == Validation::PlottFailed) {
    const auto& w = cf.report()->witnesses.front();
    throw Error(Errc::PlottFailed, std::string("table violates ") + std::string(to_string(w.law)), {w.a, w.b});
  }
  return cf;
}

ChoiceFunction make_table_from(std::shared_ptr<const Poset> poset, const std::function<System(const System&)>& fn,
                               const TableOptions& options) {
  TableEntries entries;
  for (const auto& ideal : enumerate_ideals(*poset, options.cap)) entries.emplace(ideal, fn(ideal));
  return make_table(std::move(poset), std::move(entries), options);
}

ChoiceFunction identity_choice(std::shared_ptr<const Poset> poset, const TableOptions& options) {
  return make_table_from(std::move(poset), [](const System& a) { return a; }, options);
}

ChoiceFunction cut_choice(std::shared_ptr<const Poset> poset, const System& keep, const TableOptions& options) {
  if (!poset->is_ideal(keep)) throw Error(Errc::NotAnIdeal, "cut set is not an ideal", {keep});
  return make_table_from(std::move(poset), [keep](const System& a) { return a & keep; }, options);
}

ChoiceFunction make_aggregate(std::shared_ptr<const Poset> poset, std::vector<std::vector<std::size_t>> parts,
                              std::vector<ChoiceFunction> children) {
  const auto& p = *poset;
  if (parts.size() != children.size())
    throw Error(Errc::NotAPartition, "aggregate needs exactly one choice function per part");
  std::vector<std::size_t> owner(p.size(), parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (auto e : parts[i]) {
      if (e >= p.size()) throw Error(Errc::UnknownElement, "part lists an index outside the poset");
      if (owner[e] != parts.size()) throw Error(Errc::NotAPartition, "'" + p.name(e) + "' appears in two parts");
      owner[e] = i;
    }
  }
  for (std::size_t e = 0; e < p.size(); ++e)
    if (owner[e] == parts.size()) throw Error(Errc::NotAPartition, "'" + p.name(e) + "' belongs to no part");
  for (std::size_t e = 0; e < p.size(); ++e) {
    p.principal(e).for_each([&](std::size_t f) {
      if (owner[f] != owner[e])
        throw Error(Errc::OrderCrossesParts, "'" + p.name(f) + "' <= '" + p.name(e) + "' across parts");
    });
  }
  bool all_verified = true;
  bool all_trusted = true;
  bool any_failed = false;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!(children[i].poset() == p.induced(parts[i])))
      throw Error(Errc::PosetMismatch, "child " + std::to_string(i) + " is not defined on its part");
    all_verified = all_verified && children[i].validation() == Validation::PlottVerified;
    all_trusted = all_trusted && children[i].trusted();
    any_failed = any_failed || children[i].validation() == Validation::PlottFailed;
  }
  const auto status = all_verified  ? Validation::PlottVerified
                      : all_trusted ? Validation::PlottByConstruction
                      : any_failed  ? Validation::PlottFailed
                                    : Validation::Unchecked;
  return ChoiceAccess::make(ChoiceImpl{std::move(poset),
                                       ChoiceFunction::AggregateParams{std::move(parts), std::move(children)},
                                       status,
                                       {}});
}

}  // namespace plottlat
