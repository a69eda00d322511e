#include "plottlat/poset.hpp"

#include <algorithm>

#include "plottlat/error.hpp"

namespace plottlat {

namespace {

// Elements in a linear extension of the order (every element after all of
// its strict lower bounds).
std::vector<std::size_t> linear_extension(const Poset& p) {
  std::vector<std::size_t> order(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return p.principal(a).count() < p.principal(b).count();
  });
  return order;
}

// Depth-first include/exclude over a linear extension: an element may join
// only when its whole principal ideal (minus itself) is already present.
template <typename Visit>
bool walk_ideals(const Poset& p, const std::vector<std::size_t>& order, std::size_t depth,
                 System& current, Visit& visit) {
  if (depth == order.size()) return visit(current);
  const auto e = order[depth];
  if (!walk_ideals(p, order, depth + 1, current, visit)) return false;
  System below = p.principal(e);
  below.erase(e);
  if (below.subset_of(current)) {
    current.insert(e);
    const bool go_on = walk_ideals(p, order, depth + 1, current, visit);
    current.erase(e);
    if (!go_on) return false;
  }
  return true;
}

}  // namespace

Poset Poset::build(std::vector<std::string> elements, std::span<const Cover> covers) {
  Poset p;
  const auto n = elements.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.index_.emplace(elements[i], i).second)
      throw Error(Errc::DuplicateElement, "element '" + elements[i] + "' declared twice");
  }
  p.elements_ = std::move(elements);

  std::vector<std::vector<std::size_t>> uppers(n);
  for (const auto& [lo, hi] : covers) {
    const auto l = p.index_of(lo);
    const auto h = p.index_of(hi);
    if (l != h) uppers[l].push_back(h);
  }

  // up_[e] = everything reachable from e along covers, e included.
  p.up_.assign(n, System(n));
  for (std::size_t e = 0; e < n; ++e) {
    std::vector<std::size_t> stack{e};
    p.up_[e].insert(e);
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      for (auto y : uppers[x]) {
        if (!p.up_[e].contains(y)) {
          p.up_[e].insert(y);
          stack.push_back(y);
        }
      }
    }
  }
  p.down_.assign(n, System(n));
  for (std::size_t e = 0; e < n; ++e) {
    p.up_[e].for_each([&](std::size_t f) { p.down_[f].insert(e); });
  }
  for (std::size_t e = 0; e < n; ++e) {
    System strictly_above = p.up_[e];
    strictly_above.erase(e);
    if (strictly_above.intersects(p.down_[e])) {
      const auto f = (strictly_above & p.down_[e]).first();
      throw Error(Errc::CycleDetected,
                  "'" + p.elements_[e] + "' and '" + p.elements_[f] + "' lie below each other");
    }
    if (p.down_[e].count() > 1) p.discrete_ = false;
  }
  return p;
}

Poset Poset::discrete(std::vector<std::string> elements) {
  return build(std::move(elements), {});
}

std::optional<std::size_t> Poset::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Poset::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error(Errc::UnknownElement, "no element named '" + std::string(id) + "'");
}

bool Poset::is_ideal(const System& s) const {
  if (s.universe() != size()) return false;
  bool ok = true;
  s.for_each([&](std::size_t e) {
    if (ok && !down_[e].subset_of(s)) ok = false;
  });
  return ok;
}

System Poset::down_closure(const System& s) const {
  if (s.universe() != size())
    throw Error(Errc::PosetMismatch, "system universe does not match the poset");
  System out(size());
  s.for_each([&](std::size_t e) { out |= down_[e]; });
  return out;
}

System Poset::system_of(std::span<const std::string> ids) const {
  System out(size());
  for (const auto& id : ids) out.insert(index_of(id));
  return out;
}

std::vector<std::string> Poset::names(const System& s) const {
  std::vector<std::string> out;
  s.for_each([&](std::size_t e) { out.push_back(elements_[e]); });
  return out;
}

Poset Poset::induced(std::span<const std::size_t> members) const {
  std::vector<std::string> ids;
  ids.reserve(members.size());
  for (auto m : members) ids.push_back(elements_.at(m));
  std::vector<Cover> covers;
  for (auto a : members)
    for (auto b : members)
      if (a != b && leq(a, b)) covers.emplace_back(elements_[a], elements_[b]);
  return build(std::move(ids), covers);
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::cover_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto n = size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !leq(a, b)) continue;
      // a ⋖ b iff nothing lies strictly between.
      System between = up_[a] & down_[b];
      between.erase(a);
      between.erase(b);
      if (between.empty()) out.emplace_back(a, b);
    }
  }
  return out;
}

std::uint64_t count_ideals(const Poset& p, std::uint64_t limit) {
  const auto order = linear_extension(p);
  std::uint64_t count = 0;
  System current(p.size());
  auto visit = [&](const System&) { return ++count <= limit; };
  walk_ideals(p, order, 0, current, visit);
  return count;
}

std::vector<System> enumerate_ideals(const Poset& p, std::uint64_t cap) {
  const auto count = count_ideals(p, cap);
  if (count > cap)
    throw Error(Errc::DomainTooLarge,
                "poset has more than " + std::to_string(cap) + " ideals");
  std::vector<System> out;
  out.reserve(static_cast<std::size_t>(count));
  const auto order = linear_extension(p);
  System current(p.size());
  auto visit = [&](const System& s) {
    out.push_back(s);
    return true;
  };
  walk_ideals(p, order, 0, current, visit);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

IdealLattice::IdealLattice(const Poset& p, std::uint64_t cap) : ideals_(enumerate_ideals(p, cap)) {
  index_.reserve(ideals_.size());
  for (std::size_t i = 0; i < ideals_.size(); ++i) index_.emplace(ideals_[i], i);
}

std::optional<std::size_t> IdealLattice::find(const System& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t IdealLattice::index_of(const System& s) const {
  if (auto i = find(s)) return *i;
  throw Error(Errc::NotAnIdeal, "set is not an ideal of the poset");
}

}  // namespace plottlat
