#pragma once

#include <memory>
#include <string>
#include <vector>

#include "naive.hpp"
#include "plottlat/choice.hpp"
#include "plottlat/stability.hpp"

namespace fixtures {

using namespace plottlat;

inline std::shared_ptr<const Poset> discrete(std::vector<std::string> ids) {
  return std::make_shared<const Poset>(Poset::discrete(std::move(ids)));
}

inline std::vector<std::size_t> idx(const Poset& p, std::initializer_list<const char*> ids) {
  std::vector<std::size_t> out;
  for (const auto* id : ids) out.push_back(p.index_of(id));
  return out;
}

inline System sys(const Poset& p, std::initializer_list<const char*> ids) {
  System out(p.size());
  for (const auto* id : ids) out.insert(p.index_of(id));
  return out;
}

inline naive::Set to_set(const Poset& p, const System& s) {
  const auto names = p.names(s);
  return naive::Set(names.begin(), names.end());
}

inline System from_set(const Poset& p, const naive::Set& s) {
  System out(p.size());
  for (const auto& id : s) out.insert(p.index_of(id));
  return out;
}

inline std::vector<naive::Set> to_sets(const Poset& p, const std::vector<System>& xs) {
  std::vector<naive::Set> out;
  for (const auto& x : xs) out.push_back(to_set(p, x));
  return out;
}

inline Problem fix_empty() {
  auto p = discrete({});
  return Problem(identity_choice(p), identity_choice(p));
}

inline Problem fix_ab() {
  auto p = discrete({"a", "b"});
  return Problem(make_quota(p, idx(*p, {"a", "b"}), 1), make_quota(p, idx(*p, {"b", "a"}), 1));
}

inline naive::Model naive_ab() {
  return {{"a", "b"}, {}, naive::quota({"a", "b"}, 1), naive::quota({"b", "a"}, 1)};
}

inline Problem fix_cmp_modified() {
  auto p = discrete({"a", "b"});
  return Problem(make_quota(p, idx(*p, {"a", "b"}), 1), make_quota(p, idx(*p, {"b"}), 1));
}

inline std::shared_ptr<const Poset> chain() {
  std::vector<Poset::Cover> covers{{"x1", "x2"}};
  return std::make_shared<const Poset>(Poset::build({"x1", "x2"}, covers));
}

inline Problem fix_chain() {
  auto p = chain();
  return Problem(identity_choice(p), cut_choice(p, sys(*p, {"x1"})));
}

inline naive::Model naive_chain() {
  return {{"x1", "x2"},
          {{"x1", "x2"}},
          [](const naive::Set& a) { return a; },
          [](const naive::Set& a) { return naive::intersect(a, {"x1"}); }};
}

inline Problem fix_agg() {
  auto p = discrete({"a", "b", "c"});
  auto ab = discrete({"a", "b"});
  auto c = discrete({"c"});
  auto firm = make_aggregate(p, {idx(*p, {"a", "b"}), idx(*p, {"c"})},
                             {make_quota(ab, idx(*ab, {"a", "b"}), 1), make_quota(c, idx(*c, {"c"}), 1)});
  return Problem(make_quota(p, idx(*p, {"c", "b", "a"}), 2), validated(firm));
}

inline naive::Model naive_agg() {
  return {{"a", "b", "c"},
          {},
          naive::quota({"c", "b", "a"}, 2),
          naive::aggregate({{"a", "b"}, {"c"}}, {naive::quota({"a", "b"}, 1), naive::quota({"c"}, 1)})};
}

inline Problem fix_marriage() {
  auto p = discrete({"e11", "e12", "e21", "e22"});
  auto part = [&](std::initializer_list<const char*> ids, std::initializer_list<const char*> order) {
    std::vector<std::string> names(ids.begin(), ids.end());
    auto sub = discrete(names);
    return make_quota(sub, idx(*sub, order), 1);
  };
  auto worker = make_aggregate(p, {idx(*p, {"e11", "e12"}), idx(*p, {"e21", "e22"})},
                               {part({"e11", "e12"}, {"e11", "e12"}), part({"e21", "e22"}, {"e22", "e21"})});
  auto firm = make_aggregate(p, {idx(*p, {"e11", "e21"}), idx(*p, {"e12", "e22"})},
                             {part({"e11", "e21"}, {"e21", "e11"}), part({"e12", "e22"}, {"e12", "e22"})});
  return Problem(validated(worker), validated(firm));
}

inline naive::Model naive_marriage() {
  return {{"e11", "e12", "e21", "e22"},
          {},
          naive::aggregate({{"e11", "e12"}, {"e21", "e22"}},
                           {naive::quota({"e11", "e12"}, 1), naive::quota({"e22", "e21"}, 1)}),
          naive::aggregate({{"e11", "e21"}, {"e12", "e22"}},
                           {naive::quota({"e21", "e11"}, 1), naive::quota({"e12", "e22"}, 1)})};
}

// C({a,b}) = {a}, C({a}) = ∅, C({b}) = {b}, C(∅) = ∅.
inline TableEntries t_bad_entries(const Poset& p) {
  return {{sys(p, {}), sys(p, {})},
          {sys(p, {"a"}), sys(p, {})},
          {sys(p, {"b"}), sys(p, {"b"})},
          {sys(p, {"a", "b"}), sys(p, {"a"})}};
}

}  // namespace fixtures
