#include "plottlat/generator.hpp"

#include <algorithm>

#include "plottlat/error.hpp"

namespace plottlat::gen {

System Component::choose(const System& a) const {
  System out(a.universe());
  std::size_t taken = 0;
  for (auto e : priority) {
    if (taken == quota) break;
    if (a.contains(e)) {
      out.insert(e);
      ++taken;
    }
  }
  return out;
}

System choose_union(std::span<const Component> components, const System& a) {
  System out(a.universe());
  for (const auto& c : components) out |= c.choose(a);
  return out;
}

std::vector<std::string> default_names(std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(count <= 26 ? std::string(1, static_cast<char>('a' + i)) : "e" + std::to_string(i));
  return out;
}

std::size_t Generator::uniform(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
}

double Generator::unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

Poset Generator::random_poset(std::size_t elements, double density) {
  std::vector<Poset::Cover> covers;
  const auto names = default_names(elements);
  for (std::size_t i = 0; i < elements; ++i)
    for (std::size_t j = i + 1; j < elements; ++j)
      if (unit() < density) covers.emplace_back(names[i], names[j]);
  return Poset::build(names, covers);
}

std::shared_ptr<const Poset> Generator::random_bounded_poset(std::size_t max_elements, std::size_t max_ideals) {
  for (;;) {
    const auto n = uniform(1, max_elements);
    auto p = random_poset(n, 0.3 * unit());
    if (count_ideals(p, max_ideals) <= max_ideals) return std::make_shared<const Poset>(std::move(p));
  }
}

Component Generator::random_component(const Poset& p) {
  System seed(p.size());
  for (std::size_t e = 0; e < p.size(); ++e)
    if (unit() < 0.7) seed.insert(e);
  const System acc = p.down_closure(seed);

  // Random linear extension of Acc: repeatedly take a random minimal element.
  Component c;
  System taken(p.size());
  while (taken.count() < acc.count()) {
    std::vector<std::size_t> minimal;
    (acc - taken).for_each([&](std::size_t e) {
      System below = p.principal(e);
      below.erase(e);
      if (below.subset_of(taken)) minimal.push_back(e);
    });
    const auto e = minimal[uniform(0, minimal.size() - 1)];
    c.priority.push_back(e);
    taken.insert(e);
  }
  c.quota = uniform(0, c.priority.size());
  return c;
}

std::vector<Component> Generator::random_components(const Poset& p, std::size_t max_count) {
  std::vector<Component> out;
  const auto k = uniform(1, max_count);
  for (std::size_t i = 0; i < k; ++i) out.push_back(random_component(p));
  return out;
}

ChoiceFunction Generator::random_plott_table(const std::shared_ptr<const Poset>& p) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const auto comps = random_components(*p, 3);
    try {
      return make_table_from(p, [&](const System& a) { return choose_union(comps, a); });
    } catch (const Error& e) {
      if (e.code() != Errc::PlottFailed) throw;
    }
  }
  return identity_choice(p);
}

ChoiceFunction Generator::random_discrete_choice(const std::shared_ptr<const Poset>& p) {
  switch (uniform(0, 2)) {
    case 0: {
      const auto c = random_component(*p);
      return make_quota(p, c.priority, c.quota);
    }
    case 1: {
      if (p->size() < 2) break;
      const auto parts_count = uniform(2, std::min<std::size_t>(3, p->size()));
      std::vector<std::size_t> order(p->size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::shuffle(order.begin(), order.end(), rng_);
      std::vector<std::vector<std::size_t>> parts(parts_count);
      for (std::size_t i = 0; i < order.size(); ++i) parts[i < parts_count ? i : uniform(0, parts_count - 1)].push_back(order[i]);
      std::vector<ChoiceFunction> children;
      for (auto& part : parts) {
        std::sort(part.begin(), part.end());
        auto sub = std::make_shared<const Poset>(p->induced(part));
        const auto c = random_component(*sub);
        children.push_back(make_quota(sub, c.priority, c.quota));
      }
      return make_aggregate(p, std::move(parts), std::move(children));
    }
    default:
      break;
  }
  return random_plott_table(p);
}

Problem Generator::random_discrete_problem(std::size_t max_elements) {
  auto p = std::make_shared<const Poset>(Poset::discrete(default_names(uniform(0, max_elements))));
  auto w = random_discrete_choice(p);
  auto f = random_discrete_choice(p);
  return Problem(std::move(w), std::move(f));
}

Problem Generator::random_poset_problem(std::size_t max_elements, std::size_t max_ideals) {
  auto p = random_bounded_poset(max_elements, max_ideals);
  auto w = random_plott_table(p);
  auto f = random_plott_table(p);
  return Problem(std::move(w), std::move(f));
}

std::pair<Problem, Problem> Generator::random_comparable_pair(std::size_t max_elements, std::size_t max_ideals) {
  const bool discrete = uniform(0, 1) == 0;
  auto p = discrete ? std::make_shared<const Poset>(Poset::discrete(default_names(uniform(1, max_elements))))
                    : random_bounded_poset(max_elements, max_ideals);

  auto w = random_components(*p, 2);
  auto f = random_components(*p, 3);
  // Worker becomes more compliant: raise a quota or add a component.
  auto w2 = w;
  if (uniform(0, 1) == 0) {
    auto& c = w2[uniform(0, w2.size() - 1)];
    c.quota = uniform(c.quota, c.priority.size());
  } else {
    w2.push_back(random_component(*p));
  }
  // Firm becomes more demanding: lower a quota or drop components.
  auto f2 = f;
  if (uniform(0, 1) == 0) {
    auto& c = f2[uniform(0, f2.size() - 1)];
    c.quota = uniform(0, c.quota);
  } else {
    f2.erase(f2.begin() + static_cast<std::ptrdiff_t>(uniform(0, f2.size() - 1)));
  }

  auto table = [&](const std::vector<Component>& comps) {
    return make_table_from(p, [&](const System& a) { return choose_union(comps, a); });
  };
  Problem original(table(w), table(f));
  Problem modified(table(w2), table(f2));
  if (!check_comparative(original, modified).holds)
    throw Error(Errc::InternalInvariant, "generated pair is not comparable");
  return {std::move(original), std::move(modified)};
}

marriage::Instance Generator::random_marriage(std::size_t max_men, std::size_t max_women) {
  marriage::Instance inst;
  const auto men = uniform(1, max_men);
  const auto women = uniform(1, max_women);
  auto random_list = [&](std::size_t others) {
    std::vector<std::size_t> list;
    for (std::size_t j = 0; j < others; ++j)
      if (unit() < 0.8) list.push_back(j);
    std::shuffle(list.begin(), list.end(), rng_);
    return list;
  };
  for (std::size_t m = 0; m < men; ++m) inst.men.push_back(random_list(women));
  for (std::size_t w = 0; w < women; ++w) inst.women.push_back(random_list(men));
  return inst;
}

}  // namespace plottlat::gen
