#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "plottlat/choice.hpp"
#include "plottlat/marriage.hpp"
#include "plottlat/poset.hpp"
#include "plottlat/stability.hpp"

namespace plottlat::gen {

/// Top-`quota` selection along `priority`, a linear extension of an ideal
/// Acc (lower elements first). Its choices are ideals, and unions of such
/// selections are Plott functions on the ideal lattice.
struct Component {
  std::vector<std::size_t> priority;
  std::size_t quota = 0;

  System choose(const System& a) const;
};

System choose_union(std::span<const Component> components, const System& a);

/// Seeded source of random posets, Plott choice functions, problems, and
/// marriage markets. Identical seeds give identical streams.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() noexcept { return rng_; }
  std::size_t uniform(std::size_t lo, std::size_t hi);
  double unit();

  /// Random strict upper-triangular covers with probability `density`.
  Poset random_poset(std::size_t elements, double density);
  /// Redraws until the ideal count is at most `max_ideals`.
  std::shared_ptr<const Poset> random_bounded_poset(std::size_t max_elements, std::size_t max_ideals);

  Component random_component(const Poset& p);
  std::vector<Component> random_components(const Poset& p, std::size_t max_count);

  /// Union-of-components table, rejection-sampled against validate_plott.
  ChoiceFunction random_plott_table(const std::shared_ptr<const Poset>& p);
  /// Quota, aggregate of quotas, or union table on a discrete poset.
  ChoiceFunction random_discrete_choice(const std::shared_ptr<const Poset>& p);

  Problem random_discrete_problem(std::size_t max_elements);
  Problem random_poset_problem(std::size_t max_elements, std::size_t max_ideals);

  /// (original, modified) with D_F' ⊆ D_F and W ⊆ W' pointwise.
  std::pair<Problem, Problem> random_comparable_pair(std::size_t max_elements, std::size_t max_ideals);

  marriage::Instance random_marriage(std::size_t max_men, std::size_t max_women);

 private:
  std::mt19937_64 rng_;
};

std::vector<std::string> default_names(std::size_t count);

}  // namespace plottlat::gen
