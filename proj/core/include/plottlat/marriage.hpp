#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "plottlat/stability.hpp"

namespace plottlat::marriage {

/// One-to-one market. `men[m]` lists the acceptable women best first;
/// `women[w]` lists the acceptable men best first.
struct Instance {
  std::vector<std::vector<std::size_t>> men;
  std::vector<std::vector<std::size_t>> women;
};

struct Matching {
  std::vector<std::optional<std::size_t>> wife;  // per man
  friend bool operator==(const Matching&, const Matching&) = default;
};

/// Man-proposing deferred acceptance. Throws MalformedPreferences.
Matching deferred_acceptance(const Instance& inst);

/// Contract identifier for man m and woman w (0-based), e.g. "e12".
std::string contract_name(const Instance& inst, std::size_t man, std::size_t woman);

/// Contracts market with one contract per (man, woman) pair. Worker
/// aggregates the men's unit-quota choices, Firm the women's.
Problem to_problem(const Instance& inst);

System contracts_of(const Instance& inst, const Matching& matching);

struct CrossCheck {
  Matching matching;
  System da_contracts;
  System s_max_w;
  System s_min_w;
  bool agrees = false;  // da_contracts == s_max_w
};

/// Runs deferred acceptance and the contract solver on the same market.
CrossCheck deferred_acceptance_oracle(const Instance& inst);

}  // namespace plottlat::marriage
