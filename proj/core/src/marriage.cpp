#include "plottlat/marriage.hpp"

#include <deque>
#include <memory>

#include "plottlat/error.hpp"

namespace plottlat::marriage {

namespace {

void check_lists(const std::vector<std::vector<std::size_t>>& lists, std::size_t other_side, const char* side) {
  for (std::size_t i = 0; i < lists.size(); ++i) {
    std::vector<bool> seen(other_side, false);
    for (auto j : lists[i]) {
      if (j >= other_side)
        throw Error(Errc::MalformedPreferences, std::string(side) + " " + std::to_string(i) + " ranks an unknown partner");
      if (seen[j])
        throw Error(Errc::MalformedPreferences, std::string(side) + " " + std::to_string(i) + " ranks a partner twice");
      seen[j] = true;
    }
  }
}

std::size_t contract_index(const Instance& inst, std::size_t man, std::size_t woman) {
  return man * inst.women.size() + woman;
}

}  // namespace

Matching deferred_acceptance(const Instance& inst) {
  const auto men = inst.men.size();
  const auto women = inst.women.size();
  check_lists(inst.men, women, "man");
  check_lists(inst.women, men, "woman");

  // rank[w][m]: position of m in w's list, or `men` when unacceptable.
  std::vector<std::vector<std::size_t>> rank(women, std::vector<std::size_t>(men, men));
  for (std::size_t w = 0; w < women; ++w)
    for (std::size_t k = 0; k < inst.women[w].size(); ++k) rank[w][inst.women[w][k]] = k;

  std::vector<std::size_t> next_proposal(men, 0);
  std::vector<std::optional<std::size_t>> husband(women);
  std::deque<std::size_t> free_men;
  for (std::size_t m = 0; m < men; ++m) free_men.push_back(m);

  while (!free_men.empty()) {
    const auto m = free_men.front();
    free_men.pop_front();
    if (next_proposal[m] == inst.men[m].size()) continue;
    const auto w = inst.men[m][next_proposal[m]++];
    if (rank[w][m] == men) {
      free_men.push_back(m);
    } else if (!husband[w]) {
      husband[w] = m;
    } else if (rank[w][m] < rank[w][*husband[w]]) {
      free_men.push_back(*husband[w]);
      husband[w] = m;
    } else {
      free_men.push_back(m);
    }
  }

  Matching out;
  out.wife.assign(men, std::nullopt);
  for (std::size_t w = 0; w < women; ++w)
    if (husband[w]) out.wife[*husband[w]] = w;
  return out;
}

std::string contract_name(const Instance& inst, std::size_t man, std::size_t woman) {
  if (inst.men.size() <= 9 && inst.women.size() <= 9)
    return "e" + std::to_string(man + 1) + std::to_string(woman + 1);
  return "e" + std::to_string(man + 1) + "_" + std::to_string(woman + 1);
}

Problem to_problem(const Instance& inst) {
  check_lists(inst.men, inst.women.size(), "man");
  check_lists(inst.women, inst.men.size(), "woman");
  std::vector<std::string> ids;
  for (std::size_t m = 0; m < inst.men.size(); ++m)
    for (std::size_t w = 0; w < inst.women.size(); ++w) ids.push_back(contract_name(inst, m, w));
  auto poset = std::make_shared<const Poset>(Poset::discrete(std::move(ids)));

  // Each agent's part lists its contracts; the child quota ranks them by
  // position in that part.
  auto side = [&](bool men_side) {
    const auto& lists = men_side ? inst.men : inst.women;
    const auto others = men_side ? inst.women.size() : inst.men.size();
    std::vector<std::vector<std::size_t>> parts;
    std::vector<ChoiceFunction> children;
    for (std::size_t a = 0; a < lists.size(); ++a) {
      std::vector<std::size_t> part;
      for (std::size_t b = 0; b < others; ++b)
        part.push_back(men_side ? contract_index(inst, a, b) : contract_index(inst, b, a));
      auto sub = std::make_shared<const Poset>(poset->induced(part));
      children.push_back(make_quota(std::move(sub), lists[a], 1));
      parts.push_back(std::move(part));
    }
    return make_aggregate(poset, std::move(parts), std::move(children));
  };
  auto worker = side(true);
  auto firm = side(false);
  return Problem(std::move(worker), std::move(firm));
}

System contracts_of(const Instance& inst, const Matching& matching) {
  System out(inst.men.size() * inst.women.size());
  for (std::size_t m = 0; m < matching.wife.size(); ++m)
    if (matching.wife[m]) out.insert(contract_index(inst, m, *matching.wife[m]));
  return out;
}

CrossCheck deferred_acceptance_oracle(const Instance& inst) {
  CrossCheck out;
  out.matching = deferred_acceptance(inst);
  out.da_contracts = contracts_of(inst, out.matching);
  const auto problem = to_problem(inst);
  const auto extremes = extremal_stable(problem);
  out.s_max_w = extremes.max_w;
  out.s_min_w = extremes.min_w;
  out.agrees = out.da_contracts == out.s_max_w;
  return out;
}

}  // namespace plottlat::marriage
