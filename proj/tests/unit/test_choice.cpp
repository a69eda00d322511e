#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "plottlat/error.hpp"
#include "plottlat/generator.hpp"

using namespace plottlat;
using fixtures::idx;
using fixtures::sys;

namespace {

Error error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error raised";
  return Error(Errc::InternalInvariant, "none");
}

naive::Choice wrap(const ChoiceFunction& cf) {
  return [cf](const naive::Set& a) {
    const auto& p = cf.poset();
    return fixtures::to_set(p, cf.choose(fixtures::from_set(p, a)));
  };
}

}  // namespace

TEST(Choose, Quota) {
  const auto pr = fixtures::fix_ab();
  const auto& p = pr.poset();
  EXPECT_EQ(pr.worker().choose(sys(p, {"a", "b"})), sys(p, {"a"}));
  EXPECT_EQ(pr.firm().choose(sys(p, {"a", "b"})), sys(p, {"b"}));
}

TEST(Choose, TableLookup) {
  const auto pr = fixtures::fix_chain();
  const auto& p = pr.poset();
  EXPECT_EQ(pr.firm().choose(sys(p, {"x1", "x2"})), sys(p, {"x1"}));
  EXPECT_EQ(error_of([&] { pr.firm().choose(sys(p, {"x2"})); }).code(), Errc::NotAnIdeal);
}

TEST(Choose, AggregateUsesEachPart) {
  const auto pr = fixtures::fix_marriage();
  const auto& p = pr.poset();
  EXPECT_EQ(pr.worker().choose(sys(p, {"e11", "e12"})), sys(p, {"e11"}));
  EXPECT_EQ(pr.worker().family(), Family::Aggregate);
  EXPECT_EQ(pr.worker().validation(), Validation::PlottVerified);
}

TEST(Desirability, Fixtures) {
  const auto ab = fixtures::fix_ab();
  const auto& p = ab.poset();
  const auto model = fixtures::naive_ab();
  EXPECT_EQ(desirability(ab.worker(), p.empty_system()), sys(p, {"a", "b"}));
  EXPECT_EQ(desirability(ab.firm(), sys(p, {"a"})), sys(p, {"a", "b"}));
  EXPECT_EQ(fixtures::to_set(p, desirability(ab.firm(), sys(p, {"a"}))), model.desirability(model.f, {"a"}));

  const auto chain = fixtures::fix_chain();
  const auto& c = chain.poset();
  EXPECT_EQ(desirability(chain.firm(), c.empty_system()), sys(c, {"x1"}));
  const auto cm = fixtures::naive_chain();
  EXPECT_EQ(cm.desirability(cm.f, {}), naive::Set{"x1"});
}

TEST(Blair, Fixtures) {
  const auto pr = fixtures::fix_ab();
  const auto& p = pr.poset();
  EXPECT_TRUE(blair_leq(pr.worker(), sys(p, {"b"}), sys(p, {"a"})));
  EXPECT_FALSE(blair_leq(pr.worker(), sys(p, {"a"}), sys(p, {"b"})));
  for (const auto& a : enumerate_ideals(p)) EXPECT_TRUE(blair_leq(pr.firm(), a, a));
}

TEST(Blair, Errors) {
  const auto pr = fixtures::fix_chain();
  const auto& p = pr.poset();
  EXPECT_EQ(error_of([&] { blair_leq(pr.firm(), sys(p, {"x2"}), p.empty_system()); }).code(), Errc::NotAnIdeal);
  EXPECT_EQ(error_of([&] { blair_leq(pr.firm(), System(3), System(3)); }).code(), Errc::PosetMismatch);
}

TEST(ValidatePlott, QuotaPasses) {
  const auto r = validate_plott(fixtures::fix_ab().worker());
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.consistency_ok && r.substitutability_ok && r.ideal_valued_ok && r.union_laws_ok);
  EXPECT_TRUE(r.witnesses.empty());
}

TEST(ValidatePlott, TBadSubstitutabilityWitness) {
  const auto p = fixtures::discrete({"a", "b"});
  TableOptions opts;
  opts.validate = false;
  const auto bad = make_table(p, fixtures::t_bad_entries(*p), opts);
  EXPECT_EQ(bad.validation(), Validation::Unchecked);
  const auto r = validate_plott(bad);
  EXPECT_FALSE(r.substitutability_ok);
  EXPECT_FALSE(r.ok());
  const auto it = std::find_if(r.witnesses.begin(), r.witnesses.end(),
                               [](const PlottWitness& w) { return w.law == PlottLaw::Substitutability; });
  ASSERT_NE(it, r.witnesses.end());
  EXPECT_EQ(it->a, sys(*p, {"a"}));
  EXPECT_EQ(it->b, sys(*p, {"a", "b"}));
  EXPECT_EQ(it->choice_a, sys(*p, {}));
  EXPECT_EQ(it->choice_b, sys(*p, {"a"}));
  EXPECT_EQ(validated(bad).validation(), Validation::PlottFailed);
}

TEST(ValidatePlott, IdentityPasses) {
  gen::Generator g(3);
  for (int i = 0; i < 20; ++i) {
    auto p = g.random_bounded_poset(6, 200);
    EXPECT_TRUE(validate_plott(identity_choice(p)).ok());
  }
}

TEST(ValidatePlott, RespectsCap) {
  const auto pr = fixtures::fix_ab();
  EXPECT_EQ(error_of([&] { validate_plott(pr.worker(), 3); }).code(), Errc::DomainTooLarge);
}

TEST(MakeQuota, ZeroQuotaIsEmpty) {
  const auto p = fixtures::discrete({"a", "b"});
  const auto cf = make_quota(p, idx(*p, {"a", "b"}), 0);
  for (const auto& a : enumerate_ideals(*p)) EXPECT_TRUE(cf.choose(a).empty());
  EXPECT_EQ(cf.validation(), Validation::PlottVerified);
}

TEST(MakeQuota, Errors) {
  const auto c = fixtures::chain();
  EXPECT_EQ(error_of([&] { make_quota(c, idx(*c, {"x1", "x2"}), 1); }).code(), Errc::QuotaOnNontrivialPoset);
  const auto p = fixtures::discrete({"a", "b"});
  EXPECT_EQ(error_of([&] { make_quota(p, {0, 0}, 1); }).code(), Errc::DuplicateElement);
  EXPECT_EQ(error_of([&] { make_quota(p, {5}, 1); }).code(), Errc::UnknownElement);
}

TEST(MakeQuota, LargeDomainsAreTrustedByConstruction) {
  const auto p = fixtures::discrete(gen::default_names(12));
  std::vector<std::size_t> priority{3, 1, 4};
  const auto cf = make_quota(p, priority, 2);
  EXPECT_EQ(cf.validation(), Validation::PlottByConstruction);
  EXPECT_TRUE(cf.trusted());
}

TEST(MakeTable, ChainFirmIsPlott) {
  const auto pr = fixtures::fix_chain();
  EXPECT_EQ(pr.firm().validation(), Validation::PlottVerified);
  EXPECT_EQ(pr.worker().validation(), Validation::PlottVerified);
}

TEST(MakeTable, StrictRejectsTBad) {
  const auto p = fixtures::discrete({"a", "b"});
  const auto e = error_of([&] { make_table(p, fixtures::t_bad_entries(*p)); });
  EXPECT_EQ(e.code(), Errc::PlottFailed);
  ASSERT_EQ(e.witness().size(), 2u);
  EXPECT_EQ(e.witness()[0], sys(*p, {"a"}));
  EXPECT_EQ(e.witness()[1], sys(*p, {"a", "b"}));

  TableOptions lax;
  lax.strict = false;
  EXPECT_EQ(make_table(p, fixtures::t_bad_entries(*p), lax).validation(), Validation::PlottFailed);
}

TEST(MakeTable, ShapeErrors) {
  const auto c = fixtures::chain();
  const auto& p = *c;
  TableEntries incomplete{{sys(p, {}), sys(p, {})}, {sys(p, {"x1"}), sys(p, {"x1"})}};
  EXPECT_EQ(error_of([&] { make_table(c, incomplete); }).code(), Errc::TableIncomplete);

  TableEntries not_subset{{sys(p, {}), sys(p, {"x1"})},
                          {sys(p, {"x1"}), sys(p, {"x1"})},
                          {sys(p, {"x1", "x2"}), sys(p, {"x1"})}};
  EXPECT_EQ(error_of([&] { make_table(c, not_subset); }).code(), Errc::ValueNotSubset);

  TableEntries not_ideal{{sys(p, {}), sys(p, {})},
                         {sys(p, {"x1"}), sys(p, {"x1"})},
                         {sys(p, {"x1", "x2"}), sys(p, {"x2"})}};
  EXPECT_EQ(error_of([&] { make_table(c, not_ideal); }).code(), Errc::ValueNotIdeal);

  TableEntries bad_key{{sys(p, {"x2"}), sys(p, {})}};
  EXPECT_EQ(error_of([&] { make_table(c, bad_key); }).code(), Errc::NotAnIdeal);
}

TEST(MakeAggregate, SinglePartBehavesLikeChild) {
  const auto p = fixtures::discrete({"a", "b", "c"});
  const auto child = make_quota(p, idx(*p, {"c", "a"}), 1);
  const auto agg = make_aggregate(p, {{0, 1, 2}}, {child});
  for (const auto& a : enumerate_ideals(*p)) EXPECT_EQ(agg.choose(a), child.choose(a));
}

TEST(MakeAggregate, Errors) {
  std::vector<Poset::Cover> covers{{"a", "b"}};
  const auto chain = std::make_shared<const Poset>(Poset::build({"a", "b"}, covers));
  const auto one = fixtures::discrete({"a"});
  const auto other = fixtures::discrete({"b"});
  EXPECT_EQ(error_of([&] {
              make_aggregate(chain, {{0}, {1}}, {identity_choice(one), identity_choice(other)});
            }).code(),
            Errc::OrderCrossesParts);

  const auto p = fixtures::discrete({"a", "b"});
  EXPECT_EQ(error_of([&] { make_aggregate(p, {{0}}, {identity_choice(one)}); }).code(), Errc::NotAPartition);
  EXPECT_EQ(error_of([&] {
              make_aggregate(p, {{0}, {0, 1}}, {identity_choice(one), identity_choice(p)});
            }).code(),
            Errc::NotAPartition);
  EXPECT_EQ(error_of([&] {
              make_aggregate(p, {{0}, {1}}, {identity_choice(other), identity_choice(other)});
            }).code(),
            Errc::PosetMismatch);
}

TEST(MakeAggregate, StatusFollowsChildren) {
  const auto p = fixtures::discrete({"a", "b"});
  const auto one = fixtures::discrete({"a"});
  const auto other = fixtures::discrete({"b"});
  TableOptions unchecked;
  unchecked.validate = false;
  const auto agg = make_aggregate(p, {{0}, {1}}, {identity_choice(one), identity_choice(other, unchecked)});
  EXPECT_EQ(agg.validation(), Validation::Unchecked);
  EXPECT_EQ(validated(agg).validation(), Validation::PlottVerified);
}

// Operator laws on random Plott functions, each evaluated both through the
// library and through the naive model built on the same choices.
TEST(ChoiceProperty, OperatorLaws) {
  gen::Generator g(2024);
  for (int round = 0; round < 120; ++round) {
    const auto pr = round % 2 ? g.random_poset_problem(6, 120) : g.random_discrete_problem(5);
    const auto& p = pr.poset();
    const auto ideals = enumerate_ideals(p);
    naive::Model m;
    m.elements = p.elements();
    for (const auto& [lo, hi] : p.cover_pairs()) m.covers.emplace_back(p.name(lo), p.name(hi));
    m.w = wrap(pr.worker());
    m.f = wrap(pr.firm());

    for (const auto* cf : {&pr.worker(), &pr.firm()}) {
      const auto& c = *cf;
      ASSERT_TRUE(validate_plott(c).ok()) << round;
      const bool is_worker = cf == &pr.worker();
      const auto& mc = is_worker ? m.w : m.f;
      for (const auto& a : ideals) {
        const auto ca = c.choose(a);
        const auto da = desirability(c, a);
        ASSERT_EQ(fixtures::to_set(p, da), m.desirability(mc, fixtures::to_set(p, a)));
        ASSERT_TRUE(p.is_ideal(da));
        ASSERT_EQ(ca, a & da);
        ASSERT_EQ(desirability(c, ca), da);
        ASSERT_TRUE(blair_leq(c, a, ca));
        ASSERT_TRUE(blair_leq(c, ca, a));
        ASSERT_EQ(ca == a, a.subset_of(da));
        for (const auto& b : ideals) {
          const auto u = a | b;
          ASSERT_TRUE(c.choose(u).subset_of(ca | b));
          ASSERT_EQ(c.choose(u), c.choose(ca | b));
          const bool leq = blair_leq(c, a, b);
          const auto sa = fixtures::to_set(p, a);
          const auto sb = fixtures::to_set(p, b);
          ASSERT_EQ(leq, is_worker ? m.blair_w(sa, sb) : m.blair_f(sa, sb));
          if (leq) ASSERT_TRUE(desirability(c, b).subset_of(da));
          ASSERT_TRUE(desirability(c, u).subset_of(da & desirability(c, b)));
          if (leq && blair_leq(c, b, a) && c.choose(a) == a && c.choose(b) == b) ASSERT_EQ(a, b);
        }
      }
    }
  }
}

TEST(ChoiceProperty, BlairIsTransitive) {
  gen::Generator g(99);
  for (int round = 0; round < 60; ++round) {
    const auto pr = g.random_poset_problem(5, 60);
    const auto ideals = enumerate_ideals(pr.poset());
    for (const auto& a : ideals)
      for (const auto& b : ideals)
        for (const auto& c : ideals)
          if (blair_leq(pr.worker(), a, b) && blair_leq(pr.worker(), b, c)) ASSERT_TRUE(blair_leq(pr.worker(), a, c));
  }
}

TEST(ChoiceProperty, AggregatePreservesPlott) {
  gen::Generator g(8);
  for (int round = 0; round < 100; ++round) {
    const auto pr = g.random_discrete_problem(7);
    for (const auto* cf : {&pr.worker(), &pr.firm()})
      if (cf->family() == Family::Aggregate) ASSERT_TRUE(validate_plott(*cf).ok());
  }
}
