#include "fixtures.hpp"

#include "fpcert/oracle.hpp"

#include <gtest/gtest.h>

using namespace fpcert;
using namespace fpcert::testing;

TEST(Bareiss, SolvesSmallSystem) {
  std::vector<std::vector<Rat>> a{{Rat(2), Rat(1)}, {Rat(1), Rat(3)}};
  auto x = oracle::bareiss_solve(a, {Rat(3), Rat(5)});
  EXPECT_EQ(x[0], q("4/5"));
  EXPECT_EQ(x[1], q("7/5"));
}

TEST(DtmcReach, Examples) {
  Mdp f4 = reward_loop();
  EXPECT_EQ(oracle::dtmc_reach_exact(f4, f4.label("target")), vals({"1", "1"}));
  Mdp solid = induced_dtmc(loop_or_exit(), {0, 0, 0});
  EXPECT_EQ(oracle::dtmc_reach_exact(solid, solid.label("target")), vals({"0", "1/2", "1"}));
  EXPECT_EQ(oracle::dtmc_reach_exact(solid, StateSet(3, false)), ValueVector(3, ExtValue(0)));
}

TEST(DtmcReward, Examples) {
  Mdp f4 = reward_loop();
  for (Semantics s : {Semantics::Inf, Semantics::Rho}) EXPECT_EQ(oracle::dtmc_reward_exact(f4, f4.label("target"), s), vals({"2", "0"}));
  Mdp loop = induced_dtmc(costly_loop(), {0, 0, 0});
  EXPECT_TRUE(oracle::dtmc_reward_exact(loop, loop.label("target"), Semantics::Inf)[0].is_inf());
  EXPECT_EQ(oracle::dtmc_reward_exact(loop, loop.label("target"), Semantics::Rho)[0], ExtValue(0));
}

TEST(DtmcReward, ZeroRewards) {
  Mdp solid = induced_dtmc(loop_or_exit(), {0, 0, 0});
  StateSet t = solid.label("target");
  EXPECT_EQ(oracle::dtmc_reward_exact(solid, t, Semantics::Rho), ValueVector(3, ExtValue(0)));
  EXPECT_EQ(oracle::dtmc_reward_exact(solid, t, Semantics::Inf), vals({"inf", "inf", "0"}));
}

TEST(DtmcReward, RhoPositiveRecurrence) {
  Mdp m = parse_model(R"(mdp 3
label target 2
reward 1 1
0 0 -> 1 1/2, 2 1/2
1 0 -> 1 1
2 0 -> 2 1
)");
  EXPECT_EQ(oracle::dtmc_reward_exact(m, m.label("target"), Semantics::Rho), vals({"inf", "inf", "0"}));
}

TEST(Optimal, ExampleValues) {
  EXPECT_EQ(oracle::optimal_exact(loop_or_exit(), Query{Objective::Pmin}).values, vals({"0", "1/2", "1"}));
  EXPECT_EQ(oracle::optimal_exact(spurious_fixed_point(), Query{Objective::Pmax}).values, vals({"1/2", "0", "1"}));
  EXPECT_EQ(oracle::optimal_exact(costly_loop(), Query{Objective::Emin}).values, vals({"100", "100", "0"}));
  EXPECT_EQ(oracle::optimal_exact(costly_loop(), Query{Objective::Emin, Semantics::Rho}).values, vals({"0", "100", "0"}));
}

TEST(Optimal, AllMatchesSingle) {
  Mdp m = costly_loop();
  auto all = oracle::optimal_all(m, m.label("target"));
  for (Objective o : {Objective::Pmin, Objective::Pmax, Objective::Emin, Objective::Emax})
    for (Semantics s : {Semantics::Inf, Semantics::Rho})
      EXPECT_EQ(oracle::select(all, o, s), oracle::optimal_exact(m, Query{o, s}).values);
}

TEST(Optimal, ArgStrategyAttainsOptimum) {
  Mdp m = loop_or_exit();
  auto res = oracle::optimal_exact(m, Query{Objective::Pmin});
  ASSERT_TRUE(res.arg_strategy);
  EXPECT_EQ(oracle::strategy_value(m, *res.arg_strategy, Objective::Pmin, Semantics::Inf, m.label("target")), res.values);
}

TEST(Optimal, CapExceeded) {
  Mdp m(20);
  for (State s = 0; s < 20; ++s)
    for (int a = 0; a < 4; ++a) m.add_action(s, {{(s + a) % 20, Rat(1)}});
  m.set_label("target", states(20, {0}));
  EXPECT_THROW(oracle::optimal_exact(m, Query{}), oracle::CapExceeded);
}
