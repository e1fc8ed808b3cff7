#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace fpcert;
using namespace fpcert::testing;

TEST(ValidateMdp, ExampleModelsAreValid) {
  EXPECT_NO_THROW(validate_mdp(loop_or_exit()));
  EXPECT_NO_THROW(validate_mdp(reward_loop()));
  EXPECT_NO_THROW(validate_mdp(spurious_fixed_point()));
  EXPECT_NO_THROW(validate_mdp(costly_loop()));
}

TEST(ValidateMdp, SmallestModel) {
  Mdp m(1);
  m.add_action(0, {{0, Rat(1)}});
  m.set_label("target", states(1, {0}));
  EXPECT_NO_THROW(validate_mdp(m));
}

TEST(ValidateMdp, Diagnostics) {
  Mdp m(2);
  m.add_action(0, {{0, q("1/2")}, {1, q("2/5")}});
  m.add_action(1, {{1, Rat(1)}});
  try {
    validate_mdp(m);
    FAIL() << "expected ValidationError";
  } catch (ValidationError const& e) {
    EXPECT_NE(std::string(e.what()).find("distribution-sum mismatch"), std::string::npos);
  }
  Mdp noAction(1);
  EXPECT_THROW(validate_mdp(noAction), ValidationError);
  Mdp outOfRange(1);
  outOfRange.add_action(0, {{3, Rat(1)}});
  EXPECT_THROW(validate_mdp(outOfRange), ValidationError);
  Mdp dup(1);
  dup.add_action(0, {{0, q("1/2")}, {0, q("1/2")}});
  EXPECT_THROW(validate_mdp(dup), ValidationError);
  Mdp negReward(1);
  negReward.add_action(0, {{0, Rat(1)}});
  negReward.set_reward(0, Rat(-1));
  EXPECT_THROW(validate_mdp(negReward), ValidationError);
}

TEST(InducedDtmc, DashedStrategy) {
  Mdp d = induced_dtmc(loop_or_exit(), {1, 1, 0});
  ASSERT_TRUE(d.is_dtmc());
  EXPECT_EQ(d.action(0, 0), (Distribution{{2, Rat(1)}}));
  EXPECT_EQ(d.action(1, 0), (Distribution{{2, Rat(1)}}));
  EXPECT_EQ(d.label("target"), loop_or_exit().label("target"));
}

TEST(InducedDtmc, SolidStrategy) {
  Mdp d = induced_dtmc(loop_or_exit(), {0, 0, 0});
  EXPECT_EQ(d.action(0, 0), (Distribution{{0, Rat(1)}}));
  EXPECT_EQ(d.action(1, 0).size(), 3u);
}

TEST(InducedDtmc, IdentityOnDtmc) {
  Mdp m = reward_loop();
  EXPECT_EQ(induced_dtmc(m, {0, 0}), m);
}

TEST(InducedDtmc, RejectsBadStrategy) {
  EXPECT_THROW(induced_dtmc(loop_or_exit(), {0, 2, 0}), ValidationError);
  EXPECT_THROW(induced_dtmc(loop_or_exit(), {0, 0}), ValidationError);
}

TEST(AbsorbingTargets, TargetsLoopWithoutReward) {
  Mdp m = reward_loop();
  m.set_reward(1, Rat(7));
  Mdp v = absorbing_targets(m, m.label("target"));
  EXPECT_EQ(v.reward(1), 0);
  EXPECT_EQ(v.action(1, 0), (Distribution{{1, Rat(1)}}));
  EXPECT_EQ(v.reward(0), 1);
}
