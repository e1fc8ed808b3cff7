#include "fixtures.hpp"

#include "fpcert/generate.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace fpcert;
using namespace fpcert::testing;

namespace {

ObjectiveSpec spec(Mdp const& m, Objective o, Semantics s = Semantics::Inf) { return {o, s, m.label("target")}; }

SolverConfig ii(Rat gamma = Rat(1, 20)) {
  SolverConfig c;
  c.method = Method::II;
  c.gamma = gamma;
  return c;
}

}  // namespace

TEST(RoundDirected, Examples) {
  EXPECT_EQ(round_directed(q("1/3"), Direction::Down, 4), q("5/16"));
  EXPECT_EQ(round_directed(q("1/3"), Direction::Up, 4), q("11/32"));
  EXPECT_EQ(round_directed(q("1/2"), Direction::Down, 53), q("1/2"));
  EXPECT_EQ(round_directed(q("1/2"), Direction::Up, 53), q("1/2"));
  EXPECT_EQ(round_directed(Rat(0), Direction::Up, 8), Rat(0));
  EXPECT_EQ(round_directed(Rat(1000), Direction::Down, 3), Rat(896));
  EXPECT_EQ(round_directed(Rat(1000), Direction::Up, 3), Rat(1024));
}

TEST(RoundDirected, MatchesHardwareConversion) {
  // Nearest-even conversion lies between the two directed roundings.
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    Rat v(static_cast<long>(rng() % 1000000 + 1), static_cast<long>(rng() % 999983 + 1));
    v.canonicalize();
    Rat lo = round_directed(v, Direction::Down, 53), hi = round_directed(v, Direction::Up, 53);
    Rat nearest(v.get_d());
    EXPECT_LE(lo, v);
    EXPECT_GE(hi, v);
    EXPECT_TRUE(nearest == lo || nearest == hi);
    if (lo != hi) {
      EXPECT_EQ(std::nextafter(lo.get_d(), HUGE_VAL), hi.get_d());
    }
  }
}

TEST(DirectedDouble, AgreesWithExactRounding) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(1e-6, 10.0);
  for (int i = 0; i < 5000; ++i) {
    double a = u(rng), b = u(rng);
    for (Direction dir : {Direction::Down, Direction::Up}) {
      EXPECT_EQ(DirectedDouble::add(a, b, dir), round_directed(Rat(a) + Rat(b), dir, 53).get_d());
      EXPECT_EQ(DirectedDouble::mul(a, b, dir), round_directed(Rat(a) * Rat(b), dir, 53).get_d());
    }
  }
}

TEST(ValueIteration, LoopOrExitFromBelow) {
  Mdp m = loop_or_exit();
  SolverConfig cfg;
  ValueVector x = value_iteration(m, spec(m, Objective::Pmin), From::Below, cfg);
  EXPECT_LE(x[1], ExtValue(q("1/2")));
  EXPECT_GE(x[1], ExtValue(q("1/2") - q("1/100000")));
  EXPECT_EQ(x[0], ExtValue(0));
  EXPECT_EQ(x[2], ExtValue(1));
}

TEST(ValueIteration, AllTargets) {
  Mdp m = loop_or_exit();
  m.set_label("target", StateSet(3, true));
  SolverConfig cfg;
  cfg.max_sweeps = 1;
  EXPECT_EQ(value_iteration(m, spec(m, Objective::Pmax), From::Below, cfg), ValueVector(3, ExtValue(1)));
}

TEST(ValueIteration, RewardLoopReward) {
  Mdp m = reward_loop();
  for (From from : {From::Below, From::Above}) {
    ValueVector x = value_iteration(m, spec(m, Objective::Emin), from, SolverConfig{});
    EXPECT_LE(abs(x[0].value() - 2), q("1/10000"));
  }
}

TEST(IntervalIteration, LoopOrExitSafe) {
  Mdp m = loop_or_exit();
  BoundPair b = interval_iteration(m, spec(m, Objective::Pmin), ii());
  EXPECT_LE(b.lower[1], ExtValue(q("1/2")));
  EXPECT_GE(b.upper[1], ExtValue(q("1/2")));
  EXPECT_LE(b.upper[1].value() - b.lower[1].value(), q("1/1000000"));
}

TEST(IntervalIteration, AppD3Brackets) {
  Mdp m = spurious_fixed_point();
  BoundPair b = interval_iteration(m, spec(m, Objective::Pmax), ii());
  EXPECT_LE(b.lower[0], ExtValue(q("1/2")));
  EXPECT_GE(b.upper[0], ExtValue(q("1/2")));
  EXPECT_LT(b.upper[0].value(), q("51/100"));
}

TEST(IntervalIteration, SingleTargetState) {
  Mdp m(1);
  m.add_action(0, {{0, Rat(1)}});
  m.set_label("target", StateSet(1, true));
  SolverConfig cfg = ii();
  cfg.max_sweeps = 0;
  BoundPair b = interval_iteration(m, spec(m, Objective::Pmin), cfg);
  EXPECT_EQ(b.lower, ValueVector{ExtValue(1)});
  EXPECT_EQ(b.upper, ValueVector{ExtValue(1)});
}

TEST(IntervalIteration, OtherEngines) {
  Mdp m = loop_or_exit();
  for (unsigned bits : {24u, 80u}) {
    SolverConfig cfg = ii();
    cfg.precision_bits = bits;
    cfg.epsilon = bits == 24 ? q("1/1000") : q("1/1000000");
    BoundPair b = interval_iteration(m, spec(m, Objective::Pmin), cfg);
    EXPECT_LE(b.lower[1], ExtValue(q("1/2")));
    EXPECT_GE(b.upper[1], ExtValue(q("1/2")));
  }
}

TEST(IntervalIteration, RewardsWithSmoothing) {
  Mdp m = costly_loop();
  for (Rat g : {Rat(0), q("1/20"), q("1/2")}) {
    BoundPair b = interval_iteration(m, spec(m, Objective::Emin), ii(g));
    EXPECT_LE(b.lower[0], ExtValue(100));
    EXPECT_GE(b.upper[0], ExtValue(100));
    BoundPair rho = interval_iteration(m, spec(m, Objective::Emin, Semantics::Rho), ii(g));
    EXPECT_EQ(rho.lower[0], ExtValue(0));
    EXPECT_EQ(rho.upper[0], ExtValue(0));
  }
}

TEST(PolicyIteration, ExampleValues) {
  Mdp f1 = loop_or_exit();
  EXPECT_EQ(policy_iteration_exact(f1, spec(f1, Objective::Pmin)).values, vals({"0", "1/2", "1"}));
  Mdp d3 = spurious_fixed_point();
  EXPECT_EQ(policy_iteration_exact(d3, spec(d3, Objective::Pmax)).values, vals({"1/2", "0", "1"}));
  Mdp e5 = costly_loop();
  EXPECT_EQ(policy_iteration_exact(e5, spec(e5, Objective::Emin)).values, vals({"100", "100", "0"}));
  EXPECT_EQ(policy_iteration_exact(e5, spec(e5, Objective::Emin, Semantics::Rho)).values, vals({"0", "100", "0"}));
  Mdp f4 = reward_loop();
  EXPECT_EQ(policy_iteration_exact(f4, spec(f4, Objective::Emax, Semantics::Rho)).values, vals({"2", "0"}));
}

TEST(PolicyIteration, DtmcNeedsOneEvaluation) {
  Mdp m = reward_loop();
  auto res = policy_iteration_exact(m, spec(m, Objective::Emin));
  EXPECT_EQ(res.evaluations, 1u);
  EXPECT_EQ(res.values, vals({"2", "0"}));
}

TEST(PolicyIteration, OptimalStrategy) {
  Mdp m = costly_loop();
  auto res = policy_iteration_exact(m, spec(m, Objective::Emin));
  EXPECT_EQ(res.strategy[0], 1u);
}

TEST(Generate, LoopOrExitBothBounds) {
  Mdp m = loop_or_exit();
  Query q;
  auto certs = generate_certificates(m, q, SolverConfig{});
  ASSERT_EQ(certs.size(), 2u);
  EXPECT_EQ(certs[0].query.bound, Bound::Lower);
  EXPECT_EQ(certs[0].x, vals({"0", "1/2", "1"}));
  EXPECT_EQ(*certs[0].r, ranks({"inf", "1", "0"}));
  EXPECT_EQ(certs[1].x, vals({"0", "1/2", "1"}));
  EXPECT_FALSE(certs[1].r.has_value());
}

TEST(Generate, LoopOrExitInterval) {
  Mdp m = loop_or_exit();
  auto certs = generate_certificates(m, Query{}, ii());
  Rat lo = certs[0].x[1].value(), hi = certs[1].x[1].value();
  EXPECT_LE(lo, q("1/2"));
  EXPECT_GE(hi, q("1/2"));
  EXPECT_LE(hi - lo, q("1/1000000") * hi);
}

TEST(Generate, EmptyTargetPmax) {
  Mdp m = loop_or_exit();
  m.set_label("target", StateSet(3, false));
  Query q{Objective::Pmax};
  auto certs = generate_certificates(m, q, SolverConfig{});
  EXPECT_EQ(certs[0].x, ValueVector(3, ExtValue(0)));
  EXPECT_EQ(certs[1].x, ValueVector(3, ExtValue(0)));
  EXPECT_EQ(*certs[0].r, RankVector(3, ExtNat::infinity()));
}

TEST(Generate, EveryObjectiveOnExampleModels) {
  for (Mdp const& m : {loop_or_exit(), reward_loop(), spurious_fixed_point(), costly_loop()})
    for (Objective o : {Objective::Pmin, Objective::Pmax, Objective::Emin, Objective::Emax})
      for (Semantics s : {Semantics::Inf, Semantics::Rho})
        for (bool witness : {false, true})
          for (Method method : {Method::PI, Method::II}) {
            if (!is_reward(o) && s == Semantics::Rho) continue;
            Query q{o, s};
            SolverConfig cfg = method == Method::PI ? SolverConfig{} : ii();
            auto certs = generate_certificates(m, q, cfg, GenerateOptions{witness});
            ASSERT_EQ(certs.size(), 2u);
            for (auto const& c : certs) EXPECT_TRUE(check_certificate(m, c).valid);
          }
}

TEST(Generate, UnknownLabel) {
  Query q;
  q.target_label = "goal";
  EXPECT_THROW(generate_certificates(loop_or_exit(), q, SolverConfig{}), std::invalid_argument);
}
