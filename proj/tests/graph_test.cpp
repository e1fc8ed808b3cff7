#include "fixtures.hpp"

#include "fpcert/graph.hpp"
#include "fpcert/oracle.hpp"

#include <gtest/gtest.h>

using namespace fpcert;
using namespace fpcert::testing;

TEST(Prob1, LoopOrExit) {
  Mdp m = loop_or_exit();
  StateSet t = m.label("target");
  EXPECT_EQ(prob1_states(m, Opt::Max, t), states(3, {0, 1, 2}));
  EXPECT_EQ(prob1_states(m, Opt::Min, t), states(3, {2}));
}

TEST(Prob1, AllTargets) {
  Mdp m = loop_or_exit();
  StateSet all(3, true);
  EXPECT_EQ(prob1_states(m, Opt::Min, all), all);
  EXPECT_EQ(prob1_states(m, Opt::Max, all), all);
}

TEST(Prob0, LoopOrExit) {
  // z can loop on its solid action forever, so it reaches t with minimal
  // probability 0.
  Mdp m = loop_or_exit();
  StateSet t = m.label("target");
  EXPECT_EQ(prob0_states(m, Opt::Min, t), states(3, {0}));
  EXPECT_EQ(prob0_states(m, Opt::Max, t), states(3, {}));
  auto pmin = oracle::optimal_exact(m, Query{Objective::Pmin}).values;
  EXPECT_EQ(pmin[0], ExtValue(0));
}

TEST(Prob0, EmptyTarget) {
  StateSet none(3, false);
  EXPECT_EQ(prob0_states(loop_or_exit(), Opt::Max, none), StateSet(3, true));
  EXPECT_EQ(prob0_states(loop_or_exit(), Opt::Min, none), StateSet(3, true));
}

TEST(Prob0, AppD3) {
  Mdp m = spurious_fixed_point();
  EXPECT_EQ(prob0_states(m, Opt::Max, m.label("target")), states(3, {1}));
}

namespace {

// An end component is closed under its actions and strongly connected.
bool is_end_component(Mdp const& m, Mec const& ec) {
  StateSet in(m.num_states(), false);
  for (State s : ec.states) in[s] = true;
  for (std::size_t i = 0; i < ec.states.size(); ++i) {
    if (ec.actions[i].empty()) return false;
    for (auto a : ec.actions[i])
      for (auto const& t : m.action(ec.states[i], a))
        if (!in[t.target]) return false;
  }
  for (State start : ec.states) {
    StateSet seen(m.num_states(), false);
    std::vector<State> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      State u = stack.back();
      stack.pop_back();
      auto it = std::find(ec.states.begin(), ec.states.end(), u);
      for (auto a : ec.actions[it - ec.states.begin()])
        for (auto const& t : m.action(u, a))
          if (!seen[t.target]) {
            seen[t.target] = true;
            stack.push_back(t.target);
          }
    }
    for (State s : ec.states)
      if (!seen[s]) return false;
  }
  return true;
}

std::vector<std::vector<State>> sorted_states(std::vector<Mec> mecs) {
  std::vector<std::vector<State>> out;
  for (auto& mec : mecs) {
    auto s = mec.states;
    std::sort(s.begin(), s.end());
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Mec, AppD3SelfLoops) {
  Mdp m = spurious_fixed_point();
  auto mecs = mec_decomposition(m);
  EXPECT_EQ(sorted_states(mecs), (std::vector<std::vector<State>>{{0}, {1}, {2}}));
  for (auto const& mec : mecs) {
    EXPECT_TRUE(is_end_component(m, mec));
    EXPECT_EQ(mec.actions.front(), std::vector<std::size_t>{0});
  }
}

TEST(Mec, Cycle) {
  Mdp m(4);
  for (State s = 0; s < 4; ++s) m.add_action(s, {{(s + 1) % 4, Rat(1)}});
  auto mecs = mec_decomposition(m);
  ASSERT_EQ(mecs.size(), 1u);
  EXPECT_EQ(mecs[0].states.size(), 4u);
}

TEST(Mec, LoopOrExitSkipsS) {
  Mdp m = loop_or_exit();
  auto mecs = mec_decomposition(m);
  EXPECT_EQ(sorted_states(mecs), (std::vector<std::vector<State>>{{0}, {2}}));
  for (auto const& mec : mecs) EXPECT_TRUE(is_end_component(m, mec));
}

TEST(Mec, Maximality) {
  // 0 <-> 1 via action 0 of each, 1 also has a leaving action to 2.
  Mdp m(3);
  m.add_action(0, {{1, Rat(1)}});
  m.add_action(1, {{0, Rat(1)}});
  m.add_action(1, {{2, Rat(1)}});
  m.add_action(2, {{2, Rat(1)}});
  auto mecs = mec_decomposition(m);
  EXPECT_EQ(sorted_states(mecs), (std::vector<std::vector<State>>{{0, 1}, {2}}));
}

TEST(Collapse, AppD3KeepsLeavingAction) {
  Mdp m = spurious_fixed_point();
  std::vector<Mec> s0{mec_decomposition(m, states(3, {0}))};
  ASSERT_EQ(s0.size(), 1u);
  Collapse c = collapse_mecs(m, s0);
  ASSERT_EQ(c.quotient.num_states(), 3u);
  State q0 = c.lift[0];
  ASSERT_EQ(c.quotient.num_actions(q0), 1u);
  EXPECT_EQ(c.quotient.action(q0, 0).size(), 2u);
  // After collapse the Bellman max operator has the unique fixed point 1/2 at s0.
  auto v = oracle::optimal_exact(c.quotient, Query{Objective::Pmax}).values;
  EXPECT_EQ(v[q0], ExtValue(q("1/2")));
}

TEST(Collapse, NoMecsIsIdentity) {
  Mdp m = reward_loop();
  Collapse c = collapse_mecs(m, {});
  EXPECT_EQ(c.quotient.num_states(), m.num_states());
  for (State s = 0; s < m.num_states(); ++s) EXPECT_EQ(c.quotient.actions(c.lift[s]), m.actions(s));
}

TEST(Collapse, CycleBecomesSingleLoop) {
  Mdp m(3);
  for (State s = 0; s < 3; ++s) m.add_action(s, {{(s + 1) % 3, Rat(1)}});
  m.set_label("target", states(3, {1}));
  Collapse c = collapse_mecs(m, mec_decomposition(m));
  ASSERT_EQ(c.quotient.num_states(), 1u);
  EXPECT_EQ(c.quotient.action(0, 0), (Distribution{{0, Rat(1)}}));
  EXPECT_TRUE(c.quotient.label("target")[0]);
}

TEST(Scc, RespectsFilter) {
  Mdp m = loop_or_exit();
  ActionFilter solid{{0}, {0}, {0}};
  auto sccs = scc_decomposition(m, StateSet(3, true), solid);
  EXPECT_EQ(sccs.size(), 3u);
}
