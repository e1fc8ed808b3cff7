#pragma once

#include "fpcert/distance.hpp"
#include "fpcert/graph.hpp"
#include "fpcert/operators.hpp"

namespace fpcert {

namespace detail {

// min successor rank plus one if the successor ranks are not all equal.
inline ExtNat complementary_term(Distribution const& d, RankVector const& r) {
  ExtNat lo = ExtNat::infinity();
  bool differ = false;
  for (auto const& t : d) {
    if (t.target != d.front().target && r[t.target] != r[d.front().target]) differ = true;
    lo = std::min(lo, r[t.target]);
  }
  return differ ? lo.succ() : lo;
}

inline ExtNat complementary_at(Mdp const& m, Opt opt, State s, RankVector const& r) {
  ExtNat best = complementary_term(m.action(s, 0), r);
  for (std::size_t a = 1; a < m.num_actions(s); ++a) {
    ExtNat v = complementary_term(m.action(s, a), r);
    best = opt == Opt::Min ? std::min(best, v) : std::max(best, v);
  }
  return best;
}

}  // namespace detail

// C(r)(s) = inf on targets, otherwise
// opt_a (min_{s'} r(s') + [exists u, v in post(s,a) with r(u) != r(v)]).
inline RankVector apply_complementary_op(Mdp const& m, Opt opt, StateSet const& target, RankVector const& r) {
  RankVector out(m.num_states());
  for (State s = 0; s < m.num_states(); ++s)
    out[s] = target[s] ? ExtNat::infinity() : detail::complementary_at(m, opt, s, r);
  return out;
}

// Least fixed point of the complementary operator. Starts at infinity exactly
// on the states with P^opt(<>T) = 1 and propagates changes to predecessors.
inline RankVector lfp_complementary(Mdp const& m, Opt opt, StateSet const& target) {
  StateSet one = prob1_states(m, opt, target);
  auto pred = m.predecessors();
  RankVector r(m.num_states(), ExtNat(0));
  std::deque<State> queue;
  for (State s = 0; s < m.num_states(); ++s)
    if (one[s]) {
      r[s] = ExtNat::infinity();
      queue.push_back(s);
    }
  while (!queue.empty()) {
    State hat = queue.front();
    queue.pop_front();
    for (State s : pred[hat]) {
      if (target[s]) continue;
      ExtNat tmp = detail::complementary_at(m, opt, s, r);
      if (tmp != r[s]) {
        r[s] = tmp;
        queue.push_back(s);
      }
    }
  }
  return r;
}

// Actions a with x(s) <= sum P x.
inline ActionFilter increasing_actions(Mdp const& m, ValueVector const& x) {
  ActionFilter f(m.num_states());
  for (State s = 0; s < m.num_states(); ++s)
    for (std::size_t a = 0; a < m.num_actions(s); ++a)
      if (x[s] <= expect(m.action(s, a), x)) f[s].push_back(a);
  return f;
}

// Actions a with x(s) <= rew(s) + sum P x.
inline ActionFilter reward_increasing_actions(Mdp const& m, ValueVector const& x) {
  ActionFilter f(m.num_states());
  for (State s = 0; s < m.num_states(); ++s)
    for (std::size_t a = 0; a < m.num_actions(s); ++a)
      if (x[s] <= ExtValue(m.reward(s)) + expect(m.action(s, a), x)) f[s].push_back(a);
  return f;
}

// Actions a with x(s) >= rew(s) + sum P x.
inline ActionFilter decreasing_actions(Mdp const& m, ValueVector const& x) {
  ActionFilter f(m.num_states());
  for (State s = 0; s < m.num_states(); ++s)
    for (std::size_t a = 0; a < m.num_actions(s); ++a)
      if (x[s] >= ExtValue(m.reward(s)) + expect(m.action(s, a), x)) f[s].push_back(a);
  return f;
}

inline RankVector apply_restricted_distance(Mdp const& m, Opt opt, StateSet const& target, ActionFilter const& filter,
                                            RankVector const& r) {
  return apply_distance_op(m, opt, target, r, &filter);
}

inline RankVector restricted_distance_fp(Mdp const& m, Opt opt, StateSet const& target, ActionFilter const& filter) {
  return fixed_point_distance(m, opt, target, &filter);
}

}  // namespace fpcert
