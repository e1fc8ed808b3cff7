#pragma once

#include "fpcert/mdp.hpp"

namespace fpcert {

// sum_{s'} P(s'|d) * x(s') with 0 * inf = 0.
inline ExtValue expect(Distribution const& d, ValueVector const& x) {
  Rat sum = 0;
  for (auto const& t : d) {
    if (x[t.target].is_inf()) return ExtValue::infinity();
    sum += t.prob * x[t.target].value();
  }
  return ExtValue(sum);
}

inline ExtValue opt_of(Opt opt, ExtValue const& a, ExtValue const& b) {
  return opt == Opt::Min ? std::min(a, b) : std::max(a, b);
}

// B(x)(s) = 1 on targets, otherwise opt_a sum P x.
inline ValueVector bellman_reach(Mdp const& m, Opt opt, StateSet const& target, ValueVector const& x) {
  ValueVector out(m.num_states());
  for (State s = 0; s < m.num_states(); ++s) {
    if (target[s]) {
      out[s] = ExtValue(1);
      continue;
    }
    ExtValue best = expect(m.action(s, 0), x);
    for (std::size_t a = 1; a < m.num_actions(s); ++a) best = opt_of(opt, best, expect(m.action(s, a), x));
    out[s] = best;
  }
  return out;
}

// B^r(x)(s) = 0 on targets, otherwise rew(s) + opt_a sum P x.
inline ValueVector bellman_reward(Mdp const& m, Opt opt, StateSet const& target, ValueVector const& x) {
  ValueVector out(m.num_states());
  for (State s = 0; s < m.num_states(); ++s) {
    if (target[s]) {
      out[s] = ExtValue(0);
      continue;
    }
    ExtValue best = expect(m.action(s, 0), x);
    for (std::size_t a = 1; a < m.num_actions(s); ++a) best = opt_of(opt, best, expect(m.action(s, a), x));
    out[s] = ExtValue(m.reward(s)) + best;
  }
  return out;
}

// gamma * x + (1 - gamma) * B(x).
inline ValueVector smooth_reach(Mdp const& m, Opt opt, StateSet const& target, ValueVector const& x, Rat const& gamma) {
  ValueVector b = bellman_reach(m, opt, target, x);
  ValueVector out(m.num_states());
  for (State s = 0; s < m.num_states(); ++s) out[s] = gamma * x[s] + Rat(1 - gamma) * b[s];
  return out;
}

// gamma * x + (1 - gamma) * B(x) for the reward operator; the reward is
// blended together with the successor term so the fixed points match B.
// Where x is infinite the blend would hide B(x), so B(x) is taken as is.
inline ValueVector smooth_reward(Mdp const& m, Opt opt, StateSet const& target, ValueVector const& x, Rat const& gamma) {
  ValueVector b = bellman_reward(m, opt, target, x);
  ValueVector out(m.num_states());
  for (State s = 0; s < m.num_states(); ++s) out[s] = x[s].is_inf() ? b[s] : gamma * x[s] + Rat(1 - gamma) * b[s];
  return out;
}

inline bool leq(ValueVector const& a, ValueVector const& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

}  // namespace fpcert
