#pragma once

#include "fpcert/ranking.hpp"
#include "fpcert/solver_types.hpp"

#include <optional>

namespace fpcert {

// An objective after qualitative pre-analysis: states whose value is decided
// by graph analysis are fixed, reward-free end components of the remaining
// states are collapsed, and what is left is solved numerically. Every
// reduction below leaves no end component among the open states except, for
// minimising rewards, end components with positive reward.
struct ReducedSystem {
  // Model the objective is evaluated on (targets absorbing for rho).
  Mdp base;
  // Target set of the objective on `base` (the zero-value set for rho).
  StateSet target;
  Opt opt = Opt::Min;
  bool reward = false;
  Collapse collapse;
  // Fixed value per quotient state; nullopt for open states.
  std::vector<std::optional<ExtValue>> fixed;
  // Usable actions per open quotient state: no successor with infinite value.
  ActionFilter usable;

  std::size_t num_quotient() const { return collapse.quotient.num_states(); }
  Mdp const& quotient() const { return collapse.quotient; }
};

namespace detail {

inline StateSet set_union(StateSet a, StateSet const& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] || b[i];
  return a;
}

inline StateSet set_not(StateSet a) {
  a.flip();
  return a;
}

inline std::vector<Mec> mecs_among(Mdp const& m, StateSet const& open, bool rewardFree) {
  StateSet states = open;
  if (rewardFree)
    for (State s = 0; s < m.num_states(); ++s) states[s] = states[s] && sgn(m.reward(s)) == 0;
  return mec_decomposition(m, states);
}

inline ReducedSystem finish_reduction(Mdp base, StateSet target, Opt opt, bool reward, std::vector<std::optional<ExtValue>> fixedOrig,
                                      std::vector<Mec> const& mecs) {
  ReducedSystem rs;
  rs.collapse = collapse_mecs(base, mecs);
  rs.base = std::move(base);
  rs.target = std::move(target);
  rs.opt = opt;
  rs.reward = reward;
  std::size_t nq = rs.num_quotient();
  rs.fixed.assign(nq, std::nullopt);
  for (State s = 0; s < fixedOrig.size(); ++s)
    if (fixedOrig[s]) rs.fixed[rs.collapse.lift[s]] = fixedOrig[s];
  rs.usable.assign(nq, {});
  Mdp const& q = rs.quotient();
  for (State s = 0; s < nq; ++s) {
    if (rs.fixed[s]) continue;
    for (std::size_t a = 0; a < q.num_actions(s); ++a) {
      bool ok = std::none_of(q.action(s, a).begin(), q.action(s, a).end(), [&](Transition const& t) {
        return rs.fixed[t.target] && rs.fixed[t.target]->is_inf();
      });
      if (ok) rs.usable[s].push_back(a);
    }
    if (rs.usable[s].empty()) throw std::logic_error("reduction left an open state without usable action");
  }
  return rs;
}

// Minimal expected reward under the inf semantics towards `target` on m.
inline ReducedSystem reduce_min_reward(Mdp m, StateSet target) {
  std::size_t n = m.num_states();
  StateSet one = prob1_states(m, Opt::Max, target);
  // Value 0: the target is reached almost surely without positive reward.
  Mdp stopped = absorbing_targets(m, set_union(target, positive_reward_states(m)));
  StateSet zero = prob1_states(stopped, Opt::Max, target);
  std::vector<std::optional<ExtValue>> fixed(n);
  StateSet open(n, false);
  for (State s = 0; s < n; ++s) {
    if (target[s] || zero[s])
      fixed[s] = ExtValue(0);
    else if (!one[s])
      fixed[s] = ExtValue::infinity();
    else
      open[s] = true;
  }
  auto mecs = mecs_among(m, open, true);
  return finish_reduction(std::move(m), std::move(target), Opt::Min, true, std::move(fixed), mecs);
}

}  // namespace detail

// Rewards of target states are never collected.
inline ReducedSystem reduce_objective(Mdp const& m, ObjectiveSpec const& obj) {
  std::size_t n = m.num_states();
  StateSet const& target = obj.target;
  std::vector<std::optional<ExtValue>> fixed(n);
  StateSet open(n, false);

  switch (obj.objective) {
    case Objective::Pmin:
    case Objective::Pmax: {
      Opt opt = opt_of(obj.objective);
      StateSet zero = prob0_states(m, opt, target);
      StateSet one = prob1_states(m, opt, target);
      for (State s = 0; s < n; ++s) {
        if (target[s] || one[s])
          fixed[s] = ExtValue(1);
        else if (zero[s])
          fixed[s] = ExtValue(0);
        else
          open[s] = true;
      }
      std::vector<Mec> mecs;
      if (opt == Opt::Max) mecs = detail::mecs_among(m, open, false);
      return detail::finish_reduction(m, target, opt, false, std::move(fixed), mecs);
    }
    case Objective::Emin: {
      if (obj.semantics == Semantics::Inf) return detail::reduce_min_reward(m, target);
      // The value is the inf-semantics value towards the states that can
      // avoid positive reward forever.
      Mdp v = absorbing_targets(m, target);
      StateSet zero = prob0_states(v, Opt::Min, positive_reward_states(v));
      return detail::reduce_min_reward(std::move(v), std::move(zero));
    }
    case Objective::Emax: {
      if (obj.semantics == Semantics::Inf) {
        StateSet one = prob1_states(m, Opt::Min, target);
        Mdp v = absorbing_targets(m, target);
        StateSet avoid = prob0_states(v, Opt::Max, positive_reward_states(v));
        for (State s = 0; s < n; ++s) {
          if (target[s] || (one[s] && avoid[s]))
            fixed[s] = ExtValue(0);
          else if (!one[s])
            fixed[s] = ExtValue::infinity();
          else
            open[s] = true;
        }
        return detail::finish_reduction(m, target, Opt::Max, true, std::move(fixed), {});
      }
      Mdp v = absorbing_targets(m, target);
      StateSet pos = positive_reward_states(v);
      StateSet zero = prob0_states(v, Opt::Max, pos);
      StateSet good(n, false);
      for (auto const& mec : mec_decomposition(v))
        if (std::any_of(mec.states.begin(), mec.states.end(), [&](State s) { return pos[s]; }))
          for (State s : mec.states) good[s] = true;
      StateSet unbounded = detail::set_not(prob0_states(v, Opt::Max, good));
      for (State s = 0; s < n; ++s) {
        if (zero[s])
          fixed[s] = ExtValue(0);
        else if (unbounded[s])
          fixed[s] = ExtValue::infinity();
        else
          open[s] = true;
      }
      auto mecs = detail::mecs_among(v, open, true);
      return detail::finish_reduction(std::move(v), zero, Opt::Max, true, std::move(fixed), mecs);
    }
  }
  throw std::logic_error("unknown objective");
}

// Values of the quotient lifted to the states of the original model.
inline ValueVector lift_values(ReducedSystem const& rs, ValueVector const& q) {
  ValueVector out(rs.base.num_states());
  for (State s = 0; s < out.size(); ++s) out[s] = q[rs.collapse.lift[s]];
  return out;
}

namespace detail {

// Lowest-index allowed action reaching a successor one rank closer.
inline std::size_t progress_action(Mdp const& m, State s, std::vector<std::size_t> const& allowed, RankVector const& r) {
  for (auto a : allowed)
    if (r[s].is_finite() && r[s].value() > 0 && min_rank(m.action(s, a), r).succ() == r[s]) return a;
  return allowed.empty() ? 0 : allowed.front();
}

inline std::size_t greedy_action(Mdp const& m, State s, Opt opt, ValueVector const& x) {
  std::size_t best = 0;
  ExtValue bestVal = expect(m.action(s, 0), x);
  for (std::size_t a = 1; a < m.num_actions(s); ++a) {
    ExtValue v = expect(m.action(s, a), x);
    if (opt == Opt::Min ? v < bestVal : v > bestVal) {
      best = a;
      bestVal = v;
    }
  }
  return best;
}

inline ActionFilter filter_where(Mdp const& m, ActionFilter f, StateSet const& keep) {
  for (State s = 0; s < m.num_states(); ++s)
    if (!keep[s]) f[s].clear();
  return f;
}

// Strategy for the inf-semantics minimal reward towards `target` on m, given
// the exact optimal values x.
inline Strategy min_reward_strategy(Mdp const& m, StateSet const& target, ValueVector const& x) {
  std::size_t n = m.num_states();
  ActionFilter dec = decreasing_actions(m, x);
  RankVector r = restricted_distance_fp(m, Opt::Min, target, dec);
  Strategy sigma(n, 0);
  for (State s = 0; s < n; ++s)
    if (!target[s] && x[s].is_finite()) sigma[s] = progress_action(m, s, dec[s], r);
  return sigma;
}

}  // namespace detail

// Optimal memoryless deterministic strategy read off the exact optimal
// values x of the original model: among the value-preserving actions, the
// lowest-index one that makes progress towards the relevant target.
inline Strategy extract_strategy(Mdp const& m, ObjectiveSpec const& obj, ValueVector const& x) {
  std::size_t n = m.num_states();
  StateSet const& target = obj.target;
  Strategy sigma(n, 0);
  switch (obj.objective) {
    case Objective::Pmin:
      for (State s = 0; s < n; ++s)
        if (!target[s]) sigma[s] = detail::greedy_action(m, s, Opt::Min, x);
      return sigma;
    case Objective::Pmax: {
      ActionFilter inc = increasing_actions(m, x);
      RankVector r = restricted_distance_fp(m, Opt::Min, target, inc);
      for (State s = 0; s < n; ++s)
        if (!target[s] && x[s] > ExtValue(0)) sigma[s] = detail::progress_action(m, s, inc[s], r);
      return sigma;
    }
    case Objective::Emin: {
      if (obj.semantics == Semantics::Inf) return detail::min_reward_strategy(m, target, x);
      Mdp v = absorbing_targets(m, target);
      StateSet zero = prob0_states(v, Opt::Min, positive_reward_states(v));
      sigma = detail::min_reward_strategy(v, zero, x);
      // Zero-value states keep away from positive reward forever.
      for (State s = 0; s < n; ++s) {
        if (!zero[s] || target[s]) continue;
        for (std::size_t a = 0; a < v.num_actions(s); ++a)
          if (std::all_of(v.action(s, a).begin(), v.action(s, a).end(), [&](Transition const& t) { return zero[t.target]; })) {
            sigma[s] = a;
            break;
          }
      }
      for (State s = 0; s < n; ++s)
        if (target[s]) sigma[s] = 0;
      return sigma;
    }
    case Objective::Emax: {
      if (obj.semantics == Semantics::Inf) {
        Mdp v = absorbing_targets(m, target);
        StateSet zero = prob0_states(v, Opt::Min, target);
        RankVector r = fixed_point_distance(v, Opt::Min, zero);
        for (State s = 0; s < n; ++s) {
          if (target[s]) continue;
          if (x[s].is_finite()) {
            sigma[s] = detail::greedy_action(m, s, Opt::Max, x);
          } else if (zero[s]) {
            for (std::size_t a = 0; a < m.num_actions(s); ++a)
              if (std::all_of(m.action(s, a).begin(), m.action(s, a).end(), [&](Transition const& t) { return zero[t.target]; })) {
                sigma[s] = a;
                break;
              }
          } else {
            sigma[s] = detail::progress_action(v, s, detail::all_actions(v)[s], r);
          }
        }
        return sigma;
      }
      Mdp v = absorbing_targets(m, target);
      StateSet pos = positive_reward_states(v);
      ActionFilter inc = reward_increasing_actions(v, x);
      RankVector rPos = restricted_distance_fp(v, Opt::Min, pos, inc);
      // Good end components: those containing a positive-reward state.
      StateSet good(n, false);
      ActionFilter internal(n);
      for (auto const& mec : mec_decomposition(v)) {
        if (std::none_of(mec.states.begin(), mec.states.end(), [&](State s) { return pos[s]; })) continue;
        for (std::size_t i = 0; i < mec.states.size(); ++i) {
          good[mec.states[i]] = true;
          internal[mec.states[i]] = mec.actions[i];
        }
      }
      StateSet goodPos(n, false);
      for (State s = 0; s < n; ++s) goodPos[s] = good[s] && pos[s];
      RankVector rIn = restricted_distance_fp(v, Opt::Min, goodPos, internal);
      RankVector rGood = fixed_point_distance(v, Opt::Min, good);
      for (State s = 0; s < n; ++s) {
        if (target[s]) continue;
        if (x[s].is_inf()) {
          if (good[s])
            sigma[s] = pos[s] ? internal[s].front() : detail::progress_action(v, s, internal[s], rIn);
          else
            sigma[s] = detail::progress_action(v, s, detail::all_actions(v)[s], rGood);
        } else if (x[s] > ExtValue(0)) {
          sigma[s] = pos[s] ? inc[s].front() : detail::progress_action(v, s, inc[s], rPos);
        }
      }
      return sigma;
    }
  }
  return sigma;
}

}  // namespace fpcert
