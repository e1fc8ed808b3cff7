#pragma once

#include "fpcert/linear.hpp"
#include "fpcert/reduce.hpp"

namespace fpcert {

struct PolicyIterationResult {
  ValueVector values;
  Strategy strategy;
  std::size_t evaluations = 0;
};

namespace detail {

// Exact value of one quotient action: reward plus expected successor value.
inline ExtValue action_value(ReducedSystem const& rs, State s, std::size_t a, ValueVector const& x) {
  ExtValue v = expect(rs.quotient().action(s, a), x);
  return rs.reward ? ExtValue(rs.quotient().reward(s)) + v : v;
}

// Initial strategy on the open states that reaches the finite fixed states
// almost surely.
inline Strategy proper_strategy(ReducedSystem const& rs) {
  Mdp const& q = rs.quotient();
  StateSet exits(rs.num_quotient(), false);
  for (State s = 0; s < rs.num_quotient(); ++s) exits[s] = rs.fixed[s] && rs.fixed[s]->is_finite();
  RankVector r = restricted_distance_fp(q, Opt::Min, exits, rs.usable);
  Strategy sigma(rs.num_quotient(), 0);
  for (State s = 0; s < rs.num_quotient(); ++s)
    if (!rs.fixed[s]) sigma[s] = progress_action(q, s, rs.usable[s], r);
  return sigma;
}

inline ValueVector evaluate(ReducedSystem const& rs, Strategy const& sigma) {
  Mdp const& q = rs.quotient();
  std::size_t nq = rs.num_quotient();
  std::vector<std::size_t> index(nq, 0);
  std::vector<State> open;
  for (State s = 0; s < nq; ++s)
    if (!rs.fixed[s]) {
      index[s] = open.size();
      open.push_back(s);
    }
  std::vector<std::vector<SparseEntry>> rows(open.size());
  std::vector<Rat> b(open.size(), Rat(0));
  for (std::size_t i = 0; i < open.size(); ++i) {
    State s = open[i];
    rows[i].push_back({i, Rat(1)});
    if (rs.reward) b[i] += q.reward(s);
    for (auto const& t : q.action(s, sigma[s])) {
      if (rs.fixed[t.target])
        b[i] += t.prob * rs.fixed[t.target]->value();
      else
        rows[i].push_back({index[t.target], Rat(-t.prob)});
    }
  }
  auto y = solve_exact(rows, std::move(b));
  ValueVector x(nq);
  for (State s = 0; s < nq; ++s) x[s] = rs.fixed[s] ? *rs.fixed[s] : ExtValue(y[index[s]]);
  return x;
}

}  // namespace detail

// Exact policy iteration on the reduced system; switches an action only on
// strict improvement, which keeps every strategy proper.
inline ValueVector policy_iteration(ReducedSystem const& rs, std::size_t* evaluations = nullptr) {
  Strategy sigma = detail::proper_strategy(rs);
  std::size_t evals = 0;
  for (;;) {
    ValueVector x = detail::evaluate(rs, sigma);
    ++evals;
    bool changed = false;
    for (State s = 0; s < rs.num_quotient(); ++s) {
      if (rs.fixed[s]) continue;
      ExtValue current = detail::action_value(rs, s, sigma[s], x);
      std::size_t best = sigma[s];
      ExtValue bestVal = current;
      for (auto a : rs.usable[s]) {
        ExtValue v = detail::action_value(rs, s, a, x);
        if (rs.opt == Opt::Min ? v < bestVal : v > bestVal) {
          best = a;
          bestVal = v;
        }
      }
      if (best != sigma[s]) {
        sigma[s] = best;
        changed = true;
      }
    }
    if (!changed) {
      if (evaluations) *evaluations = evals;
      return x;
    }
  }
}

// Exact optimal values and an optimal memoryless deterministic strategy.
inline PolicyIterationResult policy_iteration_exact(Mdp const& m, ObjectiveSpec const& obj) {
  ReducedSystem rs = reduce_objective(m, obj);
  PolicyIterationResult res;
  res.values = lift_values(rs, policy_iteration(rs, &res.evaluations));
  res.strategy = extract_strategy(m, obj, res.values);
  return res;
}

}  // namespace fpcert
