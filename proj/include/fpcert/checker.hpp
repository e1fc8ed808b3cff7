#pragma once

#include "fpcert/certificate.hpp"
#include "fpcert/ranking.hpp"

namespace fpcert {

// Condition identifiers reported in Verdict failures.
namespace cond {
inline constexpr char const* kBellmanDecrease = "bellman_decrease";          // B(x) <= x
inline constexpr char const* kBellmanIncrease = "bellman_increase";          // x <= B(x)
inline constexpr char const* kDistanceRank = "distance_rank";                // D(r) <= r
inline constexpr char const* kComplementaryRank = "complementary_rank";      // C(r) <= r
inline constexpr char const* kPositiveNeedsRank = "positive_needs_rank";     // x(s) > 0 => r(s) < inf
inline constexpr char const* kInfiniteNeedsRank = "infinite_needs_rank";     // x(s) = inf => r(s) < inf
inline constexpr char const* kFiniteNeedsRank = "finite_needs_rank";         // x(s) < inf => r(s) < inf
inline constexpr char const* kRankInfNeedsFinite = "rank_inf_needs_finite";  // r1(s) = inf => x(s) < inf
inline constexpr char const* kRankInfNeedsTin = "rank_inf_needs_tin";        // r2(s) = inf => s in Tin
inline constexpr char const* kNoInductiveAction = "no_inductive_action";
inline constexpr char const* kNoConsistentStrategy = "no_consistent_strategy";
inline constexpr char const* kProbabilityRange = "probability_range";
}  // namespace cond

namespace detail {

inline void check_rank_le(Verdict& v, char const* name, RankVector const& lhs, RankVector const& r) {
  for (State s = 0; s < r.size(); ++s)
    if (lhs[s] > r[s]) v.fail(name, s, to_string(lhs[s]), to_string(r[s]));
}

inline void check_value_le(Verdict& v, char const* name, ValueVector const& lhs, ValueVector const& rhs) {
  for (State s = 0; s < lhs.size(); ++s)
    if (lhs[s] > rhs[s]) v.fail(name, s, to_string(lhs[s]), to_string(rhs[s]));
}

inline void check_nonempty_filter(Verdict& v, ActionFilter const& f, StateSet const& target, ValueVector const& x) {
  for (State s = 0; s < f.size(); ++s)
    if (!target[s] && f[s].empty()) v.fail(cond::kNoInductiveAction, s, to_string(x[s]), "-");
}

inline StateSet complement(StateSet s) {
  s.flip();
  return s;
}

}  // namespace detail

inline Verdict check_reach_upper(Mdp const& m, Opt opt, StateSet const& target, ValueVector const& x) {
  Verdict v;
  detail::check_value_le(v, cond::kBellmanDecrease, bellman_reach(m, opt, target, x), x);
  return v;
}

// Finite r(s) certifies P^opt_s(<>T) > 0.
inline Verdict check_positive_reach(Mdp const& m, Opt opt, StateSet const& target, RankVector const& r) {
  Verdict v;
  detail::check_rank_le(v, cond::kDistanceRank, apply_distance_op(m, negate(opt), target, r), r);
  return v;
}

// Finite r(s) certifies P^opt_s(<>T) < 1.
inline Verdict check_non_as_reach(Mdp const& m, Opt opt, StateSet const& target, RankVector const& r) {
  Verdict v;
  detail::check_rank_le(v, cond::kComplementaryRank, apply_complementary_op(m, opt, target, r), r);
  return v;
}

inline Verdict check_reach_lower_min(Mdp const& m, StateSet const& target, ValueVector const& x, RankVector const& r) {
  Verdict v;
  detail::check_rank_le(v, cond::kDistanceRank, apply_distance_op(m, Opt::Max, target, r), r);
  detail::check_value_le(v, cond::kBellmanIncrease, x, bellman_reach(m, Opt::Min, target, x));
  for (State s = 0; s < m.num_states(); ++s)
    if (!target[s] && x[s] > ExtValue(0) && r[s].is_inf()) v.fail(cond::kPositiveNeedsRank, s, to_string(x[s]), to_string(r[s]));
  return v;
}

inline Verdict check_reach_lower_max(Mdp const& m, StateSet const& target, ValueVector const& x, RankVector const& r) {
  Verdict v;
  ActionFilter inc = increasing_actions(m, x);
  detail::check_nonempty_filter(v, inc, target, x);
  detail::check_rank_le(v, cond::kDistanceRank, apply_restricted_distance(m, Opt::Min, target, inc, r), r);
  detail::check_value_le(v, cond::kBellmanIncrease, x, bellman_reach(m, Opt::Max, target, x));
  for (State s = 0; s < m.num_states(); ++s)
    if (!target[s] && x[s] > ExtValue(0) && r[s].is_inf()) v.fail(cond::kPositiveNeedsRank, s, to_string(x[s]), to_string(r[s]));
  return v;
}

inline Verdict check_reach_lower_max_witness(Mdp const& m, StateSet const& target, ValueVector const& x, RankVector const& r,
                                             Strategy const& sigma) {
  return check_reach_lower_min(induced_dtmc(m, sigma), target, x, r);
}

inline Verdict check_rew_inf_lower(Mdp const& m, Opt opt, StateSet const& target, ValueVector const& x, RankVector const& r) {
  Verdict v;
  detail::check_rank_le(v, cond::kComplementaryRank, apply_complementary_op(m, negate(opt), target, r), r);
  detail::check_value_le(v, cond::kBellmanIncrease, x, bellman_reward(m, opt, target, x));
  for (State s = 0; s < m.num_states(); ++s)
    if (x[s].is_inf() && r[s].is_inf()) v.fail(cond::kInfiniteNeedsRank, s, to_string(x[s]), to_string(r[s]));
  return v;
}

inline Verdict check_rew_inf_upper_max(Mdp const& m, StateSet const& target, ValueVector const& x, RankVector const& r) {
  Verdict v;
  detail::check_rank_le(v, cond::kDistanceRank, apply_distance_op(m, Opt::Max, target, r), r);
  detail::check_value_le(v, cond::kBellmanDecrease, bellman_reward(m, Opt::Max, target, x), x);
  for (State s = 0; s < m.num_states(); ++s)
    if (x[s].is_finite() && r[s].is_inf()) v.fail(cond::kFiniteNeedsRank, s, to_string(x[s]), to_string(r[s]));
  return v;
}

inline Verdict check_rew_inf_upper_min(Mdp const& m, StateSet const& target, ValueVector const& x, RankVector const& r) {
  Verdict v;
  ActionFilter dec = decreasing_actions(m, x);
  detail::check_nonempty_filter(v, dec, target, x);
  detail::check_rank_le(v, cond::kDistanceRank, apply_restricted_distance(m, Opt::Min, target, dec, r), r);
  detail::check_value_le(v, cond::kBellmanDecrease, bellman_reward(m, Opt::Min, target, x), x);
  for (State s = 0; s < m.num_states(); ++s)
    if (x[s].is_finite() && r[s].is_inf()) v.fail(cond::kFiniteNeedsRank, s, to_string(x[s]), to_string(r[s]));
  return v;
}

inline Verdict check_rew_inf_upper_min_witness(Mdp const& m, StateSet const& target, ValueVector const& x, RankVector const& r,
                                               Strategy const& sigma) {
  return check_rew_inf_upper_max(induced_dtmc(m, sigma), target, x, r);
}

inline Verdict check_rew_rho_upper(Mdp const& m, Opt opt, StateSet const& target, ValueVector const& x) {
  Verdict v;
  detail::check_value_le(v, cond::kBellmanDecrease, bellman_reward(m, opt, target, x), x);
  return v;
}

namespace detail {

// Conditions 1-5 of the rho lower-bound certificates, evaluated on a model
// whose targets are already absorbing with zero reward. `inc` restricts the
// distance operator of condition 4 when given.
inline Verdict check_rho_lower_conditions(Mdp const& v, Opt opt, ValueVector const& x, RankVector const& r1,
                                          RankVector const& r2, StateSet const& tin, ActionFilter const* inc) {
  Verdict out;
  StateSet pos = positive_reward_states(v);
  check_rank_le(out, cond::kComplementaryRank, apply_complementary_op(v, Opt::Max, tin, r1), r1);
  check_value_le(out, cond::kBellmanIncrease, x, bellman_reward(v, opt, tin, x));
  for (State s = 0; s < v.num_states(); ++s)
    if (r1[s].is_inf() && x[s].is_inf()) out.fail(cond::kRankInfNeedsFinite, s, to_string(r1[s]), to_string(x[s]));
  check_rank_le(out, cond::kDistanceRank, apply_distance_op(v, Opt::Max, pos, r2, inc), r2);
  for (State s = 0; s < v.num_states(); ++s)
    if (r2[s].is_inf() && !tin[s]) out.fail(cond::kRankInfNeedsTin, s, to_string(r2[s]), "0");
  return out;
}

}  // namespace detail

// The rho lower-bound conditions are evaluated with targets made absorbing and
// their rewards ignored; rewards are never collected from target states.
inline Verdict check_rew_rho_lower_min(Mdp const& m, StateSet const& target, ValueVector const& x, RankVector const& r1,
                                       RankVector const& r2, StateSet const& tin) {
  return detail::check_rho_lower_conditions(absorbing_targets(m, target), Opt::Min, x, r1, r2, tin, nullptr);
}

inline Verdict check_rew_rho_lower_max(Mdp const& m, StateSet const& target, ValueVector const& x, RankVector const& r1,
                                       RankVector const& r2, Strategy const& sigma, StateSet const& tin) {
  validate_strategy(m, sigma);
  Mdp d = induced_dtmc(absorbing_targets(m, target), absorbing_strategy(sigma, target));
  return detail::check_rho_lower_conditions(d, Opt::Max, x, r1, r2, tin, nullptr);
}

inline Verdict check_rew_rho_lower_max_nostrat(Mdp const& m, StateSet const& target, ValueVector const& x,
                                               RankVector const& r1, RankVector const& r2, StateSet const& tin) {
  Mdp v = absorbing_targets(m, target);
  Verdict out;
  ActionFilter inc = reward_increasing_actions(v, x);
  for (State s = 0; s < v.num_states(); ++s) {
    if (inc[s].empty()) {
      out.fail(cond::kNoInductiveAction, s, to_string(x[s]), "-");
      continue;
    }
    auto argmax = [&](RankVector const& r) {
      std::vector<std::size_t> best;
      ExtNat top(0);
      for (auto a : inc[s]) {
        ExtNat val = detail::min_rank(v.action(s, a), r);
        if (best.empty() || val > top) {
          best = {a};
          top = val;
        } else if (val == top) {
          best.push_back(a);
        }
      }
      return best;
    };
    auto a1 = argmax(r1), a2 = argmax(r2);
    bool common = std::any_of(a1.begin(), a1.end(), [&](std::size_t a) { return std::find(a2.begin(), a2.end(), a) != a2.end(); });
    if (!common) out.fail(cond::kNoConsistentStrategy, s, to_string(r1[s]), to_string(r2[s]));
  }
  out.merge(detail::check_rho_lower_conditions(v, Opt::Max, x, r1, r2, tin, &inc));
  return out;
}

// Checks a certificate against the proposition selected by its query.
inline Verdict check_certificate(Mdp const& m, Certificate const& c) {
  validate_certificate_shape(c, m.num_states());
  auto const& q = c.query;
  if (!m.has_label(q.target_label)) throw CertificateError("unknown label '" + q.target_label + "'");
  StateSet const& target = m.label(q.target_label);
  Opt opt = opt_of(q.objective);
  bool lower = q.bound == Bound::Lower;

  if (!is_reward(q.objective)) {
    if (!lower) return check_reach_upper(m, opt, target, c.x);
    if (opt == Opt::Min) return check_reach_lower_min(m, target, c.x, *c.r);
    if (c.sigma) return check_reach_lower_max_witness(m, target, c.x, *c.r, *c.sigma);
    return check_reach_lower_max(m, target, c.x, *c.r);
  }
  if (q.semantics == Semantics::Inf) {
    if (lower) return check_rew_inf_lower(m, opt, target, c.x, *c.r);
    if (opt == Opt::Max) return check_rew_inf_upper_max(m, target, c.x, *c.r);
    if (c.sigma) return check_rew_inf_upper_min_witness(m, target, c.x, *c.r, *c.sigma);
    return check_rew_inf_upper_min(m, target, c.x, *c.r);
  }
  if (!lower) return check_rew_rho_upper(m, opt, target, c.x);
  if (opt == Opt::Min) return check_rew_rho_lower_min(m, target, c.x, *c.r, *c.r2, *c.tin);
  if (c.sigma) return check_rew_rho_lower_max(m, target, c.x, *c.r, *c.r2, *c.sigma, *c.tin);
  return check_rew_rho_lower_max_nostrat(m, target, c.x, *c.r, *c.r2, *c.tin);
}

}  // namespace fpcert
