#pragma once

#include "fpcert/checker.hpp"
#include "fpcert/policy_iteration.hpp"
#include "fpcert/value_iteration.hpp"

namespace fpcert {

struct GenerationError : std::runtime_error {
  Verdict verdict;
  GenerationError(std::string const& msg, Verdict v) : std::runtime_error(msg), verdict(std::move(v)) {}
};

struct GenerateOptions {
  // Attach an explicit witness strategy where the proposition allows one.
  bool witness = false;
};

namespace detail {

inline std::string format_config(SolverConfig const& cfg) {
  return std::string(cfg.method == Method::PI ? "pi" : "ii");
}

// Witness strategy for a rho max lower bound x: value-preserving progress
// towards positive reward on finite states, towards and inside end components
// with positive reward on infinite ones.
inline Strategy rho_max_witness(Mdp const& m, StateSet const& target, ValueVector const& x) {
  ObjectiveSpec obj{Objective::Emax, Semantics::Rho, target};
  return extract_strategy(m, obj, x);
}

inline Certificate build(Mdp const& m, Query const& q, StateSet const& target, ValueVector const& x, GenerateOptions const& opts) {
  Certificate c;
  c.query = q;
  c.x = x;
  Opt opt = opt_of(q.objective);
  bool lower = q.bound == Bound::Lower;

  if (!is_reward(q.objective)) {
    if (!lower) return c;
    if (opt == Opt::Min) {
      c.r = fixed_point_distance(m, Opt::Max, target);
      return c;
    }
    ActionFilter inc = increasing_actions(m, x);
    RankVector r = restricted_distance_fp(m, Opt::Min, target, inc);
    if (opts.witness) {
      Strategy sigma(m.num_states(), 0);
      for (State s = 0; s < m.num_states(); ++s)
        if (!target[s] && !inc[s].empty()) sigma[s] = progress_action(m, s, inc[s], r);
      c.r = fixed_point_distance(induced_dtmc(m, sigma), Opt::Min, target);
      c.sigma = sigma;
    } else {
      c.r = r;
    }
    return c;
  }

  if (q.semantics == Semantics::Inf) {
    if (lower) {
      c.r = lfp_complementary(m, negate(opt), target);
    } else if (opt == Opt::Max) {
      c.r = fixed_point_distance(m, Opt::Max, target);
    } else {
      ActionFilter dec = decreasing_actions(m, x);
      RankVector r = restricted_distance_fp(m, Opt::Min, target, dec);
      if (opts.witness) {
        Strategy sigma(m.num_states(), 0);
        for (State s = 0; s < m.num_states(); ++s)
          if (!target[s] && !dec[s].empty()) sigma[s] = progress_action(m, s, dec[s], r);
        c.r = fixed_point_distance(induced_dtmc(m, sigma), Opt::Min, target);
        c.sigma = sigma;
      } else {
        c.r = r;
      }
    }
    return c;
  }

  if (!lower) return c;
  Mdp v = absorbing_targets(m, target);
  StateSet pos = positive_reward_states(v);
  if (opt == Opt::Min) {
    c.tin = prob0_states(v, Opt::Min, pos);
    c.r = lfp_complementary(v, Opt::Max, *c.tin);
    c.r2 = fixed_point_distance(v, Opt::Max, pos);
    return c;
  }
  if (!opts.witness) {
    // Strategy-free form first; it is incomplete, so fall back to a witness.
    Certificate plain = c;
    plain.tin = prob0_states(v, Opt::Max, pos);
    plain.r = lfp_complementary(v, Opt::Max, *plain.tin);
    ActionFilter inc = reward_increasing_actions(v, x);
    plain.r2 = restricted_distance_fp(v, Opt::Max, pos, inc);
    if (check_certificate(m, plain).valid) return plain;
  }
  Strategy sigma = rho_max_witness(m, target, x);
  Mdp d = induced_dtmc(v, absorbing_strategy(sigma, target));
  c.tin = prob0_states(d, Opt::Min, pos);
  c.r = lfp_complementary(d, Opt::Max, *c.tin);
  c.r2 = fixed_point_distance(d, Opt::Max, pos);
  c.sigma = sigma;
  return c;
}

inline ObjectiveSpec objective_of(Mdp const& m, Query const& q) {
  if (!m.has_label(q.target_label)) throw std::invalid_argument("unknown label '" + q.target_label + "'");
  return ObjectiveSpec{q.objective, q.semantics, m.label(q.target_label)};
}

}  // namespace detail

// Certificates for the requested bound(s): lower first, then upper. Every
// certificate is re-checked before it is returned.
inline std::vector<Certificate> generate_certificates(Mdp const& m, Query const& q, SolverConfig const& cfg,
                                                      GenerateOptions const& opts = {}) {
  cfg.validate();
  ObjectiveSpec obj = detail::objective_of(m, q);
  BoundPair values;
  if (cfg.method == Method::PI) {
    auto res = policy_iteration_exact(m, obj);
    values = {res.values, res.values};
  } else {
    values = interval_iteration(m, obj, cfg);
  }
  std::vector<Certificate> out;
  for (Bound b : {Bound::Lower, Bound::Upper}) {
    if (q.bound != Bound::Both && q.bound != b) continue;
    Query single = q;
    single.bound = b;
    ValueVector x = b == Bound::Lower ? values.lower : values.upper;
    if (!is_reward(q.objective))
      for (auto& v : x) v = std::min(v, ExtValue(1));
    Certificate c = detail::build(m, single, obj.target, x, opts);
    c.meta["generator"] = detail::format_config(cfg);
    if (cfg.method == Method::II) {
      c.meta["gamma"] = to_string(cfg.gamma);
      c.meta["rounding"] = cfg.rounding == Rounding::Safe ? "safe" : "none";
      c.meta["precision_bits"] = std::to_string(cfg.precision_bits);
    }
    Verdict v = check_certificate(m, c);
    if (!v.valid) throw GenerationError(std::string("generated ") + to_string(b) + " certificate failed re-verification", v);
    out.push_back(std::move(c));
  }
  return out;
}

inline Certificate generate_certificate(Mdp const& m, Query const& q, SolverConfig const& cfg, GenerateOptions const& opts = {}) {
  if (q.bound == Bound::Both) throw std::invalid_argument("generate_certificate needs a single bound");
  return generate_certificates(m, q, cfg, opts).front();
}

}  // namespace fpcert
