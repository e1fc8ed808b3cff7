#pragma once

#include "fpcert/certificate.hpp"

#include <optional>

namespace fpcert::oracle {

// Deliberately shares no code with the solvers or the graph module: own
// reachability, own recurrence detection, own fraction-free elimination.

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultCap = 100000;

// Solves A y = b exactly. A is square and nonsingular. Rows are scaled to
// integers, then eliminated fraction-free (Bareiss) with pivot search.
inline std::vector<Rat> bareiss_solve(std::vector<std::vector<Rat>> const& a, std::vector<Rat> const& b) {
  std::size_t n = a.size();
  if (n == 0) return {};
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a[i][j].get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), b[i].get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j].get_num() * (l / a[i][j].get_den());
    m[i][n] = b[i].get_num() * (l / b[i].get_den());
  }
  mpz_class prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) throw std::logic_error("oracle: singular system");
    if (p != k) std::swap(m[p], m[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) {
        m[i][j] = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  std::vector<Rat> y(n);
  for (std::size_t i = n; i-- > 0;) {
    Rat acc(m[i][n]);
    for (std::size_t j = i + 1; j < n; ++j) acc -= Rat(m[i][j]) * y[j];
    y[i] = acc / Rat(m[i][i]);
    y[i].canonicalize();
  }
  return y;
}

namespace detail {

inline std::vector<std::vector<State>> dtmc_succ(Mdp const& d, StateSet const& target) {
  std::vector<std::vector<State>> succ(d.num_states());
  for (State s = 0; s < d.num_states(); ++s)
    if (!target[s])
      for (auto const& t : d.action(s, 0)) succ[s].push_back(t.target);
  return succ;
}

// reach[s][u]: u reachable from s (reflexive), never leaving a target.
inline std::vector<std::vector<bool>> closure(std::vector<std::vector<State>> const& succ) {
  std::size_t n = succ.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (State s = 0; s < n; ++s) {
    std::vector<State> stack{s};
    reach[s][s] = true;
    while (!stack.empty()) {
      State u = stack.back();
      stack.pop_back();
      for (State w : succ[u])
        if (!reach[s][w]) {
          reach[s][w] = true;
          stack.push_back(w);
        }
    }
  }
  return reach;
}

// Solves x(s) = c(s) + sum_{u in unknown} P(s,u) x(u) for s in unknown,
// where known values enter c.
inline void solve_linear(Mdp const& d, std::vector<bool> const& unknown, std::vector<Rat> const& constant,
                         std::vector<Rat> const& known, std::vector<Rat>& out) {
  std::vector<State> idx;
  std::vector<std::size_t> pos(d.num_states(), 0);
  for (State s = 0; s < d.num_states(); ++s)
    if (unknown[s]) {
      pos[s] = idx.size();
      idx.push_back(s);
    }
  std::vector<std::vector<Rat>> a(idx.size(), std::vector<Rat>(idx.size(), Rat(0)));
  std::vector<Rat> b(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    State s = idx[i];
    a[i][i] += 1;
    b[i] = constant[s];
    for (auto const& t : d.action(s, 0)) {
      if (unknown[t.target])
        a[i][pos[t.target]] -= t.prob;
      else
        b[i] += t.prob * known[t.target];
    }
  }
  auto y = bareiss_solve(a, b);
  for (std::size_t i = 0; i < idx.size(); ++i) out[idx[i]] = y[i];
}

}  // namespace detail

// Exact P_s(<>T) of a DTMC.
inline ValueVector dtmc_reach_exact(Mdp const& d, StateSet const& target) {
  std::size_t n = d.num_states();
  auto reach = detail::closure(detail::dtmc_succ(d, target));
  std::vector<bool> unknown(n, false);
  std::vector<Rat> known(n, Rat(0)), out(n, Rat(0));
  for (State s = 0; s < n; ++s) {
    if (target[s]) {
      known[s] = out[s] = 1;
      continue;
    }
    for (State u = 0; u < n; ++u)
      if (reach[s][u] && target[u]) unknown[s] = true;
  }
  detail::solve_linear(d, unknown, std::vector<Rat>(n, Rat(0)), known, out);
  ValueVector v(n);
  for (State s = 0; s < n; ++s) v[s] = ExtValue(out[s]);
  return v;
}

// Exact expected reward collected before the first target visit. Target
// rewards are never collected.
inline ValueVector dtmc_reward_exact(Mdp const& d, StateSet const& target, Semantics sem) {
  std::size_t n = d.num_states();
  ValueVector v(n, ExtValue(0));
  std::vector<bool> unknown(n, false), inf(n, false);
  if (sem == Semantics::Inf) {
    ValueVector p = dtmc_reach_exact(d, target);
    for (State s = 0; s < n; ++s) {
      if (target[s]) continue;
      if (p[s] < ExtValue(1))
        inf[s] = true;
      else
        unknown[s] = true;
    }
  } else {
    auto succ = detail::dtmc_succ(d, target);
    auto reach = detail::closure(succ);
    std::vector<bool> recurrent(n, true), positiveClass(n, false);
    for (State s = 0; s < n; ++s)
      for (State u = 0; u < n; ++u)
        if (reach[s][u] && !reach[u][s]) recurrent[s] = false;
    for (State s = 0; s < n; ++s) {
      if (!recurrent[s] || target[s]) continue;
      for (State u = 0; u < n; ++u)
        if (reach[s][u] && sgn(d.reward(u)) > 0) positiveClass[s] = true;
    }
    for (State s = 0; s < n; ++s) {
      if (target[s]) continue;
      for (State u = 0; u < n; ++u)
        if (reach[s][u] && positiveClass[u]) inf[s] = true;
      if (!inf[s] && !recurrent[s]) unknown[s] = true;
    }
  }
  std::vector<Rat> constant(n, Rat(0)), known(n, Rat(0)), out(n, Rat(0));
  for (State s = 0; s < n; ++s)
    if (!target[s]) constant[s] = d.reward(s);
  detail::solve_linear(d, unknown, constant, known, out);
  for (State s = 0; s < n; ++s) v[s] = inf[s] ? ExtValue::infinity() : ExtValue(out[s]);
  return v;
}

struct OracleResult {
  ValueVector values;
  // An MD strategy attaining the pointwise optimum in every state, if one was
  // among the enumerated strategies.
  std::optional<Strategy> arg_strategy;
};

inline std::uint64_t strategy_count(Mdp const& m, std::uint64_t cap) {
  std::uint64_t count = 1;
  for (State s = 0; s < m.num_states(); ++s) {
    count *= m.num_actions(s);
    if (count > cap) throw CapExceeded("strategy count exceeds cap " + std::to_string(cap));
  }
  return count;
}

// Calls f(sigma) for every memoryless deterministic strategy.
template <typename F>
void for_each_strategy(Mdp const& m, std::uint64_t cap, F&& f) {
  strategy_count(m, cap);
  Strategy sigma(m.num_states(), 0);
  for (;;) {
    f(static_cast<Strategy const&>(sigma));
    State s = 0;
    while (s < sigma.size() && ++sigma[s] == m.num_actions(s)) sigma[s++] = 0;
    if (s == sigma.size()) return;
  }
}

inline ValueVector strategy_value(Mdp const& m, Strategy const& sigma, Objective obj, Semantics sem, StateSet const& target) {
  Mdp d = induced_dtmc(m, sigma);
  return is_reward(obj) ? dtmc_reward_exact(d, target, sem) : dtmc_reach_exact(d, target);
}

inline OracleResult optimal_exact(Mdp const& m, Query const& q, std::uint64_t cap = kDefaultCap) {
  StateSet const& target = m.label(q.target_label);
  Opt opt = opt_of(q.objective);
  std::vector<std::pair<Strategy, ValueVector>> all;
  ValueVector best;
  for_each_strategy(m, cap, [&](Strategy const& sigma) {
    ValueVector v = strategy_value(m, sigma, q.objective, q.semantics, target);
    if (best.empty())
      best = v;
    else
      for (State s = 0; s < v.size(); ++s)
        if (opt == Opt::Min ? v[s] < best[s] : v[s] > best[s]) best[s] = v[s];
    all.emplace_back(sigma, std::move(v));
  });
  OracleResult r{best, std::nullopt};
  for (auto const& [sigma, v] : all)
    if (v == best) {
      r.arg_strategy = sigma;
      break;
    }
  return r;
}

// All six optimal value vectors from one enumeration.
struct AllValues {
  ValueVector pmin, pmax, emin_inf, emax_inf, emin_rho, emax_rho;
};

inline AllValues optimal_all(Mdp const& m, StateSet const& target, std::uint64_t cap = kDefaultCap) {
  AllValues out;
  auto fold = [](ValueVector& acc, ValueVector const& v, Opt opt) {
    if (acc.empty()) {
      acc = v;
      return;
    }
    for (State s = 0; s < v.size(); ++s)
      if (opt == Opt::Min ? v[s] < acc[s] : v[s] > acc[s]) acc[s] = v[s];
  };
  for_each_strategy(m, cap, [&](Strategy const& sigma) {
    Mdp d = induced_dtmc(m, sigma);
    ValueVector p = dtmc_reach_exact(d, target);
    ValueVector ei = dtmc_reward_exact(d, target, Semantics::Inf);
    ValueVector er = dtmc_reward_exact(d, target, Semantics::Rho);
    fold(out.pmin, p, Opt::Min);
    fold(out.pmax, p, Opt::Max);
    fold(out.emin_inf, ei, Opt::Min);
    fold(out.emax_inf, ei, Opt::Max);
    fold(out.emin_rho, er, Opt::Min);
    fold(out.emax_rho, er, Opt::Max);
  });
  return out;
}

inline ValueVector const& select(AllValues const& a, Objective obj, Semantics sem) {
  switch (obj) {
    case Objective::Pmin: return a.pmin;
    case Objective::Pmax: return a.pmax;
    case Objective::Emin: return sem == Semantics::Inf ? a.emin_inf : a.emin_rho;
    case Objective::Emax: return sem == Semantics::Inf ? a.emax_inf : a.emax_rho;
  }
  return a.pmin;
}

}  // namespace fpcert::oracle
