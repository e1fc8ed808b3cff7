#pragma once

#include "fpcert/reduce.hpp"
#include "fpcert/rounding.hpp"

#include <type_traits>

namespace fpcert {

enum class From { Below, Above };

namespace detail {

template <typename Engine>
class Sweeper {
 public:
  using V = typename Engine::Value;

  Sweeper(ReducedSystem const& rs, SolverConfig const& cfg, Engine engine) : rs_(rs), engine_(engine) {
    Mdp const& q = rs.quotient();
    std::size_t nq = rs.num_quotient();
    index_.assign(nq, kFixed);
    for (State s = 0; s < nq; ++s)
      if (!rs.fixed[s]) {
        index_[s] = open_.size();
        open_.push_back(s);
      }
    for (Direction dir : {Direction::Down, Direction::Up}) {
      auto& side = sides_[static_cast<int>(dir)];
      side.gamma = engine_.from(cfg.gamma, dir);
      side.blend = engine_.from(Rat(1 - cfg.gamma), dir);
      side.actions.resize(open_.size());
      side.reward.resize(open_.size());
      for (std::size_t i = 0; i < open_.size(); ++i) {
        State s = open_[i];
        side.reward[i] = engine_.from(rs.reward ? q.reward(s) : Rat(0), dir);
        for (auto a : rs.usable[s]) {
          Action act;
          Rat constant = 0;
          for (auto const& t : q.action(s, a)) {
            if (rs.fixed[t.target])
              constant += t.prob * rs.fixed[t.target]->value();
            else
              act.succ.push_back({index_[t.target], engine_.from(t.prob, dir)});
          }
          act.constant = engine_.from(constant, dir);
          side.actions[i].push_back(std::move(act));
        }
      }
    }
    smoothing_ = sgn(cfg.gamma) != 0;
  }

  std::size_t size() const { return open_.size(); }

  // One guarded Jacobi sweep: lower iterates only grow, upper only shrink.
  std::vector<V> sweep(std::vector<V> const& x, Direction dir) const {
    auto const& side = sides_[static_cast<int>(dir)];
    std::vector<V> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      bool first = true;
      V best{};
      for (auto const& act : side.actions[i]) {
        V acc = act.constant;
        for (auto const& [j, p] : act.succ) acc = engine_.add(acc, engine_.mul(p, x[j], dir), dir);
        if (first || (rs_.opt == Opt::Min ? acc < best : acc > best)) best = acc;
        first = false;
      }
      if (rs_.reward) best = engine_.add(side.reward[i], best, dir);
      V val = smoothing_ ? engine_.add(engine_.mul(side.gamma, x[i], dir), engine_.mul(side.blend, best, dir), dir) : best;
      out[i] = dir == Direction::Down ? std::max(x[i], val) : std::min(x[i], val);
    }
    return out;
  }

  V from(Rat const& v, Direction dir) const { return engine_.from(v, dir); }
  Rat to_rat(V const& v) const { return engine_.to_rat(v); }

  // Lifts open values and fixed values to the states of the base model.
  ValueVector lift(std::vector<V> const& x) const {
    ValueVector q(rs_.num_quotient());
    for (State s = 0; s < q.size(); ++s) q[s] = rs_.fixed[s] ? *rs_.fixed[s] : ExtValue(engine_.to_rat(x[index_[s]]));
    return lift_values(rs_, q);
  }

  std::vector<State> const& open() const { return open_; }
  std::size_t index(State s) const { return index_[s]; }

 private:
  static constexpr std::size_t kFixed = static_cast<std::size_t>(-1);
  struct Action {
    V constant{};
    std::vector<std::pair<std::size_t, V>> succ;
  };
  struct Side {
    V gamma{}, blend{};
    std::vector<V> reward;
    std::vector<std::vector<Action>> actions;
  };

  ReducedSystem const& rs_;
  Engine engine_;
  std::vector<State> open_;
  std::vector<std::size_t> index_;
  Side sides_[2];
  bool smoothing_ = false;
};

// Finite upper bound on the open states of a reward system that is inductive
// for its Bellman operator. With d the distance to the exits (over all
// actions when maximising, under a proper strategy when minimising) and p the
// least transition probability, y = W - v_d with v_0 = W and
// v_k = p v_{k-1} - c satisfies rew + sum P y <= y whenever c >= max reward.
inline std::vector<Rat> reward_upper_start(ReducedSystem const& rs, Rat c) {
  Mdp const& q = rs.quotient();
  std::size_t nq = rs.num_quotient();
  StateSet exits(nq, false);
  for (State s = 0; s < nq; ++s) exits[s] = rs.fixed[s].has_value();
  ActionFilter filter = rs.usable;
  if (rs.opt == Opt::Min) {
    RankVector r = restricted_distance_fp(q, Opt::Min, exits, rs.usable);
    for (State s = 0; s < nq; ++s)
      if (!rs.fixed[s]) filter[s] = {progress_action(q, s, rs.usable[s], r)};
  }
  RankVector d = restricted_distance_fp(q, Opt::Max, exits, filter);
  Rat p = 1;
  std::uint64_t depth = 0;
  for (State s = 0; s < nq; ++s) {
    if (rs.fixed[s]) continue;
    if (d[s].is_inf()) throw std::logic_error("open state without bounded distance to exits");
    depth = std::max(depth, d[s].value());
    for (auto a : filter[s])
      for (auto const& t : q.action(s, a)) p = std::min(p, t.prob);
  }
  // W = c * sum_{j<D} p^(j-D)
  Rat w = 0, pinv = 1 / p, term = 1;
  for (std::uint64_t j = 0; j < depth; ++j) {
    term *= pinv;
    w += c * term;
  }
  std::vector<Rat> v(depth + 1);
  v[0] = w;
  for (std::uint64_t k = 1; k <= depth; ++k) v[k] = p * v[k - 1] - c;
  std::vector<Rat> y(nq, Rat(0));
  for (State s = 0; s < nq; ++s)
    if (!rs.fixed[s]) y[s] = w - v[d[s].value()];
  return y;
}

template <typename Engine>
std::vector<typename Engine::Value> initial_vector(Sweeper<Engine> const& sw, ReducedSystem const& rs, Direction dir) {
  using V = typename Engine::Value;
  std::vector<V> x(sw.size(), sw.from(Rat(0), Direction::Down));
  if (dir == Direction::Down) return x;
  if (!rs.reward) {
    for (auto& v : x) v = sw.from(Rat(1), Direction::Up);
    return x;
  }
  Rat c = 1;
  for (State s = 0; s < rs.num_quotient(); ++s)
    if (!rs.fixed[s]) c = std::max(c, Rat(rs.quotient().reward(s) + 1));
  // Rounding the start upward may break inductivity where it is tight; retry
  // with more slack until the rounded vector is inductive.
  for (int attempt = 0; attempt < 64; ++attempt, c *= 2) {
    std::vector<Rat> y = reward_upper_start(rs, c);
    ValueVector q(rs.num_quotient());
    for (State s = 0; s < q.size(); ++s) {
      if (rs.fixed[s]) {
        q[s] = *rs.fixed[s];
        continue;
      }
      x[sw.index(s)] = sw.from(y[s], Direction::Up);
      q[s] = ExtValue(sw.to_rat(x[sw.index(s)]));
    }
    bool inductive = true;
    for (State s = 0; s < q.size() && inductive; ++s) {
      if (rs.fixed[s]) continue;
      bool any = false, all = true;
      for (auto a : rs.usable[s]) {
        bool ok = ExtValue(rs.quotient().reward(s)) + expect(rs.quotient().action(s, a), q) <= q[s];
        any = any || ok;
        all = all && ok;
      }
      inductive = rs.opt == Opt::Min ? any : all;
    }
    if (inductive) return x;
  }
  throw std::logic_error("no inductive upper start found");
}

template <typename Engine>
bool within(Sweeper<Engine> const& sw, typename Engine::Value const& lo, typename Engine::Value const& hi, Rat const& eps) {
  if constexpr (std::is_same_v<typename Engine::Value, double>) {
    return hi - lo <= eps.get_d() * hi;
  } else {
    Rat l = sw.to_rat(lo), h = sw.to_rat(hi);
    return h - l <= eps * h;
  }
}

template <typename Engine>
ValueVector run_single(ReducedSystem const& rs, SolverConfig const& cfg, Engine engine, From from) {
  Sweeper<Engine> sw(rs, cfg, engine);
  Direction dir = from == From::Below ? Direction::Down : Direction::Up;
  auto x = initial_vector(sw, rs, dir);
  for (std::uint64_t k = 0; k < cfg.max_sweeps; ++k) {
    auto next = sw.sweep(x, dir);
    bool done = true;
    for (std::size_t i = 0; i < x.size() && done; ++i)
      done = from == From::Below ? within(sw, x[i], next[i], cfg.epsilon) : within(sw, next[i], x[i], cfg.epsilon);
    x = std::move(next);
    if (done) return sw.lift(x);
  }
  throw SolverError(SolverError::Kind::NonConvergence, "value iteration did not converge within the sweep cap");
}

template <typename Engine>
BoundPair run_interval(ReducedSystem const& rs, SolverConfig const& cfg, Engine engine) {
  Sweeper<Engine> sw(rs, cfg, engine);
  auto lo = initial_vector(sw, rs, Direction::Down);
  auto hi = initial_vector(sw, rs, Direction::Up);
  Rat eps = cfg.epsilon / 2;
  for (std::uint64_t k = 0;; ++k) {
    bool done = true;
    for (std::size_t i = 0; i < lo.size() && done; ++i) done = within(sw, lo[i], hi[i], eps);
    if (done) return {sw.lift(lo), sw.lift(hi)};
    if (k == cfg.max_sweeps) break;
    lo = sw.sweep(lo, Direction::Down);
    hi = sw.sweep(hi, Direction::Up);
  }
  throw SolverError(SolverError::Kind::NonConvergence, "interval iteration did not converge within the sweep cap");
}

template <typename F>
decltype(auto) with_engine(SolverConfig const& cfg, F&& f) {
  if (cfg.rounding == Rounding::None) return f(NearestDouble{});
  if (cfg.precision_bits == 53) return f(DirectedDouble{});
  return f(BitsRational{cfg.precision_bits});
}

}  // namespace detail

// Plain (optionally smoothed and directed-rounded) value iteration on the
// reduced system of the objective, from 0 (below) or from a finite inductive
// upper vector (above), until successive iterates agree to relative epsilon.
inline ValueVector value_iteration(Mdp const& m, ObjectiveSpec const& obj, From from, SolverConfig const& cfg) {
  cfg.validate();
  ReducedSystem rs = reduce_objective(m, obj);
  return detail::with_engine(cfg, [&](auto engine) { return detail::run_single(rs, cfg, engine, from); });
}

// Exact check that lower is co-inductive and upper inductive for the
// objective's Bellman operator on m.
inline bool bounds_inductive(Mdp const& m, ObjectiveSpec const& obj, BoundPair const& b) {
  Opt opt = opt_of(obj.objective);
  if (is_reward(obj.objective))
    return leq(b.lower, bellman_reward(m, opt, obj.target, b.lower)) && leq(bellman_reward(m, opt, obj.target, b.upper), b.upper);
  return leq(b.lower, bellman_reach(m, opt, obj.target, b.lower)) && leq(bellman_reach(m, opt, obj.target, b.upper), b.upper);
}

// Lower and upper value iteration in lockstep until the relative width is at
// most epsilon everywhere. The pair is re-verified in exact arithmetic.
inline BoundPair interval_iteration(Mdp const& m, ObjectiveSpec const& obj, SolverConfig const& cfg) {
  cfg.validate();
  ReducedSystem rs = reduce_objective(m, obj);
  BoundPair b = detail::with_engine(cfg, [&](auto engine) { return detail::run_interval(rs, cfg, engine); });
  if (!bounds_inductive(m, obj, b))
    throw SolverError(SolverError::Kind::FloatingPointBreakage, "floating-point breakage: bounds are not (co-)inductive");
  return b;
}

}  // namespace fpcert
