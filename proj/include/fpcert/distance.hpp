#pragma once

#include "fpcert/mdp.hpp"

#include <deque>

namespace fpcert {

namespace detail {

inline ActionFilter all_actions(Mdp const& m) {
  ActionFilter f(m.num_states());
  for (State s = 0; s < m.num_states(); ++s)
    for (std::size_t a = 0; a < m.num_actions(s); ++a) f[s].push_back(a);
  return f;
}

inline ExtNat min_rank(Distribution const& d, RankVector const& r) {
  ExtNat best = ExtNat::infinity();
  for (auto const& t : d) best = std::min(best, r[t.target]);
  return best;
}

// opt over the allowed actions of min successor rank; infinity if none allowed.
inline ExtNat opt_min_rank(Mdp const& m, State s, Opt opt, std::vector<std::size_t> const& allowed, RankVector const& r) {
  if (allowed.empty()) return ExtNat::infinity();
  ExtNat best = opt == Opt::Min ? ExtNat::infinity() : ExtNat(0);
  for (auto a : allowed) {
    ExtNat v = min_rank(m.action(s, a), r);
    best = opt == Opt::Min ? std::min(best, v) : std::max(best, v);
  }
  return best;
}

inline std::vector<std::vector<State>> predecessors(Mdp const& m, ActionFilter const& filter) {
  std::vector<std::vector<State>> pred(m.num_states());
  std::vector<State> lastSeen(m.num_states(), m.num_states());
  for (State s = 0; s < m.num_states(); ++s)
    for (auto a : filter[s])
      for (auto const& t : m.action(s, a))
        if (lastSeen[t.target] != s) {
          lastSeen[t.target] = s;
          pred[t.target].push_back(s);
        }
  return pred;
}

}  // namespace detail

// D(r)(s) = 0 on targets, otherwise 1 + opt_a min_{s' in post(s,a)} r(s').
// With a filter, opt ranges over the allowed actions only.
inline RankVector apply_distance_op(Mdp const& m, Opt opt, StateSet const& target, RankVector const& r,
                                    ActionFilter const* filter = nullptr) {
  ActionFilter all;
  if (!filter) {
    all = detail::all_actions(m);
    filter = &all;
  }
  RankVector out(m.num_states());
  for (State s = 0; s < m.num_states(); ++s)
    out[s] = target[s] ? ExtNat(0) : detail::opt_min_rank(m, s, opt, (*filter)[s], r).succ();
  return out;
}

// Unique fixed point of the distance operator via a breadth-first sweep from
// the targets. Finite ranks are never overwritten.
inline RankVector fixed_point_distance(Mdp const& m, Opt opt, StateSet const& target,
                                       ActionFilter const* filter = nullptr) {
  ActionFilter all;
  if (!filter) {
    all = detail::all_actions(m);
    filter = &all;
  }
  auto pred = detail::predecessors(m, *filter);
  RankVector r(m.num_states(), ExtNat::infinity());
  std::deque<State> queue;
  for (State s = 0; s < m.num_states(); ++s)
    if (target[s]) {
      r[s] = 0;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    State hat = queue.front();
    queue.pop_front();
    for (State s : pred[hat]) {
      if (r[s].is_finite()) continue;
      ExtNat tmp = detail::opt_min_rank(m, s, opt, (*filter)[s], r).succ();
      if (tmp == r[hat].succ()) {
        r[s] = tmp;
        queue.push_back(s);
      }
    }
  }
  return r;
}

}  // namespace fpcert
