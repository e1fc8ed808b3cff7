#pragma once

#include "fpcert/distance.hpp"

#include <algorithm>
#include <map>

namespace fpcert {

// States s with P^opt_s(<>T) = 0.
inline StateSet prob0_states(Mdp const& m, Opt opt, StateSet const& target) {
  RankVector r = fixed_point_distance(m, negate(opt), target);
  StateSet out(m.num_states());
  for (State s = 0; s < m.num_states(); ++s) out[s] = r[s].is_inf();
  return out;
}

// States s with P^opt_s(<>T) = 1.
inline StateSet prob1_states(Mdp const& m, Opt opt, StateSet const& target) {
  std::size_t n = m.num_states();
  if (opt == Opt::Min) {
    // Complement of the states that can reach prob0_min with positive
    // probability before visiting T.
    StateSet zero = prob0_states(m, Opt::Min, target);
    auto pred = m.predecessors();
    StateSet bad = zero;
    std::deque<State> queue;
    for (State s = 0; s < n; ++s)
      if (bad[s]) queue.push_back(s);
    while (!queue.empty()) {
      State u = queue.front();
      queue.pop_front();
      for (State s : pred[u])
        if (!bad[s] && !target[s]) {
          bad[s] = true;
          queue.push_back(s);
        }
    }
    StateSet out(n);
    for (State s = 0; s < n; ++s) out[s] = !bad[s];
    return out;
  }
  // Greatest fixed point of: states with an action staying in U that reaches
  // T inside U.
  StateSet u(n, true);
  for (;;) {
    StateSet reach = target;
    bool grew = true;
    while (grew) {
      grew = false;
      for (State s = 0; s < n; ++s) {
        if (reach[s] || !u[s]) continue;
        for (auto const& d : m.actions(s)) {
          bool inside = true, progress = false;
          for (auto const& t : d) {
            inside = inside && u[t.target];
            progress = progress || reach[t.target];
          }
          if (inside && progress) {
            reach[s] = true;
            grew = true;
            break;
          }
        }
      }
    }
    if (reach == u) return u;
    u = reach;
  }
}

// Strongly connected components of the graph induced by the allowed actions,
// restricted to the given states. Components are returned in reverse
// topological order.
inline std::vector<std::vector<State>> scc_decomposition(Mdp const& m, StateSet const& states, ActionFilter const& filter) {
  std::size_t n = m.num_states();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> onStack(n, false);
  std::vector<State> stack;
  std::vector<std::vector<State>> result;
  std::size_t counter = 0;

  std::vector<std::vector<State>> succ(n);
  for (State s = 0; s < n; ++s) {
    if (!states[s]) continue;
    for (auto a : filter[s])
      for (auto const& t : m.action(s, a))
        if (states[t.target]) succ[s].push_back(t.target);
  }

  struct Frame {
    State s;
    std::size_t next;
  };
  for (State root = 0; root < n; ++root) {
    if (!states[root] || index[root] != kUnvisited) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    onStack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < succ[f.s].size()) {
        State w = succ[f.s][f.next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          onStack[w] = true;
          call.push_back({w, 0});
        } else if (onStack[w]) {
          low[f.s] = std::min(low[f.s], index[w]);
        }
        continue;
      }
      State s = f.s;
      call.pop_back();
      if (!call.empty()) low[call.back().s] = std::min(low[call.back().s], low[s]);
      if (low[s] == index[s]) {
        std::vector<State> comp;
        State w;
        do {
          w = stack.back();
          stack.pop_back();
          onStack[w] = false;
          comp.push_back(w);
        } while (w != s);
        std::sort(comp.begin(), comp.end());
        result.push_back(std::move(comp));
      }
    }
  }
  return result;
}

struct Mec {
  std::vector<State> states;
  // Internal action indices, parallel to states.
  std::vector<std::vector<std::size_t>> actions;
};

// Maximal end components of the sub-MDP on `states` (all states if empty)
// using only actions whose successors stay inside `states`.
inline std::vector<Mec> mec_decomposition(Mdp const& m, StateSet states = {}) {
  std::size_t n = m.num_states();
  if (states.empty()) states.assign(n, true);
  ActionFilter filter(n);
  for (State s = 0; s < n; ++s) {
    if (!states[s]) continue;
    for (std::size_t a = 0; a < m.num_actions(s); ++a) {
      bool inside = std::all_of(m.action(s, a).begin(), m.action(s, a).end(),
                                [&](Transition const& t) { return states[t.target]; });
      if (inside) filter[s].push_back(a);
    }
  }
  StateSet alive = states;
  for (State s = 0; s < n; ++s)
    if (alive[s] && filter[s].empty()) alive[s] = false;

  for (bool changed = true; changed;) {
    changed = false;
    auto sccs = scc_decomposition(m, alive, filter);
    std::vector<std::size_t> compOf(n, static_cast<std::size_t>(-1));
    for (std::size_t c = 0; c < sccs.size(); ++c)
      for (State s : sccs[c]) compOf[s] = c;
    for (State s = 0; s < n; ++s) {
      if (!alive[s]) continue;
      auto& acts = filter[s];
      auto keep = std::remove_if(acts.begin(), acts.end(), [&](std::size_t a) {
        return std::any_of(m.action(s, a).begin(), m.action(s, a).end(),
                           [&](Transition const& t) { return !alive[t.target] || compOf[t.target] != compOf[s]; });
      });
      if (keep != acts.end()) {
        acts.erase(keep, acts.end());
        changed = true;
      }
      if (acts.empty()) {
        alive[s] = false;
        changed = true;
      }
    }
    if (!changed) {
      std::vector<Mec> result;
      for (auto const& comp : sccs) {
        Mec mec;
        for (State s : comp) {
          mec.states.push_back(s);
          mec.actions.push_back(filter[s]);
        }
        result.push_back(std::move(mec));
      }
      std::sort(result.begin(), result.end(), [](Mec const& a, Mec const& b) { return a.states.front() < b.states.front(); });
      return result;
    }
  }
  return {};
}

struct Collapse {
  Mdp quotient;
  // Original state -> quotient state.
  std::vector<State> lift;
};

// Each component becomes one state keeping only its leaving actions. A
// component without leaving actions gets a self-loop. A component is in a
// label iff one of its members is. Collapsed components get reward 0, so only
// reward-free components should be collapsed for reward objectives.
inline Collapse collapse_mecs(Mdp const& m, std::vector<Mec> const& mecs) {
  std::size_t n = m.num_states();
  constexpr State kNone = static_cast<State>(-1);
  std::vector<State> lift(n, kNone);
  std::vector<std::vector<State>> members;
  std::vector<std::size_t> mecOf(n, kNone);
  for (std::size_t i = 0; i < mecs.size(); ++i)
    for (State s : mecs[i].states) mecOf[s] = i;
  std::vector<State> mecState(mecs.size(), kNone);
  for (State s = 0; s < n; ++s) {
    if (mecOf[s] == kNone) {
      lift[s] = members.size();
      members.push_back({s});
    } else if (mecState[mecOf[s]] == kNone) {
      mecState[mecOf[s]] = members.size();
      members.push_back(mecs[mecOf[s]].states);
    }
    if (mecOf[s] != kNone) lift[s] = mecState[mecOf[s]];
  }

  Collapse c{Mdp(members.size()), lift};
  for (State q = 0; q < members.size(); ++q) {
    bool single = members[q].size() == 1 && mecOf[members[q][0]] == kNone;
    for (State s : members[q]) {
      for (std::size_t a = 0; a < m.num_actions(s); ++a) {
        if (!single) {
          auto const& internal = mecs[mecOf[s]].actions;
          auto pos = std::find(mecs[mecOf[s]].states.begin(), mecs[mecOf[s]].states.end(), s) - mecs[mecOf[s]].states.begin();
          if (std::find(internal[pos].begin(), internal[pos].end(), a) != internal[pos].end()) continue;
        }
        std::map<State, Rat> merged;
        for (auto const& t : m.action(s, a)) merged[lift[t.target]] += t.prob;
        Distribution d;
        for (auto& [target, prob] : merged) d.push_back({target, prob});
        c.quotient.add_action(q, std::move(d));
      }
    }
    if (c.quotient.num_actions(q) == 0) c.quotient.add_action(q, Distribution{{q, Rat(1)}});
    if (single) c.quotient.set_reward(q, m.reward(members[q][0]));
  }
  for (auto const& [name, set] : m.labels()) {
    StateSet qs(members.size(), false);
    for (State s = 0; s < n; ++s)
      if (set[s]) qs[lift[s]] = true;
    c.quotient.set_label(name, qs);
  }
  return c;
}

}  // namespace fpcert
