#pragma once

#include "fpcert/rational.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpcert {

using State = std::size_t;
using StateSet = std::vector<bool>;
using ValueVector = std::vector<ExtValue>;
using RankVector = std::vector<ExtNat>;
// One action index per state.
using Strategy = std::vector<std::size_t>;
// Allowed action indices per state.
using ActionFilter = std::vector<std::vector<std::size_t>>;

enum class Opt { Min, Max };

inline Opt negate(Opt o) { return o == Opt::Min ? Opt::Max : Opt::Min; }
inline char const* to_string(Opt o) { return o == Opt::Min ? "min" : "max"; }

struct Transition {
  State target;
  Rat prob;

  bool operator==(Transition const&) const = default;
};

using Distribution = std::vector<Transition>;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite MDP over dense state indices. Each state owns an ordered list of
// actions, each action a sparse distribution over successors.
class Mdp {
 public:
  Mdp() = default;
  explicit Mdp(std::size_t n) : actions_(n), rewards_(n, Rat(0)), names_(n) {}

  std::size_t num_states() const { return actions_.size(); }
  std::size_t num_actions(State s) const { return actions_[s].size(); }
  std::vector<Distribution> const& actions(State s) const { return actions_[s]; }
  Distribution const& action(State s, std::size_t a) const { return actions_[s][a]; }

  std::size_t add_action(State s, Distribution d) {
    actions_[s].push_back(std::move(d));
    return actions_[s].size() - 1;
  }
  Distribution& mutable_action(State s, std::size_t a) { return actions_[s][a]; }
  void clear_actions(State s) { actions_[s].clear(); }

  Rat const& reward(State s) const { return rewards_[s]; }
  std::vector<Rat> const& rewards() const { return rewards_; }
  void set_reward(State s, Rat r) { rewards_[s] = std::move(r); }

  bool has_label(std::string const& name) const { return labels_.count(name) != 0; }
  StateSet const& label(std::string const& name) const {
    auto it = labels_.find(name);
    if (it == labels_.end()) throw std::out_of_range("unknown label '" + name + "'");
    return it->second;
  }
  std::map<std::string, StateSet> const& labels() const { return labels_; }
  void set_label(std::string const& name, StateSet states) { labels_[name] = std::move(states); }
  void add_to_label(std::string const& name, State s) {
    auto& set = labels_[name];
    set.resize(num_states(), false);
    set[s] = true;
  }

  // Display name; the index unless one was set.
  std::string state_name(State s) const { return names_[s].empty() ? std::to_string(s) : names_[s]; }
  bool has_state_name(State s) const { return !names_[s].empty(); }
  void set_state_name(State s, std::string name) { names_[s] = std::move(name); }

  bool is_dtmc() const {
    for (auto const& acts : actions_)
      if (acts.size() != 1) return false;
    return true;
  }

  // Predecessor lists; each state appears once per predecessor.
  std::vector<std::vector<State>> predecessors() const {
    std::vector<std::vector<State>> pred(num_states());
    for (State s = 0; s < num_states(); ++s) {
      std::vector<bool> seen(num_states(), false);
      for (auto const& d : actions_[s])
        for (auto const& t : d)
          if (!seen[t.target]) {
            seen[t.target] = true;
            pred[t.target].push_back(s);
          }
    }
    return pred;
  }

 private:
  std::vector<std::vector<Distribution>> actions_;
  std::vector<Rat> rewards_;
  std::map<std::string, StateSet> labels_;
  std::vector<std::string> names_;
};

inline bool operator==(Mdp const& a, Mdp const& b) {
  if (a.num_states() != b.num_states() || a.labels() != b.labels() || a.rewards() != b.rewards()) return false;
  for (State s = 0; s < a.num_states(); ++s)
    if (a.actions(s) != b.actions(s) || a.state_name(s) != b.state_name(s)) return false;
  return true;
}

inline void validate_mdp(Mdp const& m) {
  std::size_t n = m.num_states();
  for (State s = 0; s < n; ++s) {
    if (m.num_actions(s) == 0) throw ValidationError("state " + std::to_string(s) + " has no action");
    for (std::size_t a = 0; a < m.num_actions(s); ++a) {
      auto const& d = m.action(s, a);
      if (d.empty()) throw ValidationError("state " + std::to_string(s) + " action " + std::to_string(a) + " has empty distribution");
      Rat sum = 0;
      std::vector<bool> seen(n, false);
      for (auto const& t : d) {
        if (t.target >= n)
          throw ValidationError("state " + std::to_string(s) + " action " + std::to_string(a) + ": successor " + std::to_string(t.target) + " out of range");
        if (seen[t.target])
          throw ValidationError("state " + std::to_string(s) + " action " + std::to_string(a) + ": duplicate successor " + std::to_string(t.target));
        seen[t.target] = true;
        if (sgn(t.prob) <= 0 || t.prob > 1)
          throw ValidationError("state " + std::to_string(s) + " action " + std::to_string(a) + ": probability " + to_string(t.prob) + " not in (0,1]");
        sum += t.prob;
      }
      if (sum != 1)
        throw ValidationError("state " + std::to_string(s) + " action " + std::to_string(a) + ": distribution-sum mismatch, probabilities sum to " + to_string(sum));
    }
    if (sgn(m.reward(s)) < 0) throw ValidationError("state " + std::to_string(s) + " has negative reward");
  }
  for (auto const& [name, set] : m.labels())
    if (set.size() != n) throw ValidationError("label '" + name + "' has wrong dimension");
}

inline void validate_strategy(Mdp const& m, Strategy const& sigma) {
  if (sigma.size() != m.num_states()) throw ValidationError("strategy has wrong dimension");
  for (State s = 0; s < m.num_states(); ++s)
    if (sigma[s] >= m.num_actions(s))
      throw ValidationError("strategy picks action " + std::to_string(sigma[s]) + " unavailable in state " + std::to_string(s));
}

// DTMC keeping only the action chosen by sigma; labels and rewards preserved.
inline Mdp induced_dtmc(Mdp const& m, Strategy const& sigma) {
  validate_strategy(m, sigma);
  Mdp d(m.num_states());
  for (State s = 0; s < m.num_states(); ++s) {
    d.add_action(s, m.action(s, sigma[s]));
    d.set_reward(s, m.reward(s));
    if (m.has_state_name(s)) d.set_state_name(s, m.state_name(s));
  }
  for (auto const& [name, set] : m.labels()) d.set_label(name, set);
  return d;
}

// Target states become absorbing with zero reward. Objectives only look at
// path prefixes up to the first target visit, so values are unchanged.
inline Mdp absorbing_targets(Mdp const& m, StateSet const& target) {
  Mdp v(m.num_states());
  for (State s = 0; s < m.num_states(); ++s) {
    if (m.has_state_name(s)) v.set_state_name(s, m.state_name(s));
    if (target[s]) {
      v.add_action(s, Distribution{{s, Rat(1)}});
      continue;
    }
    for (auto const& d : m.actions(s)) v.add_action(s, d);
    v.set_reward(s, m.reward(s));
  }
  for (auto const& [name, set] : m.labels()) v.set_label(name, set);
  return v;
}

// Strategy on absorbing_targets(m, target) matching sigma elsewhere.
inline Strategy absorbing_strategy(Strategy sigma, StateSet const& target) {
  for (State s = 0; s < sigma.size(); ++s)
    if (target[s]) sigma[s] = 0;
  return sigma;
}

inline StateSet positive_reward_states(Mdp const& m) {
  StateSet pos(m.num_states(), false);
  for (State s = 0; s < m.num_states(); ++s) pos[s] = sgn(m.reward(s)) > 0;
  return pos;
}

inline bool has_rewards(Mdp const& m) {
  for (auto const& r : m.rewards())
    if (sgn(r) != 0) return true;
  return false;
}

}  // namespace fpcert
