#pragma once

#include "fpcert/io.hpp"

#include <initializer_list>
#include <random>
#include <string>

namespace fpcert::testing {

inline ValueVector vals(std::initializer_list<char const*> xs) {
  ValueVector v;
  for (auto x : xs) v.push_back(parse_ext_value(x));
  return v;
}

inline RankVector ranks(std::initializer_list<char const*> xs) {
  RankVector v;
  for (auto x : xs) v.push_back(parse_ext_nat(x));
  return v;
}

inline StateSet states(std::size_t n, std::initializer_list<State> xs) {
  StateSet s(n, false);
  for (auto x : xs) s[x] = true;
  return s;
}

inline Rat q(char const* s) { return parse_rat(s); }

inline Rat frac(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// z=0, s=1, t=2; action 0 stays or spreads, action 1 exits to t.
inline Mdp loop_or_exit() {
  return parse_model(R"(mdp 3
state 0 z
state 1 s
state 2 t
label target 2
0 0 -> 0 1
0 1 -> 2 1
1 0 -> 0 1/3, 1 1/3, 2 1/3
1 1 -> 2 1
2 0 -> 2 1
)");
}

// s=0, t=1; s loops with 1/2, rew(s)=1.
inline Mdp reward_loop() {
  return parse_model(R"(mdp 2
state 0 s
state 1 t
label target 1
reward 0 1
0 0 -> 0 1/2, 1 1/2
1 0 -> 1 1
)");
}

// s0, s1, s2; alpha = action 0, beta = action 1; target s2.
inline Mdp spurious_fixed_point() {
  return parse_model(R"(mdp 3
label target 2
0 0 -> 0 1
0 1 -> 1 1/2, 2 1/2
1 0 -> 1 1
2 0 -> 2 1
)");
}

// s0, s1, s2; rew(s1)=100; s0 loops (alpha) or moves to s1 (beta).
inline Mdp costly_loop() {
  return parse_model(R"(mdp 3
label target 2
reward 1 100
0 0 -> 0 1
0 1 -> 1 1
1 0 -> 2 1
2 0 -> 2 1
)");
}

struct RandomParams {
  std::size_t max_states = 8;
  std::size_t max_actions = 3;
  std::size_t max_succ = 3;
  unsigned max_den = 10;
  double target_prob = 0.25;
  double reward_prob = 0.5;
  double self_loop_prob = 0.3;
};

// Random MDP with rational probabilities of denominator <= max_den, a random
// "target" label and random rewards.
inline Mdp random_mdp(std::mt19937_64& rng, RandomParams const& p = {}) {
  auto uni = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  auto coin = [&](double prob) { return std::bernoulli_distribution(prob)(rng); };
  std::size_t n = uni(1, p.max_states);
  Mdp m(n);
  StateSet target(n, false);
  for (State s = 0; s < n; ++s) {
    target[s] = coin(p.target_prob);
    if (coin(p.reward_prob)) m.set_reward(s, frac(static_cast<long>(uni(1, 10)), static_cast<long>(uni(1, p.max_den))));
    std::size_t acts = uni(1, p.max_actions);
    for (std::size_t a = 0; a < acts; ++a) {
      std::size_t k = uni(1, std::min(n, p.max_succ));
      std::vector<State> succ;
      if (coin(p.self_loop_prob)) succ.push_back(s);
      while (succ.size() < k) {
        State t = uni(0, n - 1);
        if (std::find(succ.begin(), succ.end(), t) == succ.end()) succ.push_back(t);
      }
      unsigned den = static_cast<unsigned>(uni(k, std::max<std::size_t>(k, p.max_den)));
      // Split den into k positive parts.
      std::vector<unsigned> parts(k, 1);
      for (unsigned left = den - static_cast<unsigned>(k); left > 0; --left) ++parts[uni(0, k - 1)];
      Distribution d;
      for (std::size_t i = 0; i < k; ++i) {
        d.push_back({succ[i], frac(parts[i], den)});
      }
      m.add_action(s, std::move(d));
    }
  }
  m.set_label("target", target);
  validate_mdp(m);
  return m;
}

}  // namespace fpcert::testing
