#pragma once

#include "fpcert/certificate.hpp"

namespace fpcert {

enum class Rounding { None, Safe };
enum class Method { PI, II };
enum class Direction { Down, Up };

struct SolverConfig {
  Rat epsilon = Rat(1, 1000000);
  Rat gamma = Rat(1, 20);
  Rounding rounding = Rounding::Safe;
  unsigned precision_bits = 53;
  Method method = Method::PI;
  std::uint64_t max_sweeps = 1000000;

  void validate() const {
    if (sgn(epsilon) <= 0) throw std::invalid_argument("epsilon must be positive");
    if (sgn(gamma) < 0 || gamma >= 1) throw std::invalid_argument("gamma must lie in [0,1)");
    if (precision_bits < 2) throw std::invalid_argument("precision_bits must be at least 2");
  }
};

// What a solver computes: optimal reachability probability or expected
// reward of `target` in direction opt.
struct ObjectiveSpec {
  Objective objective = Objective::Pmin;
  Semantics semantics = Semantics::Inf;
  StateSet target;
};

struct BoundPair {
  ValueVector lower;
  ValueVector upper;
};

struct SolverError : std::runtime_error {
  enum class Kind { NonConvergence, FloatingPointBreakage };
  Kind kind;
  SolverError(Kind kind, std::string const& msg) : std::runtime_error(msg), kind(kind) {}
};

}  // namespace fpcert
