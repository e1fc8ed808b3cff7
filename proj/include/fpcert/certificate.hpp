#pragma once

#include "fpcert/mdp.hpp"

#include <map>
#include <optional>
#include <string>

namespace fpcert {

enum class Objective { Pmin, Pmax, Emin, Emax };
enum class Semantics { Inf, Rho };
enum class Bound { Lower, Upper, Both };

inline bool is_reward(Objective o) { return o == Objective::Emin || o == Objective::Emax; }
inline Opt opt_of(Objective o) { return (o == Objective::Pmin || o == Objective::Emin) ? Opt::Min : Opt::Max; }

inline char const* to_string(Objective o) {
  switch (o) {
    case Objective::Pmin: return "Pmin";
    case Objective::Pmax: return "Pmax";
    case Objective::Emin: return "Emin";
    case Objective::Emax: return "Emax";
  }
  return "";
}
inline char const* to_string(Semantics s) { return s == Semantics::Inf ? "inf" : "rho"; }
inline char const* to_string(Bound b) { return b == Bound::Lower ? "lower" : b == Bound::Upper ? "upper" : "both"; }

struct Query {
  Objective objective = Objective::Pmin;
  Semantics semantics = Semantics::Inf;  // E objectives only
  std::string target_label = "target";
  Bound bound = Bound::Both;
  Rat epsilon = Rat(1, 1000000);

  bool operator==(Query const&) const = default;
};

// Which optional fields a certificate for a proposition carries.
struct FieldPattern {
  bool r = false;
  bool r2 = false;
  bool tin = false;
  bool sigma_allowed = false;
  bool sigma_required = false;
};

inline FieldPattern field_pattern(Objective obj, Semantics sem, Bound bound) {
  FieldPattern p;
  bool lower = bound == Bound::Lower;
  Opt opt = opt_of(obj);
  if (!is_reward(obj)) {
    if (lower) {
      p.r = true;
      p.sigma_allowed = opt == Opt::Max;
    }
    return p;
  }
  if (sem == Semantics::Inf) {
    if (lower || opt == Opt::Max) p.r = true;
    if (!lower && opt == Opt::Min) {
      p.r = true;
      p.sigma_allowed = true;
    }
    return p;
  }
  if (lower) {
    p.r = p.r2 = p.tin = true;
    p.sigma_allowed = opt == Opt::Max;
  }
  return p;
}

struct Certificate {
  Query query;  // bound is Lower or Upper
  ValueVector x;
  std::optional<RankVector> r;
  std::optional<RankVector> r2;
  std::optional<Strategy> sigma;
  std::optional<StateSet> tin;
  std::map<std::string, std::string> meta;

  bool operator==(Certificate const&) const = default;
};

struct Failure {
  std::string condition;
  State state;
  std::string lhs;
  std::string rhs;
};

struct Verdict {
  bool valid = true;
  std::vector<Failure> failures;  // first kMaxFailures only
  std::size_t total_failures = 0;

  static constexpr std::size_t kMaxFailures = 32;

  void fail(std::string condition, State s, std::string lhs, std::string rhs) {
    valid = false;
    ++total_failures;
    if (failures.size() < kMaxFailures) failures.push_back({std::move(condition), s, std::move(lhs), std::move(rhs)});
  }
  void merge(Verdict const& other) {
    for (auto const& f : other.failures) fail(f.condition, f.state, f.lhs, f.rhs);
    total_failures += other.total_failures - other.failures.size();
    valid = valid && other.valid;
  }
};

struct CertificateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Throws CertificateError if the field presence does not match the query or
// the dimensions do not match the model.
inline void validate_certificate_shape(Certificate const& c, std::size_t numStates) {
  auto const& q = c.query;
  if (q.bound == Bound::Both) throw CertificateError("certificate bound must be lower or upper");
  FieldPattern p = field_pattern(q.objective, q.semantics, q.bound);
  auto presence = [&](bool has, bool want, char const* name) {
    if (has != want)
      throw CertificateError(std::string("field-presence mismatch: '") + name + (has ? "' not expected" : "' missing") +
                             " for this query kind");
  };
  presence(c.r.has_value(), p.r, "r");
  presence(c.r2.has_value(), p.r2, "r2");
  presence(c.tin.has_value(), p.tin, "tin");
  if (c.sigma && !p.sigma_allowed) throw CertificateError("field-presence mismatch: 'sigma' not expected for this query kind");
  auto dim = [&](std::size_t size) {
    if (size != numStates) throw CertificateError("dimension mismatch");
  };
  dim(c.x.size());
  if (c.r) dim(c.r->size());
  if (c.r2) dim(c.r2->size());
  if (c.sigma) dim(c.sigma->size());
  if (c.tin) dim(c.tin->size());
  if (!is_reward(q.objective))
    for (auto const& v : c.x)
      if (v > ExtValue(1)) throw CertificateError("probability out of range");
}

}  // namespace fpcert
