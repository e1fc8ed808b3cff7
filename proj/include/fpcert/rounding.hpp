#pragma once

#include "fpcert/solver_types.hpp"

#include <cfloat>
#include <cmath>

namespace fpcert {

// Nearest binary rational with a significand of at most `bits` bits that does
// not exceed (Down) or is not below (Up) v. Requires v >= 0.
inline Rat round_directed(Rat const& v, Direction dir, unsigned bits) {
  if (sgn(v) == 0) return v;
  mpz_class const& num = v.get_num();
  mpz_class const& den = v.get_den();
  // e = floor(log2 v), located from bit lengths and corrected by one step.
  long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) - static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  auto pow2 = [](long k) {
    Rat p(1);
    if (k >= 0)
      mpq_mul_2exp(p.get_mpq_t(), p.get_mpq_t(), static_cast<unsigned long>(k));
    else
      mpq_div_2exp(p.get_mpq_t(), p.get_mpq_t(), static_cast<unsigned long>(-k));
    return p;
  };
  if (v < pow2(e)) --e;
  // Scale so the significand lies in [2^(bits-1), 2^bits).
  long shift = static_cast<long>(bits) - 1 - e;
  Rat scaled = v * pow2(shift);
  mpz_class q;
  if (dir == Direction::Down)
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  else
    mpz_cdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rat out = Rat(q) * pow2(-shift);
  out.canonicalize();
  return out;
}

// Value-iteration arithmetic policies. Each provides conversion from exact
// rationals, addition and multiplication under a rounding direction, and
// exact conversion back. Values handled here are finite and non-negative.

// Binary64 with software directed rounding: the exact error of each
// operation (TwoSum, FMA) decides whether to step one ulp.
struct DirectedDouble {
  using Value = double;

  static double from(Rat const& v, Direction dir) { return round_directed(v, dir, 53).get_d(); }
  static Rat to_rat(double v) { return Rat(v); }

  static double adjust(double r, double err, Direction dir) {
    if (dir == Direction::Down) return err < 0 ? std::max(0.0, std::nextafter(r, -HUGE_VAL)) : r;
    return err > 0 ? std::nextafter(r, HUGE_VAL) : r;
  }
  static double add(double a, double b, Direction dir) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return adjust(s, err, dir);
  }
  static double mul(double a, double b, Direction dir) {
    double p = a * b;
    if (a == 0 || b == 0) return 0;
    if (std::fabs(p) < DBL_MIN * 0x1p54) {
      // Near the subnormal range the FMA residual may be inexact; step unconditionally.
      return dir == Direction::Down ? std::max(0.0, std::nextafter(p, -HUGE_VAL)) : std::nextafter(p, HUGE_VAL);
    }
    return adjust(p, std::fma(a, b, -p), dir);
  }
};

// Binary64 with the hardware default rounding (to nearest). No direction
// guarantee; used for the rounding=none variant.
struct NearestDouble {
  using Value = double;

  static double from(Rat const& v, Direction) {
    Rat lo = round_directed(v, Direction::Down, 53), hi = round_directed(v, Direction::Up, 53);
    return (v - lo <= hi - v ? lo : hi).get_d();
  }
  static Rat to_rat(double v) { return Rat(v); }
  static double add(double a, double b, Direction) { return a + b; }
  static double mul(double a, double b, Direction) { return a * b; }
};

// Exact rationals rounded to `bits` after every operation; for precisions
// other than binary64.
struct BitsRational {
  using Value = Rat;

  unsigned bits = 53;

  Rat from(Rat const& v, Direction dir) const { return round_directed(v, dir, bits); }
  static Rat to_rat(Rat const& v) { return v; }
  Rat add(Rat const& a, Rat const& b, Direction dir) const { return round_directed(a + b, dir, bits); }
  Rat mul(Rat const& a, Rat const& b, Direction dir) const { return round_directed(a * b, dir, bits); }
};

}  // namespace fpcert
