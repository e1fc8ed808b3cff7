#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fpcert {

// Exact rational, canonical (lowest terms, positive denominator).
using Rat = mpq_class;

struct ParseError : std::runtime_error {
  std::size_t line;
  std::size_t column;
  ParseError(std::string const& msg, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg : msg),
        line(line),
        column(column) {}
};

// Accepts "n", "n/d" and decimal "a.b" forms.
inline Rat parse_rat(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational");
  auto dot = s.find('.');
  Rat r;
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos) throw ParseError("malformed rational '" + s + "'");
    std::string intPart = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool neg = !intPart.empty() && intPart[0] == '-';
    if (neg) intPart.erase(0, 1);
    if (intPart.empty()) intPart = "0";
    for (char c : intPart + frac)
      if (c < '0' || c > '9') throw ParseError("malformed rational '" + s + "'");
    mpz_class num(intPart + frac, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    r = Rat(num, den);
    r.canonicalize();
    if (neg) r = -r;
    return r;
  }
  auto slash = s.find('/');
  auto digits = [&](std::string const& d, bool allowSign) {
    if (d.empty()) return false;
    std::size_t i = (allowSign && d[0] == '-') ? 1 : 0;
    if (i == d.size()) return false;
    for (; i < d.size(); ++i)
      if (d[i] < '0' || d[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!digits(s, true)) throw ParseError("malformed rational '" + s + "'");
    return Rat(mpz_class(s, 10));
  }
  std::string n = s.substr(0, slash), d = s.substr(slash + 1);
  if (!digits(n, true) || !digits(d, false)) throw ParseError("malformed rational '" + s + "'");
  mpz_class den(d, 10);
  if (den == 0) throw ParseError("zero denominator in '" + s + "'");
  r = Rat(mpz_class(n, 10), den);
  r.canonicalize();
  return r;
}

inline std::string to_string(Rat const& r) {
  return r.get_str();
}

// Finite non-negative rational or +infinity.
class ExtValue {
 public:
  ExtValue() = default;
  ExtValue(Rat v) : value_(std::move(v)) {}
  ExtValue(long v) : value_(v) {}
  ExtValue(int v) : value_(v) {}

  static ExtValue infinity() {
    ExtValue e;
    e.inf_ = true;
    return e;
  }

  bool is_inf() const { return inf_; }
  bool is_finite() const { return !inf_; }
  // Only meaningful when finite.
  Rat const& value() const { return value_; }

  friend ExtValue operator+(ExtValue const& a, ExtValue const& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtValue(Rat(a.value_ + b.value_));
  }

  // p * inf = inf for p > 0, 0 * inf = 0.
  friend ExtValue operator*(Rat const& p, ExtValue const& a) {
    if (a.inf_) return sgn(p) == 0 ? ExtValue(0) : infinity();
    return ExtValue(Rat(p * a.value_));
  }

  friend bool operator==(ExtValue const& a, ExtValue const& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.value_ == b.value_;
  }

  friend std::strong_ordering operator<=>(ExtValue const& a, ExtValue const& b) {
    if (a.inf_ && b.inf_) return std::strong_ordering::equal;
    if (a.inf_) return std::strong_ordering::greater;
    if (b.inf_) return std::strong_ordering::less;
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  bool inf_ = false;
  Rat value_ = 0;
};

inline std::string to_string(ExtValue const& v) {
  return v.is_inf() ? std::string("inf") : to_string(v.value());
}

inline std::ostream& operator<<(std::ostream& os, ExtValue const& v) {
  return os << to_string(v);
}

inline ExtValue parse_ext_value(std::string_view text) {
  if (text == "inf") return ExtValue::infinity();
  Rat r = parse_rat(text);
  if (sgn(r) < 0) throw ParseError("negative value '" + std::string(text) + "'");
  return ExtValue(r);
}

// Natural number or +infinity; used for ranks.
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr ExtNat(std::uint64_t n) : n_(n) {}

  static constexpr ExtNat infinity() {
    ExtNat e;
    e.n_ = kInf;
    return e;
  }

  constexpr bool is_inf() const { return n_ == kInf; }
  constexpr bool is_finite() const { return n_ != kInf; }
  constexpr std::uint64_t value() const { return n_; }

  // 1 + inf = inf.
  constexpr ExtNat succ() const { return is_inf() ? *this : ExtNat(n_ + 1); }

  friend constexpr ExtNat operator+(ExtNat a, ExtNat b) {
    if (a.is_inf() || b.is_inf()) return infinity();
    return ExtNat(a.n_ + b.n_);
  }

  friend constexpr bool operator==(ExtNat, ExtNat) = default;
  friend constexpr auto operator<=>(ExtNat, ExtNat) = default;

 private:
  static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t n_ = 0;
};

inline std::string to_string(ExtNat n) {
  return n.is_inf() ? std::string("inf") : std::to_string(n.value());
}

inline std::ostream& operator<<(std::ostream& os, ExtNat n) {
  return os << to_string(n);
}

inline ExtNat parse_ext_nat(std::string_view text) {
  if (text == "inf") return ExtNat::infinity();
  if (text.empty()) throw ParseError("empty rank");
  std::uint64_t v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw ParseError("malformed rank '" + std::string(text) + "'");
    if (v > (std::numeric_limits<std::uint64_t>::max() - 10) / 10) throw ParseError("rank too large");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return ExtNat(v);
}

}  // namespace fpcert
