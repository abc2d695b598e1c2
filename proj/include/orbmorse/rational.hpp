#pragma once

#include <cstdint>
#include <string>

#include "orbmorse/errors.hpp"

namespace orbmorse {

/// Exact rational number on 64-bit numerator / denominator, always reduced,
/// denominator > 0.  Arithmetic uses 128-bit intermediates and throws on
/// overflow of the reduced result.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(long long n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d);

  /// Parses "p", "-p" or "p/q".  Does not accept decimals.
  static Rational parse(const std::string& text);

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  long long floor() const;
  /// Fractional part in [0, 1).
  Rational frac() const;

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// "p" when integral, "p/q" otherwise.
  std::string str() const;

  Rational operator-() const { return Rational(-num_, den_); }
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

 private:
  static Rational from_i128(__int128 n, __int128 d);

  long long num_ = 0;
  long long den_ = 1;
};

/// Nearest rational with the given denominator; throws PhaseNotRational when
/// `x` is farther than `tol` from every k/denominator.
Rational snap_to_denominator(double x, long long denominator, double tol);

}  // namespace orbmorse
