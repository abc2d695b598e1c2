#pragma once

#include <map>
#include <string>

#include "orbmorse/rational.hpp"

namespace orbmorse {

// Polynomial in t with integer coefficients and non-negative rational
// exponents. Zero coefficients are never stored.
class ExponentPolynomial {
 public:
  ExponentPolynomial() = default;

  void add_term(const Rational& exponent, long long coefficient);
  long long coefficient(const Rational& exponent) const;
  const std::map<Rational, long long>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool integral_exponents() const;
  bool nonnegative() const;

  // Value at t = -1; requires integral exponents.
  long long eval_at_minus_one() const;

  ExponentPolynomial operator+(const ExponentPolynomial& o) const;
  ExponentPolynomial operator-(const ExponentPolynomial& o) const;
  bool operator==(const ExponentPolynomial& o) const { return terms_ == o.terms_; }
  bool operator!=(const ExponentPolynomial& o) const { return !(*this == o); }

  // Product with (1 + t).
  ExponentPolynomial times_one_plus_t() const;

  // Ascending exponents: "1 + 22*t^2 + t^4", rationals as "t^(1/2)".
  std::string str() const;

 private:
  std::map<Rational, long long> terms_;
};

}  // namespace orbmorse
