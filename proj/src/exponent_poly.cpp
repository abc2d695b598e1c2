#include "orbmorse/exponent_poly.hpp"

#include "orbmorse/errors.hpp"

namespace orbmorse {

void ExponentPolynomial::add_term(const Rational& exponent, long long coefficient) {
  if (exponent < Rational(0)) throw DomainError("polynomial exponents must be non-negative");
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.emplace(exponent, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

long long ExponentPolynomial::coefficient(const Rational& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? 0 : it->second;
}

bool ExponentPolynomial::integral_exponents() const {
  for (const auto& [e, c] : terms_)
    if (!e.is_integer()) return false;
  return true;
}

bool ExponentPolynomial::nonnegative() const {
  for (const auto& [e, c] : terms_)
    if (c < 0) return false;
  return true;
}

long long ExponentPolynomial::eval_at_minus_one() const {
  long long v = 0;
  for (const auto& [e, c] : terms_) {
    if (!e.is_integer()) throw RationalExponents("evaluation at -1 needs integral exponents");
    v += (e.num() % 2 == 0) ? c : -c;
  }
  return v;
}

ExponentPolynomial ExponentPolynomial::operator+(const ExponentPolynomial& o) const {
  ExponentPolynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

ExponentPolynomial ExponentPolynomial::operator-(const ExponentPolynomial& o) const {
  ExponentPolynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

ExponentPolynomial ExponentPolynomial::times_one_plus_t() const {
  ExponentPolynomial r;
  for (const auto& [e, c] : terms_) {
    r.add_term(e, c);
    r.add_term(e + Rational(1), c);
  }
  return r;
}

std::string ExponentPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    long long mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    bool constant_term = e.is_zero();
    if (mag != 1 || constant_term) out += std::to_string(mag);
    if (!constant_term) {
      if (mag != 1) out += "*";
      out += "t";
      if (e != Rational(1)) out += e.is_integer() ? "^" + e.str() : "^(" + e.str() + ")";
    }
  }
  return out;
}

}  // namespace orbmorse
