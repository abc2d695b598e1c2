#include "orbmorse/inequalities.hpp"

#include <algorithm>

#include "orbmorse/errors.hpp"

namespace orbmorse {

InequalityReport check_inequality(const ExponentPolynomial& M, const ExponentPolynomial& P) {
  InequalityReport report;
  report.morse = M;
  report.poincare = P;
  if (M.integral_exponents() && P.integral_exponents())
    report.euler_check = M.eval_at_minus_one() == P.eval_at_minus_one();

  ExponentPolynomial D = M - P;

  // coefficients d_k of each fractional class, k = floor(exponent)
  std::map<Rational, std::map<long long, long long>> classes;
  for (const auto& [e, c] : D.terms()) classes[e.frac()][e.floor()] = c;

  ExponentPolynomial R;
  bool consistent = true;
  for (const auto& [base, coeffs] : classes) {
    long long K = coeffs.rbegin()->first;
    std::vector<long long> d(static_cast<std::size_t>(K) + 1, 0);
    for (const auto& [k, c] : coeffs) d[static_cast<std::size_t>(k)] = c;

    // d = (1+t) q requires q_{K-1} = d_K and q_{k-1} = d_k - q_k downward.
    std::vector<long long> q(static_cast<std::size_t>(K), 0);
    long long carry = 0;
    for (long long k = K; k >= 1; --k) {
      carry = d[static_cast<std::size_t>(k)] - carry;
      q[static_cast<std::size_t>(k) - 1] = carry;
    }
    long long rem = d[0] - (K >= 1 ? q[0] : 0);
    if (rem != 0) consistent = false;
    for (long long c : q)
      if (c < 0) consistent = false;
    for (long long k = 0; k < K; ++k)
      R.add_term(base + Rational(k), q[static_cast<std::size_t>(k)]);
  }

  report.consistent = consistent;
  if (consistent) report.remainder = std::move(R);
  return report;
}

bool is_lacunary(const ExponentPolynomial& M) {
  for (const auto& [e, c] : M.terms())
    if (M.coefficient(e + Rational(1)) != 0) return false;
  return true;
}

std::vector<long long> betti_from_lacunary(const ExponentPolynomial& M) {
  if (!is_lacunary(M)) throw NotLacunary("polynomial has consecutive powers of t");
  if (!M.integral_exponents())
    throw RationalExponents("integer grading requires integral exponents");
  std::vector<long long> betti;
  for (const auto& [e, c] : M.terms()) {
    std::size_t deg = static_cast<std::size_t>(e.num());
    if (betti.size() <= deg) betti.resize(deg + 1, 0);
    betti[deg] = c;
  }
  return betti;
}

std::map<int, long long> cell_rank(int ind_dim, bool orientable) {
  std::map<int, long long> r;
  if (orientable) r[ind_dim] = 1;
  return r;
}

std::map<int, long long> resolved_cell_rank(int v_dim) {
  if (v_dim < 0 || v_dim > 4) throw DomainError("resolved cell rank defined for 0 <= dim <= 4");
  std::map<int, long long> r;
  r[2] = 1;
  if (v_dim % 2 == 0) r[v_dim] += 1;
  return r;
}

std::vector<long long> assemble_even_ranks(const std::vector<ResolutionLevel>& levels) {
  std::vector<long long> total;
  for (const ResolutionLevel& level : levels) {
    for (const auto& [deg, rank] : level.relative_ranks) {
      if (deg % 2 != 0)
        throw OddDegreePresent("level " + std::to_string(level.level) +
                               " has a rank in odd degree " + std::to_string(deg));
      if (deg < 0) throw DomainError("negative homological degree");
      if (total.size() <= static_cast<std::size_t>(deg)) total.resize(deg + 1, 0);
      total[static_cast<std::size_t>(deg)] += rank;
    }
  }
  return total;
}

}  // namespace orbmorse
