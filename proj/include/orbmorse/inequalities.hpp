#pragma once

#include <map>
#include <optional>
#include <vector>

#include "orbmorse/exponent_poly.hpp"

namespace orbmorse {

struct InequalityReport {
  ExponentPolynomial morse;
  ExponentPolynomial poincare;
  // Present iff consistent: the unique R with morse = poincare + (1+t)*R and
  // all coefficients of R non-negative integers.
  std::optional<ExponentPolynomial> remainder;
  bool consistent = false;
  // morse(-1) == poincare(-1); defined only when all exponents are integral.
  std::optional<bool> euler_check;
};

// Synthetic division of M - P by (1 + t), performed independently on each
// class of exponents sharing a fractional part (the factor 1 + t only links
// exponents differing by exactly 1).
InequalityReport check_inequality(const ExponentPolynomial& M, const ExponentPolynomial& P);

// No two exponents differing by exactly 1 both carry nonzero coefficients.
bool is_lacunary(const ExponentPolynomial& M);

// Coefficients of a lacunary polynomial read off as graded dimensions,
// indexed by integer degree 0..max. Throws NotLacunary; RationalExponents
// when a non-integral exponent prevents integer grading.
std::vector<long long> betti_from_lacunary(const ExponentPolynomial& M);

// Relative homology ranks contributed between consecutive critical levels.
struct ResolutionLevel {
  int level = 0;
  std::map<int, long long> relative_ranks;
};

// Rank 1 in degree ind_dim for an orientable critical point, nothing otherwise.
std::map<int, long long> cell_rank(int ind_dim, bool orientable);

// Rank pattern after replacing an isolated quotient singularity cell by its
// resolved cell: one generator in degree 2, plus one in degree v_dim when
// v_dim is even. Requires 0 <= v_dim <= 4.
std::map<int, long long> resolved_cell_rank(int v_dim);

// Degreewise sum of relative ranks; valid because even concentration forces
// every connecting map to vanish. Throws OddDegreePresent.
std::vector<long long> assemble_even_ranks(const std::vector<ResolutionLevel>& levels);

}  // namespace orbmorse
