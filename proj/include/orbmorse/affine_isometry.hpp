#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "orbmorse/rational.hpp"

namespace orbmorse {

// Affine map x -> linear*x + translation with orthogonal linear part.
// When the map was built from rational data, linear_exact/translation_exact
// hold the exact entries (row-major) and all group arithmetic stays exact;
// otherwise they are empty and floating-point tolerances apply.
struct AffineIsometry {
  Eigen::MatrixXd linear;
  Eigen::VectorXd translation;
  std::vector<Rational> linear_exact;
  std::vector<Rational> translation_exact;

  int dim() const { return static_cast<int>(linear.rows()); }
  bool exact() const { return !linear_exact.empty(); }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return linear * x + translation; }

  static AffineIsometry identity(int n);
  static AffineIsometry from_exact(int n, std::vector<Rational> lin, std::vector<Rational> trans);
  static AffineIsometry from_float(Eigen::MatrixXd lin, Eigen::VectorXd trans);

  // Canonical string key for exact elements; empty for float elements.
  std::string exact_key() const;
};

// Throws NotIsometry unless linear is orthogonal (exactly so for exact maps,
// within tol otherwise); throws LatticeNotPreserved when lattice is set and
// the linear part is not an integer matrix.
void validate_isometry(const AffineIsometry& g, bool lattice, double tol = 1e-9);

// Reduces the translation into [0,1)^n componentwise when lattice is set.
AffineIsometry canonicalize(AffineIsometry g, bool lattice);

// a then-after b, i.e. (a*b)(x) = a(b(x)); result canonicalized mod lattice.
AffineIsometry compose(const AffineIsometry& a, const AffineIsometry& b, bool lattice);

AffineIsometry inverse_of(const AffineIsometry& a, bool lattice);

// Equality mod lattice: exact when both operands are exact, entrywise within
// tol otherwise (translations compared against the nearest lattice vector).
bool isometry_equal(const AffineIsometry& a, const AffineIsometry& b, bool lattice,
                    double tol = 1e-9);

}  // namespace orbmorse
