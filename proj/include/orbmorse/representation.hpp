#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "orbmorse/group.hpp"
#include "orbmorse/rational.hpp"

namespace orbmorse {

// Orthogonal complex structure: J^2 = -I, J^T J = I.
struct ComplexStructure {
  Eigen::MatrixXd J;

  int dim() const { return static_cast<int>(J.rows()); }
  void validate(double tol = 1e-9) const;

  // Block-diagonal rotation by pi/2 on consecutive coordinate pairs; n even.
  static ComplexStructure standard(int n);
};

// Orthogonal representation of a finite group on a subspace W of R^n,
// given by an orthonormal basis of W (columns) and the k x k matrix of each
// group element's restriction to W.
class RealRepresentation {
 public:
  RealRepresentation() = default;

  // Action of the linear parts on the whole chart: basis = identity.
  static RealRepresentation tangent(std::shared_ptr<const FiniteActionGroup> G);

  // Restriction of the linear parts to span(basis); the subspace must be
  // invariant under every element (SubspaceNotInvariant otherwise).
  static RealRepresentation on_subspace(std::shared_ptr<const FiniteActionGroup> G,
                                        Eigen::MatrixXd basis, double tol = 1e-6);

  // Representation given directly by one k x k matrix per group generator,
  // extended to all elements along generator words. Validates orthogonality
  // of the generator matrices and multiplicativity of the extension.
  static RealRepresentation from_action(std::shared_ptr<const FiniteActionGroup> G, int k,
                                        const std::vector<Eigen::MatrixXd>& generator_action,
                                        double tol = 1e-6);

  const FiniteActionGroup& group() const { return *group_; }
  const std::shared_ptr<const FiniteActionGroup>& group_ptr() const { return group_; }
  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Eigen::MatrixXd& basis() const { return basis_; }
  const Eigen::MatrixXd& action(int element) const { return action_[element]; }

 private:
  std::shared_ptr<const FiniteActionGroup> group_;
  Eigen::MatrixXd basis_;
  std::vector<Eigen::MatrixXd> action_;

  friend RealRepresentation fixed_subspace(const RealRepresentation&, int);
};

// Representation of C_G(g) on ker(action(g) - I), carried inside the same
// ambient space. Basis columns are orthonormal (Reynolds projector over <g>).
RealRepresentation fixed_subspace(const RealRepresentation& rep, int g);

// det(action(h)) > 0 for every h; vacuously true in dimension 0.
bool is_orientation_preserving(const RealRepresentation& rep);

// Sum of the eigenphases in [0,1) of g acting complex-linearly on the
// representation subspace, exact with denominator dividing ord(g).
// Throws ActionNotComplexLinear when the subspace is not J-invariant or the
// action fails to commute with J; PhaseNotRational when an eigenphase does
// not snap to k/ord(g) within tolerance.
Rational age(int g, const ComplexStructure& J, const RealRepresentation& rep,
             double tol = 1e-6);

// Trace of the action per conjugacy class, in conjugacy_classes() order.
Eigen::VectorXd character_of(const RealRepresentation& rep);

// Characters equal within tol; the working surrogate for "same isomorphism
// class". Both representations must share a group.
bool same_character(const RealRepresentation& a, const RealRepresentation& b, double tol = 1e-6);

}  // namespace orbmorse
