#include "orbmorse/model.hpp"

#include <cmath>

#include "orbmorse/errors.hpp"

namespace orbmorse {

double Tolerances::hessian_zero_tol(double max_abs_eigenvalue) const {
  double floor = 10.0 * std::sqrt(newton_tol);
  return std::max(hessian_zero_rel * max_abs_eigenvalue, floor);
}

QuotientModel::QuotientModel(std::shared_ptr<const FiniteActionGroup> group, Expression function,
                             std::optional<ComplexStructure> J, Tolerances tol, SeedPlan seeds)
    : group_(std::move(group)),
      function_(std::move(function)),
      complex_structure_(std::move(J)),
      tolerances_(tol),
      seeds_(seeds) {
  if (function_.dim() != group_->dim())
    throw FileFormatError("function dimension does not match chart dimension");

  InvarianceReport inv =
      check_invariance(function_, *group_, tolerances_.invariance_samples,
                       tolerances_.invariance_tol);
  if (!inv.invariant)
    throw DomainError("function is not invariant under generator " +
                      std::to_string(inv.worst_generator) + ", violation " +
                      std::to_string(inv.worst));
  if (lattice()) {
    InvarianceReport per = check_lattice_invariance(function_, tolerances_.invariance_samples,
                                                    tolerances_.invariance_tol);
    if (!per.invariant)
      throw DomainError("function is not periodic in coordinate " +
                        std::to_string(per.worst_generator + 1) + ", violation " +
                        std::to_string(per.worst));
  }

  if (complex_structure_) {
    complex_structure_->validate();
    if (complex_structure_->dim() != dim())
      throw FileFormatError("complex structure dimension does not match chart");
    for (int i = 0; i < group_->order(); ++i) {
      const Eigen::MatrixXd& L = group_->element(i).linear;
      if ((L * complex_structure_->J - complex_structure_->J * L).cwiseAbs().maxCoeff() > 1e-9)
        throw ActionNotComplexLinear("group element " + std::to_string(i) +
                                     " does not commute with the complex structure");
    }
  }
}

Eigen::VectorXd QuotientModel::wrap(Eigen::VectorXd x) const {
  if (lattice()) {
    for (int i = 0; i < x.size(); ++i) {
      x[i] -= std::floor(x[i]);
      if (x[i] >= 1.0 - 1e-12) x[i] = 0.0;
    }
  }
  return x;
}

double QuotientModel::distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  Eigen::VectorXd d = a - b;
  if (lattice())
    for (int i = 0; i < d.size(); ++i) d[i] -= std::round(d[i]);
  return d.norm();
}

}  // namespace orbmorse
