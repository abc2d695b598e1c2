#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>

#include "orbmorse/expression.hpp"
#include "orbmorse/group.hpp"
#include "orbmorse/representation.hpp"

namespace orbmorse {

struct Tolerances {
  double newton_tol = 1e-9;
  // Degeneracy threshold is hessian_zero_rel * max |eigenvalue|, floored at
  // 10*sqrt(newton_tol) so a vanishing Hessian is always flagged.
  double hessian_zero_rel = 1e-6;
  double orbit_tol = 1e-6;
  double invariance_tol = 1e-8;
  int invariance_samples = 64;

  double hessian_zero_tol(double max_abs_eigenvalue) const;
};

struct SeedPlan {
  int grid = 4;
  int random = 64;
  unsigned long long rng_seed = 1;
};

// A chart with a finite group action and an invariant function on it. When
// the lattice flag is set coordinates are periodic with period 1 and all
// distances are taken in the flat torus metric.
class QuotientModel {
 public:
  QuotientModel(std::shared_ptr<const FiniteActionGroup> group, Expression function,
                std::optional<ComplexStructure> J = std::nullopt, Tolerances tol = {},
                SeedPlan seeds = {});

  int dim() const { return group_->dim(); }
  bool lattice() const { return group_->lattice(); }
  const FiniteActionGroup& group() const { return *group_; }
  const std::shared_ptr<const FiniteActionGroup>& group_ptr() const { return group_; }
  const Expression& function() const { return function_; }
  const std::optional<ComplexStructure>& complex_structure() const { return complex_structure_; }
  const Tolerances& tolerances() const { return tolerances_; }
  const SeedPlan& seeds() const { return seeds_; }

  // Componentwise representative in [0,1)^n when the lattice is set.
  Eigen::VectorXd wrap(Eigen::VectorXd x) const;

  // Euclidean (torus when lattice) distance between chart points.
  double distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

 private:
  std::shared_ptr<const FiniteActionGroup> group_;
  Expression function_;
  std::optional<ComplexStructure> complex_structure_;
  Tolerances tolerances_;
  SeedPlan seeds_;
};

}  // namespace orbmorse
