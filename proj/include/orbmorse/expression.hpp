#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>

#include "orbmorse/errors.hpp"

namespace orbmorse {

class FiniteActionGroup;

namespace detail {
struct ExprNode;
}

/// A smooth function of x1..xn given by a parsed expression over
/// +, -, *, /, ^(integer), sin, cos, exp, sqrt and the constant pi.
///
/// Derivatives are exact forward-mode (second-order dual numbers); the
/// Hessian is symmetric by construction.  Evaluation is pure.
class Expression {
 public:
  /// Parses `text` against a chart of dimension `dim`.  Binary operators are
  /// left-associative with precedence ^ > unary - > * / > + -; function
  /// application requires parentheses; ^ takes an integer literal exponent.
  static Expression parse(const std::string& text, int dim);

  int dim() const { return dim_; }

  /// Renders to text that parses back to a structurally equal tree.
  std::string str() const;

  bool equal_ast(const Expression& other) const;

  double eval(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;

  /// Value, gradient and Hessian in one forward sweep.
  void derivatives(const Eigen::VectorXd& x, double& value, Eigen::VectorXd& grad,
                   Eigen::MatrixXd& hess) const;

 private:
  Expression(std::shared_ptr<const detail::ExprNode> root, int dim)
      : root_(std::move(root)), dim_(dim) {}

  std::shared_ptr<const detail::ExprNode> root_;
  int dim_ = 0;
};

struct InvarianceReport {
  bool invariant = true;
  double worst = 0.0;              // max |f(g x) - f(x)| over samples and generators
  Eigen::VectorXd worst_point;
  int worst_generator = -1;        // generator index in the group's generator list
};

/// Samples |f(g x) - f(x)| at quasi-random points for every generator g of G.
/// Lattice groups are sampled on [0,1)^n, others on [-2,2]^n.
InvarianceReport check_invariance(const Expression& f, const FiniteActionGroup& G, int samples,
                                  double tol);

/// Same check for the unit translations x -> x + e_i of a torus chart.
InvarianceReport check_lattice_invariance(const Expression& f, int samples, double tol);

}  // namespace orbmorse
