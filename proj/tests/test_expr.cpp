#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "orbmorse/errors.hpp"
#include "orbmorse/expression.hpp"
#include "orbmorse/group.hpp"

using orbmorse::Expression;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Independent derivative oracle: central finite differences on eval().
Eigen::VectorXd fd_gradient(const Expression& f, const Eigen::VectorXd& x, double h = 1e-5) {
  Eigen::VectorXd g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f.eval(xp) - f.eval(xm)) / (2 * h);
  }
  return g;
}

Eigen::MatrixXd fd_hessian(const Expression& f, const Eigen::VectorXd& x, double h = 1e-4) {
  Eigen::MatrixXd H(x.size(), x.size());
  for (int i = 0; i < x.size(); ++i)
    for (int j = 0; j < x.size(); ++j) {
      Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[i] += h; xpp[j] += h;
      xpm[i] += h; xpm[j] -= h;
      xmp[i] -= h; xmp[j] += h;
      xmm[i] -= h; xmm[j] -= h;
      H(i, j) = (f.eval(xpp) - f.eval(xpm) - f.eval(xmp) + f.eval(xmm)) / (4 * h * h);
    }
  return H;
}

}  // namespace

TEST_CASE("evaluation of arithmetic and builtins") {
  Eigen::VectorXd x(2);
  x << 0.3, -1.25;
  CHECK(Expression::parse("x1 + 2*x2", 2).eval(x) == doctest::Approx(0.3 - 2.5));
  CHECK(Expression::parse("x1^2 - x2^3", 2).eval(x) == doctest::Approx(0.09 + 1.953125));
  CHECK(Expression::parse("sin(pi*x1)", 2).eval(x) == doctest::Approx(std::sin(kPi * 0.3)));
  CHECK(Expression::parse("exp(x1)/sqrt(2)", 2).eval(x) ==
        doctest::Approx(std::exp(0.3) / std::sqrt(2.0)));
  CHECK(Expression::parse("2^(-2)", 1).eval(Eigen::VectorXd::Zero(1)) == doctest::Approx(0.25));
  CHECK(Expression::parse("-x1^2", 1).eval(Eigen::VectorXd::Ones(1)) == doctest::Approx(-1.0));
  // Left associativity: 8/4/2 = 1, 2-3-4 = -5.
  CHECK(Expression::parse("8/4/2", 1).eval(Eigen::VectorXd::Zero(1)) == doctest::Approx(1.0));
  CHECK(Expression::parse("2-3-4", 1).eval(Eigen::VectorXd::Zero(1)) == doctest::Approx(-5.0));
}

TEST_CASE("gradient and hessian match finite differences") {
  const std::vector<std::string> functions = {
      "cos(2*pi*x1) + cos(2*pi*x2)",
      "x1^2*x2 - sin(x1*x2) + exp(x2/2)",
      "sqrt(1 + x1^2 + x2^2)",
      "(x1 - x2)^3 / (2 + cos(x1))",
  };
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (const std::string& text : functions) {
    Expression f = Expression::parse(text, 2);
    for (int trial = 0; trial < 25; ++trial) {
      Eigen::VectorXd x(2);
      x << unif(rng), unif(rng);
      Eigen::VectorXd g = f.gradient(x);
      Eigen::MatrixXd H = f.hessian(x);
      CHECK((g - fd_gradient(f, x)).cwiseAbs().maxCoeff() < 1e-6 * (1 + g.cwiseAbs().maxCoeff()));
      CHECK((H - fd_hessian(f, x)).cwiseAbs().maxCoeff() < 1e-5 * (1 + H.cwiseAbs().maxCoeff()));
      // Mixed partials are computed independently per entry, so symmetry
      // holds to rounding rather than bitwise.
      CHECK((H - H.transpose()).cwiseAbs().maxCoeff() <
            1e-13 * (1 + H.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("closed-form derivatives") {
  Expression quad = Expression::parse("x1^2 - x2^2", 2);
  Eigen::VectorXd x(2);
  x << 0.7, -0.2;
  Eigen::MatrixXd H = quad.hessian(x);
  CHECK(H(0, 0) == doctest::Approx(2.0));
  CHECK(H(1, 1) == doctest::Approx(-2.0));
  CHECK(H(0, 1) == doctest::Approx(0.0));

  Expression kummer = Expression::parse(
      "cos(2*pi*x1) + cos(2*pi*x2) + cos(2*pi*x3) + cos(2*pi*x4)", 4);
  Eigen::VectorXd half = Eigen::VectorXd::Constant(4, 0.5);
  CHECK(kummer.gradient(half).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::MatrixXd H0 = kummer.hessian(Eigen::VectorXd::Zero(4));
  CHECK((H0 + 4 * kPi * kPi * Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-9);

  double value;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  kummer.derivatives(half, value, grad, hess);
  CHECK(value == doctest::Approx(-4.0));
  CHECK((grad - kummer.gradient(half)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((hess - kummer.hessian(half)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("printing round-trips to an equal tree") {
  const std::vector<std::string> texts = {
      "x1",
      "-x1^2",
      "x1 - (x2 - x3)",
      "(x1 + x2)*(x1 - x2)",
      "x1/x2/x3",
      "2^(-3) + x1^5",
      "sin(cos(exp(sqrt(x1^2 + 1))))",
      "cos(2*pi*x1) + cos(2*pi*x2)",
      "-(x1 + x2)",
      "1/(1 + x1^2)",
  };
  for (const std::string& text : texts) {
    Expression f = Expression::parse(text, 3);
    Expression again = Expression::parse(f.str(), 3);
    CHECK(again.equal_ast(f));
    CHECK(again.str() == f.str());
  }
}

TEST_CASE("syntax and domain errors") {
  CHECK_THROWS_AS(Expression::parse("x1 +", 1), orbmorse::SyntaxError);
  CHECK_THROWS_AS(Expression::parse("x1 x2", 2), orbmorse::SyntaxError);
  CHECK_THROWS_AS(Expression::parse("(x1", 1), orbmorse::SyntaxError);
  CHECK_THROWS_AS(Expression::parse("x1^x2", 2), orbmorse::SyntaxError);
  CHECK_THROWS_AS(Expression::parse("x1^(1/2)", 1), orbmorse::SyntaxError);
  CHECK_THROWS_AS(Expression::parse("sin x1", 1), orbmorse::SyntaxError);
  CHECK_THROWS_AS(Expression::parse("foo(x1)", 1), orbmorse::UnknownIdentifier);
  CHECK_THROWS_AS(Expression::parse("x3", 2), orbmorse::VariableOutOfRange);
  CHECK_THROWS_AS(Expression::parse("x0", 2), orbmorse::VariableOutOfRange);

  Eigen::VectorXd zero = Eigen::VectorXd::Zero(1);
  CHECK_THROWS_AS(Expression::parse("1/x1", 1).eval(zero), orbmorse::DomainError);
  CHECK_THROWS_AS(Expression::parse("sqrt(x1 - 1)", 1).eval(zero), orbmorse::DomainError);
  CHECK_THROWS_AS(Expression::parse("sqrt(x1)", 1).gradient(zero), orbmorse::DomainError);
  CHECK_THROWS_AS(Expression::parse("x1^(-1)", 1).eval(zero), orbmorse::DomainError);
  // Position is reported as a byte offset into the text.
  try {
    Expression::parse("x1 + @", 1);
    CHECK(false);
  } catch (const orbmorse::SyntaxError& e) {
    CHECK(e.position == 5);
  }
}

TEST_CASE("invariance checks") {
  // -I on the 2-torus leaves the cosine sum invariant; x1 breaks it.
  std::vector<orbmorse::Rational> lin = {orbmorse::Rational(-1), orbmorse::Rational(0),
                                         orbmorse::Rational(0), orbmorse::Rational(-1)};
  std::vector<orbmorse::Rational> trans = {orbmorse::Rational(0), orbmorse::Rational(0)};
  auto g = orbmorse::AffineIsometry::from_exact(2, lin, trans);
  auto G = orbmorse::FiniteActionGroup::generate({g}, 2, true);

  Expression good = Expression::parse("cos(2*pi*x1) + cos(2*pi*x2)", 2);
  auto report = orbmorse::check_invariance(good, G, 64, 1e-8);
  CHECK(report.invariant);
  CHECK(report.worst < 1e-10);
  CHECK(orbmorse::check_lattice_invariance(good, 64, 1e-8).invariant);

  Expression bad = Expression::parse("x1 + cos(2*pi*x2)", 2);
  auto bad_report = orbmorse::check_invariance(bad, G, 64, 1e-8);
  CHECK(!bad_report.invariant);
  CHECK(bad_report.worst > 0.1);
  CHECK(bad_report.worst_generator == 0);
  CHECK(!orbmorse::check_lattice_invariance(bad, 64, 1e-8).invariant);
}
