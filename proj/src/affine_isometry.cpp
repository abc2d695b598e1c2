#include "orbmorse/affine_isometry.hpp"

#include <cmath>

#include "orbmorse/errors.hpp"

namespace orbmorse {

namespace {

double to_double_entry(const std::vector<Rational>& v, int i) { return v[i].to_double(); }

Eigen::MatrixXd exact_to_matrix(const std::vector<Rational>& v, int n) {
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = to_double_entry(v, r * n + c);
  return m;
}

Eigen::VectorXd exact_to_vector(const std::vector<Rational>& v, int n) {
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = v[i].to_double();
  return x;
}

double nearest_integer_distance(double x) { return std::abs(x - std::round(x)); }

}  // namespace

AffineIsometry AffineIsometry::identity(int n) {
  std::vector<Rational> lin(static_cast<std::size_t>(n) * n, Rational(0));
  for (int i = 0; i < n; ++i) lin[static_cast<std::size_t>(i) * n + i] = Rational(1);
  return from_exact(n, std::move(lin), std::vector<Rational>(n, Rational(0)));
}

AffineIsometry AffineIsometry::from_exact(int n, std::vector<Rational> lin,
                                          std::vector<Rational> trans) {
  if (static_cast<int>(lin.size()) != n * n || static_cast<int>(trans.size()) != n)
    throw FileFormatError("matrix/vector size does not match dimension");
  AffineIsometry g;
  g.linear = exact_to_matrix(lin, n);
  g.translation = exact_to_vector(trans, n);
  g.linear_exact = std::move(lin);
  g.translation_exact = std::move(trans);
  return g;
}

AffineIsometry AffineIsometry::from_float(Eigen::MatrixXd lin, Eigen::VectorXd trans) {
  if (lin.rows() != lin.cols() || lin.rows() != trans.size())
    throw FileFormatError("matrix/vector size does not match dimension");
  AffineIsometry g;
  g.linear = std::move(lin);
  g.translation = std::move(trans);
  return g;
}

std::string AffineIsometry::exact_key() const {
  if (!exact()) return {};
  std::string key;
  for (const Rational& r : linear_exact) {
    key += r.str();
    key += ',';
  }
  key += '|';
  for (const Rational& r : translation_exact) {
    key += r.str();
    key += ',';
  }
  return key;
}

void validate_isometry(const AffineIsometry& g, bool lattice, double tol) {
  const int n = g.dim();
  if (n == 0) return;
  if (g.exact()) {
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        Rational dot(0);
        for (int k = 0; k < n; ++k)
          dot = dot + g.linear_exact[static_cast<std::size_t>(k) * n + r] *
                          g.linear_exact[static_cast<std::size_t>(k) * n + c];
        if (dot != Rational(r == c ? 1 : 0))
          throw NotIsometry("linear part is not orthogonal (exact check)");
      }
    }
    if (lattice) {
      for (const Rational& e : g.linear_exact)
        if (!e.is_integer())
          throw LatticeNotPreserved("linear part has non-integer entry " + e.str());
    }
    return;
  }
  Eigen::MatrixXd gram = g.linear.transpose() * g.linear;
  double dev = (gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (dev > tol) throw NotIsometry("linear part is not orthogonal, deviation " + std::to_string(dev));
  if (lattice) {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (nearest_integer_distance(g.linear(r, c)) > tol)
          throw LatticeNotPreserved("linear part has non-integer entry at (" + std::to_string(r) +
                                    "," + std::to_string(c) + ")");
  }
}

AffineIsometry canonicalize(AffineIsometry g, bool lattice) {
  if (!lattice) return g;
  const int n = g.dim();
  if (g.exact()) {
    for (int i = 0; i < n; ++i) g.translation_exact[i] = g.translation_exact[i].frac();
    g.translation = exact_to_vector(g.translation_exact, n);
  } else {
    for (int i = 0; i < n; ++i) g.translation[i] -= std::floor(g.translation[i]);
  }
  return g;
}

AffineIsometry compose(const AffineIsometry& a, const AffineIsometry& b, bool lattice) {
  const int n = a.dim();
  AffineIsometry r;
  r.linear = a.linear * b.linear;
  r.translation = a.linear * b.translation + a.translation;
  if (a.exact() && b.exact()) {
    r.linear_exact.assign(static_cast<std::size_t>(n) * n, Rational(0));
    r.translation_exact.assign(n, Rational(0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Rational s(0);
        for (int k = 0; k < n; ++k)
          s = s + a.linear_exact[static_cast<std::size_t>(i) * n + k] *
                      b.linear_exact[static_cast<std::size_t>(k) * n + j];
        r.linear_exact[static_cast<std::size_t>(i) * n + j] = s;
      }
      Rational t = a.translation_exact[i];
      for (int k = 0; k < n; ++k)
        t = t + a.linear_exact[static_cast<std::size_t>(i) * n + k] * b.translation_exact[k];
      r.translation_exact[i] = t;
    }
    r.linear = exact_to_matrix(r.linear_exact, n);
    r.translation = exact_to_vector(r.translation_exact, n);
  }
  return canonicalize(std::move(r), lattice);
}

AffineIsometry inverse_of(const AffineIsometry& a, bool lattice) {
  const int n = a.dim();
  AffineIsometry r;
  r.linear = a.linear.transpose();
  r.translation = -(r.linear * a.translation);
  if (a.exact()) {
    r.linear_exact.assign(static_cast<std::size_t>(n) * n, Rational(0));
    r.translation_exact.assign(n, Rational(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        r.linear_exact[static_cast<std::size_t>(i) * n + j] =
            a.linear_exact[static_cast<std::size_t>(j) * n + i];
    for (int i = 0; i < n; ++i) {
      Rational t(0);
      for (int k = 0; k < n; ++k)
        t = t - r.linear_exact[static_cast<std::size_t>(i) * n + k] * a.translation_exact[k];
      r.translation_exact[i] = t;
    }
    r.linear = exact_to_matrix(r.linear_exact, n);
    r.translation = exact_to_vector(r.translation_exact, n);
  }
  return canonicalize(std::move(r), lattice);
}

bool isometry_equal(const AffineIsometry& a, const AffineIsometry& b, bool lattice, double tol) {
  const int n = a.dim();
  if (b.dim() != n) return false;
  if (a.exact() && b.exact()) {
    for (int i = 0; i < n * n; ++i)
      if (a.linear_exact[i] != b.linear_exact[i]) return false;
    for (int i = 0; i < n; ++i) {
      Rational d = a.translation_exact[i] - b.translation_exact[i];
      if (lattice ? !d.frac().is_zero() : !d.is_zero()) return false;
    }
    return true;
  }
  if (n > 0 && (a.linear - b.linear).cwiseAbs().maxCoeff() > tol) return false;
  for (int i = 0; i < n; ++i) {
    double d = a.translation[i] - b.translation[i];
    if (lattice ? nearest_integer_distance(d) > tol : std::abs(d) > tol) return false;
  }
  return true;
}

}  // namespace orbmorse
