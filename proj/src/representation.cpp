#include "orbmorse/representation.hpp"

#include <cmath>
#include <complex>

#include "orbmorse/errors.hpp"

namespace orbmorse {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

double invariance_residual(const Eigen::MatrixXd& L, const Eigen::MatrixXd& basis,
                           const Eigen::MatrixXd& restricted) {
  if (basis.cols() == 0) return 0.0;
  return (L * basis - basis * restricted).cwiseAbs().maxCoeff();
}

}  // namespace

void ComplexStructure::validate(double tol) const {
  const int n = dim();
  if (J.cols() != n) throw FileFormatError("complex structure must be square");
  if (n % 2 != 0) throw FileFormatError("complex structure needs even dimension");
  if (n == 0) return;
  double dev_sq = (J * J + Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  double dev_orth = (J.transpose() * J - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (dev_sq > tol || dev_orth > tol)
    throw FileFormatError("complex structure fails J^2 = -I or orthogonality");
}

ComplexStructure ComplexStructure::standard(int n) {
  if (n % 2 != 0) throw FileFormatError("standard complex structure needs even dimension");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int b = 0; b < n; b += 2) {
    J(b, b + 1) = -1.0;
    J(b + 1, b) = 1.0;
  }
  return ComplexStructure{J};
}

RealRepresentation RealRepresentation::tangent(std::shared_ptr<const FiniteActionGroup> G) {
  RealRepresentation rep;
  rep.basis_ = Eigen::MatrixXd::Identity(G->dim(), G->dim());
  rep.action_.reserve(G->order());
  for (int i = 0; i < G->order(); ++i) rep.action_.push_back(G->element(i).linear);
  rep.group_ = std::move(G);
  return rep;
}

RealRepresentation RealRepresentation::on_subspace(std::shared_ptr<const FiniteActionGroup> G,
                                                   Eigen::MatrixXd basis, double tol) {
  RealRepresentation rep;
  rep.action_.reserve(G->order());
  for (int i = 0; i < G->order(); ++i) {
    const Eigen::MatrixXd& L = G->element(i).linear;
    Eigen::MatrixXd restricted = basis.transpose() * L * basis;
    double residual = invariance_residual(L, basis, restricted);
    if (residual > tol)
      throw SubspaceNotInvariant("subspace not invariant under element " + std::to_string(i) +
                                 ", residual " + std::to_string(residual));
    rep.action_.push_back(std::move(restricted));
  }
  rep.basis_ = std::move(basis);
  rep.group_ = std::move(G);
  return rep;
}

RealRepresentation RealRepresentation::from_action(std::shared_ptr<const FiniteActionGroup> G,
                                                   int k,
                                                   const std::vector<Eigen::MatrixXd>& generator_action,
                                                   double tol) {
  if (generator_action.size() != G->generator_indices().size())
    throw FileFormatError("one action matrix per group generator is required");
  for (const Eigen::MatrixXd& A : generator_action) {
    if (A.rows() != k || A.cols() != k)
      throw FileFormatError("action matrix size does not match representation dimension");
    if (k > 0 &&
        (A.transpose() * A - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-9)
      throw NotIsometry("action matrix is not orthogonal");
  }

  RealRepresentation rep;
  rep.basis_ = Eigen::MatrixXd::Identity(k, k);
  rep.action_.reserve(G->order());
  for (int i = 0; i < G->order(); ++i) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(k, k);
    for (int letter : G->word(i)) A = A * generator_action[letter];
    rep.action_.push_back(std::move(A));
  }
  for (int i = 0; i < G->order(); ++i) {
    for (int j = 0; j < G->order(); ++j) {
      const Eigen::MatrixXd prod = rep.action_[i] * rep.action_[j];
      if (k > 0 && (prod - rep.action_[G->multiply(i, j)]).cwiseAbs().maxCoeff() > tol)
        throw FileFormatError(
            "action matrices do not define a homomorphism (product mismatch at elements " +
            std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  rep.group_ = std::move(G);
  return rep;
}

RealRepresentation fixed_subspace(const RealRepresentation& rep, int g) {
  const FiniteActionGroup& G = rep.group();
  const int k = rep.dim();
  const int m = G.element_order(g);

  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(k, k);
  int cur = 0;
  for (int r = 0; r < m; ++r) {
    P += rep.action(cur);
    cur = G.multiply(cur, g);
  }
  P /= static_cast<double>(m);

  Eigen::MatrixXd Q(k, 0);
  if (k > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P);
    int fixed = 0;
    for (int i = 0; i < k; ++i)
      if (es.eigenvalues()[i] > 0.5) ++fixed;
    Q.resize(k, fixed);
    int c = 0;
    for (int i = 0; i < k; ++i)
      if (es.eigenvalues()[i] > 0.5) Q.col(c++) = es.eigenvectors().col(i);
  }

  auto C = std::make_shared<FiniteActionGroup>(centralizer(G, g));
  RealRepresentation out;
  out.basis_ = rep.basis() * Q;
  out.action_.reserve(C->order());
  for (int s = 0; s < C->order(); ++s) {
    const Eigen::MatrixXd& A = rep.action(C->parent_indices()[s]);
    Eigen::MatrixXd restricted = Q.transpose() * A * Q;
    if (Q.cols() > 0 && (A * Q - Q * restricted).cwiseAbs().maxCoeff() > 1e-6)
      throw SubspaceNotInvariant("fixed subspace drifted under a centralizer element");
    out.action_.push_back(std::move(restricted));
  }
  out.group_ = std::move(C);
  return out;
}

bool is_orientation_preserving(const RealRepresentation& rep) {
  if (rep.dim() == 0) return true;
  for (int i = 0; i < rep.group().order(); ++i)
    if (rep.action(i).determinant() <= 0.0) return false;
  return true;
}

Rational age(int g, const ComplexStructure& J, const RealRepresentation& rep, double tol) {
  const int k = rep.dim();
  if (k == 0) return Rational(0);
  if (k % 2 != 0) throw ActionNotComplexLinear("representation subspace has odd dimension");
  if (J.dim() != rep.ambient_dim())
    throw FileFormatError("complex structure dimension does not match ambient space");

  const Eigen::MatrixXd& W = rep.basis();
  Eigen::MatrixXd Jw = W.transpose() * J.J * W;
  if ((J.J * W - W * Jw).cwiseAbs().maxCoeff() > tol)
    throw ActionNotComplexLinear("representation subspace is not J-invariant");
  if ((Jw * Jw + Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() > tol)
    throw ActionNotComplexLinear("restricted complex structure fails J^2 = -I");

  const Eigen::MatrixXd& A = rep.action(g);
  if ((A * Jw - Jw * A).cwiseAbs().maxCoeff() > tol)
    throw ActionNotComplexLinear("action does not commute with the complex structure");

  // Columns spanning the +i eigenspace of Jw; the action restricted there is
  // the complex-linear matrix of g, whose eigenvalue arguments are the ages.
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> jes(Jw.cast<std::complex<double>>());
  Eigen::MatrixXcd V(k, k / 2);
  int c = 0;
  for (int i = 0; i < k; ++i) {
    if (jes.eigenvalues()[i].imag() > 0.5) {
      if (c == k / 2) throw ActionNotComplexLinear("unexpected +i eigenspace dimension");
      V.col(c++) = jes.eigenvectors().col(i);
    }
  }
  if (c != k / 2) throw ActionNotComplexLinear("unexpected +i eigenspace dimension");
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(V);
  Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(k, k / 2);

  Eigen::MatrixXcd M = Q.adjoint() * A.cast<std::complex<double>>() * Q;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> mes(M);

  const long long m = rep.group().element_order(g);
  Rational total(0);
  for (int i = 0; i < k / 2; ++i) {
    std::complex<double> mu = mes.eigenvalues()[i];
    if (std::abs(std::abs(mu) - 1.0) > tol)
      throw ActionNotComplexLinear("complex eigenvalue off the unit circle");
    double phase = std::arg(mu) / kTwoPi;
    if (phase < 0.0) phase += 1.0;
    total = total + snap_to_denominator(phase, m, tol).frac();
  }
  return total;
}

Eigen::VectorXd character_of(const RealRepresentation& rep) {
  auto classes = conjugacy_classes(rep.group());
  Eigen::VectorXd chi(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c)
    chi[static_cast<int>(c)] = rep.dim() == 0 ? 0.0 : rep.action(classes[c][0]).trace();
  return chi;
}

bool same_character(const RealRepresentation& a, const RealRepresentation& b, double tol) {
  Eigen::VectorXd ca = character_of(a);
  Eigen::VectorXd cb = character_of(b);
  if (ca.size() != cb.size()) return false;
  return ca.size() == 0 || (ca - cb).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace orbmorse
