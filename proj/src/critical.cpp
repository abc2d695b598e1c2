#include "orbmorse/critical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "orbmorse/errors.hpp"
#include "orbmorse/parallel.hpp"

namespace orbmorse {

namespace {

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

// Seeds: plain grid, grid shifted by 0.37 cells (clear of symmetry axes where
// the Hessian degenerates), then uniform random points.
std::vector<Eigen::VectorXd> make_seeds(const QuotientModel& model) {
  const int n = model.dim();
  const SeedPlan& plan = model.seeds();
  std::vector<Eigen::VectorXd> seeds;

  if (plan.grid > 0) {
    double cells = std::pow(static_cast<double>(plan.grid), n);
    if (cells > 2e5) throw FileFormatError("grid resolution produces too many seeds");
    long long total = static_cast<long long>(cells);
    for (double shift : {0.0, 0.37}) {
      for (long long idx = 0; idx < total; ++idx) {
        Eigen::VectorXd x(n);
        long long rest = idx;
        for (int i = 0; i < n; ++i) {
          double cell = static_cast<double>(rest % plan.grid) + shift;
          rest /= plan.grid;
          double u = cell / plan.grid;
          x[i] = model.lattice() ? u : -3.0 + 6.0 * u;
        }
        seeds.push_back(std::move(x));
      }
    }
  }

  std::mt19937_64 rng(plan.rng_seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int s = 0; s < plan.random; ++s) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) {
      double u = unif(rng);
      x[i] = model.lattice() ? u : -3.0 + 6.0 * u;
    }
    seeds.push_back(std::move(x));
  }

  if (seeds.empty()) throw NoSeeds("seed plan produced no starting points");
  return seeds;
}

enum class NewtonOutcome { Converged, Diverged, Singular, NonFinite };

NewtonOutcome newton(const QuotientModel& model, Eigen::VectorXd x, Eigen::VectorXd& out) {
  const Expression& f = model.function();
  const double tol = model.tolerances().newton_tol;
  x = model.wrap(x);

  double value;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  for (int iter = 0; iter < 50; ++iter) {
    try {
      f.derivatives(x, value, grad, hess);
    } catch (const DomainFault&) {
      return NewtonOutcome::NonFinite;
    }
    if (!std::isfinite(value) || !all_finite(grad) || !hess.allFinite())
      return NewtonOutcome::NonFinite;
    double gnorm = grad.norm();
    if (gnorm <= tol) {
      if (!std::isfinite(value))
        throw NonFiniteFunctionValue("function value not finite at a critical point");
      out = std::move(x);
      return NewtonOutcome::Converged;
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(hess);
    if (!lu.isInvertible()) return NewtonOutcome::Singular;
    Eigen::VectorXd step = lu.solve(-grad);

    bool advanced = false;
    double alpha = 1.0;
    for (int backtrack = 0; backtrack < 8; ++backtrack) {
      Eigen::VectorXd trial = model.wrap(x + alpha * step);
      Eigen::VectorXd trial_grad;
      try {
        trial_grad = f.gradient(trial);
      } catch (const DomainFault&) {
        alpha *= 0.5;
        continue;
      }
      if (all_finite(trial_grad) && trial_grad.norm() < gnorm) {
        x = std::move(trial);
        advanced = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!advanced) return NewtonOutcome::Diverged;
    if (!model.lattice() && x.cwiseAbs().maxCoeff() > 1e6) return NewtonOutcome::Diverged;
  }
  return NewtonOutcome::Diverged;
}

// Canonical chart form for ordering orbit images: wrapped into [0,1)^n with
// coordinates within orbit_tol of 1 pulled back below 0, so that equal torus
// points get comparable coordinates.
Eigen::VectorXd canonical_form(const QuotientModel& model, const Eigen::VectorXd& x) {
  Eigen::VectorXd w = model.wrap(x);
  if (model.lattice()) {
    for (int i = 0; i < w.size(); ++i)
      if (w[i] > 1.0 - model.tolerances().orbit_tol) w[i] -= 1.0;
  }
  return w;
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i] - tol) return true;
    if (a[i] > b[i] + tol) return false;
  }
  return false;
}

bool same_orbit(const QuotientModel& model, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (int g = 0; g < model.group().order(); ++g)
    if (model.distance(model.group().element(g).apply(a), b) <= model.tolerances().orbit_tol)
      return true;
  return false;
}

}  // namespace

std::vector<Eigen::VectorXd> find_critical_points(const QuotientModel& model,
                                                  FindDiagnostics* diag) {
  std::vector<Eigen::VectorXd> seeds = make_seeds(model);
  FindDiagnostics stats;
  stats.seeds_total = static_cast<int>(seeds.size());

  std::vector<std::optional<Eigen::VectorXd>> results(seeds.size());
  std::vector<NewtonOutcome> outcomes(seeds.size());
  parallel_for(static_cast<int>(seeds.size()), [&](int i) {
    Eigen::VectorXd converged;
    outcomes[i] = newton(model, seeds[i], converged);
    if (outcomes[i] == NewtonOutcome::Converged) results[i] = std::move(converged);
  });

  std::vector<Eigen::VectorXd> found;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    switch (outcomes[i]) {
      case NewtonOutcome::Converged:
        ++stats.converged;
        break;
      case NewtonOutcome::Diverged:
        ++stats.diverged;
        break;
      case NewtonOutcome::Singular:
        ++stats.singular;
        break;
      case NewtonOutcome::NonFinite:
        ++stats.non_finite;
        break;
    }
    if (!results[i]) continue;
    bool fresh = true;
    for (const Eigen::VectorXd& kept : found)
      if (model.distance(kept, *results[i]) < model.tolerances().orbit_tol) {
        fresh = false;
        break;
      }
    if (fresh) found.push_back(std::move(*results[i]));
  }
  if (diag) *diag = stats;
  return found;
}

FiniteActionGroup stabilizer_of(const QuotientModel& model, const Eigen::VectorXd& x) {
  std::vector<int> members;
  for (int g = 0; g < model.group().order(); ++g)
    if (model.distance(model.group().element(g).apply(x), x) < model.tolerances().orbit_tol)
      members.push_back(g);
  return subgroup(model.group(), std::move(members));
}

std::vector<Eigen::VectorXd> orbit_dedup(const QuotientModel& model,
                                         const std::vector<Eigen::VectorXd>& points) {
  const double tol = model.tolerances().orbit_tol;
  std::vector<Eigen::VectorXd> reps;
  for (const Eigen::VectorXd& p : points) {
    bool known = false;
    for (const Eigen::VectorXd& r : reps)
      if (same_orbit(model, p, r)) {
        known = true;
        break;
      }
    if (known) continue;

    Eigen::VectorXd best = canonical_form(model, p);
    for (int g = 1; g < model.group().order(); ++g) {
      Eigen::VectorXd image = canonical_form(model, model.group().element(g).apply(p));
      if (lex_less(image, best, tol)) best = std::move(image);
    }
    reps.push_back(std::move(best));
  }
  std::sort(reps.begin(), reps.end(),
            [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return lex_less(a, b, tol); });
  return reps;
}

CriticalPointData analyze_critical_point(const QuotientModel& model, const Eigen::VectorXd& x) {
  const int n = model.dim();
  double value;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  model.function().derivatives(x, value, grad, hess);
  if (grad.norm() > model.tolerances().newton_tol)
    throw DomainError("point " + location_label(x) + " is not critical within tolerance");
  if (!std::isfinite(value))
    throw NonFiniteFunctionValue("function value not finite at " + location_label(x));

  auto stab = std::make_shared<FiniteActionGroup>(stabilizer_of(model, x));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess);
  double zero_tol = model.tolerances().hessian_zero_tol(es.eigenvalues().cwiseAbs().maxCoeff());
  for (int i = 0; i < n; ++i)
    if (std::abs(es.eigenvalues()[i]) <= zero_tol)
      throw DegenerateCriticalPoint("eigenvalue " + std::to_string(es.eigenvalues()[i]) +
                                    " within zero band at " + location_label(x));

  auto collect = [&](bool negative) {
    int k = 0;
    for (int i = 0; i < n; ++i)
      if ((es.eigenvalues()[i] < 0.0) == negative) ++k;
    Eigen::MatrixXd B(n, k);
    int c = 0;
    for (int i = 0; i < n; ++i)
      if ((es.eigenvalues()[i] < 0.0) == negative) B.col(c++) = es.eigenvectors().col(i);
    return B;
  };

  // Reynolds average of the eigenspace projector over the stabilizer, then
  // re-extraction; makes the splitting exactly equivariant.
  auto equivariant_basis = [&](Eigen::MatrixXd B) {
    const int k = static_cast<int>(B.cols());
    if (k == 0) return B;
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    for (int s = 0; s < stab->order(); ++s) {
      const Eigen::MatrixXd& L = stab->element(s).linear;
      P += L * B * B.transpose() * L.transpose();
    }
    P /= static_cast<double>(stab->order());
    P = 0.5 * (P + P.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> pes(P);
    Eigen::MatrixXd out(n, k);
    int c = 0;
    for (int i = 0; i < n; ++i) {
      if (pes.eigenvalues()[i] > 0.5) {
        if (c == k) throw SplitNotInvariant("averaged projector rank exceeds eigenspace dimension");
        out.col(c++) = pes.eigenvectors().col(i);
      }
    }
    if (c != k)
      throw SplitNotInvariant("averaged projector rank dropped; eigenvalues cluster across the split");
    for (int s = 0; s < stab->order(); ++s) {
      const Eigen::MatrixXd& L = stab->element(s).linear;
      Eigen::MatrixXd proj = out * out.transpose();
      if ((L * proj - proj * L).cwiseAbs().maxCoeff() > 1e-6)
        throw SplitNotInvariant("stabilizer element moves the split subspace");
    }
    return out;
  };

  Eigen::MatrixXd Bneg = equivariant_basis(collect(true));
  Eigen::MatrixXd Bpos = equivariant_basis(collect(false));

  auto definite = [&](const Eigen::MatrixXd& B, double sign) {
    if (B.cols() == 0) return;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> res(
        Eigen::MatrixXd(B.transpose() * hess * B));
    for (int i = 0; i < res.eigenvalues().size(); ++i)
      if (sign * res.eigenvalues()[i] <= zero_tol)
        throw SplitNotInvariant("restricted Hessian lost definiteness after averaging");
  };
  definite(Bneg, -1.0);
  definite(Bpos, +1.0);

  CriticalPointData data;
  data.location = model.wrap(x);
  data.label = location_label(*data.location);
  data.value = value;
  data.hessian = std::move(hess);
  try {
    data.index_rep = RealRepresentation::on_subspace(stab, std::move(Bneg));
    data.coindex_rep = RealRepresentation::on_subspace(stab, std::move(Bpos));
  } catch (const SubspaceNotInvariant& e) {
    throw SplitNotInvariant(e.what());
  }
  data.tangent_rep = RealRepresentation::tangent(stab);
  data.stabilizer = std::move(stab);
  data.orientable = is_orientation_preserving(data.index_rep);
  data.complex_structure = model.complex_structure();
  return data;
}

MorseCertificate assert_morse(const QuotientModel& model) {
  MorseCertificate cert;
  std::vector<Eigen::VectorXd> found = find_critical_points(model, &cert.diagnostics);
  std::vector<Eigen::VectorXd> reps = orbit_dedup(model, found);

  cert.points.resize(reps.size());
  parallel_for(static_cast<int>(reps.size()),
               [&](int i) { cert.points[i] = analyze_critical_point(model, reps[i]); });

  std::stable_sort(cert.points.begin(), cert.points.end(),
                   [](const CriticalPointData& a, const CriticalPointData& b) {
                     return a.value < b.value;
                   });

  cert.min_pair_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j)
      cert.min_pair_distance =
          std::min(cert.min_pair_distance, model.distance(reps[i], reps[j]));
  return cert;
}

std::string location_label(const Eigen::VectorXd& x) {
  std::string out = "(";
  for (int i = 0; i < x.size(); ++i) {
    double v = x[i];
    if (std::abs(v - std::round(v)) < 1e-9) v = std::round(v) + 0.0;  // avoid "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    if (i) out += ", ";
    out += buf;
  }
  return out + ")";
}

}  // namespace orbmorse
