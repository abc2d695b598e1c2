#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orbmorse/model.hpp"
#include "orbmorse/representation.hpp"

namespace orbmorse {

// A certified nondegenerate critical point with its stabilizer and the
// equivariant splitting of the Hessian. Instances either come out of chart
// analysis (location and hessian present) or from direct data entry, where
// the stabilizer acts on abstract tangent coordinates.
struct CriticalPointData {
  std::string label;
  std::optional<Eigen::VectorXd> location;
  double value = 0.0;
  std::shared_ptr<const FiniteActionGroup> stabilizer;
  std::optional<Eigen::MatrixXd> hessian;
  // Stabilizer action on the tangent coordinates. For chart points this is
  // the action of the element linear parts; directly entered data may declare
  // a non-faithful action (the group then lives on an auxiliary space).
  RealRepresentation tangent_rep;
  RealRepresentation index_rep;
  RealRepresentation coindex_rep;
  bool orientable = false;
  // Complex structure on the tangent coordinates the stabilizer acts on.
  std::optional<ComplexStructure> complex_structure;
};

struct FindDiagnostics {
  int seeds_total = 0;
  int converged = 0;
  int diverged = 0;
  int singular = 0;
  int non_finite = 0;
};

// Newton iteration on the gradient from grid, offset-grid and random seeds;
// converged points are deduplicated by plain chart distance (< orbit_tol).
// Completeness is heuristic; seed statistics land in diag when given.
std::vector<Eigen::VectorXd> find_critical_points(const QuotientModel& model,
                                                  FindDiagnostics* diag = nullptr);

// Subgroup of elements moving x by less than orbit_tol (mod lattice).
FiniteActionGroup stabilizer_of(const QuotientModel& model, const Eigen::VectorXd& x);

// One representative per group orbit: the lexicographically smallest
// canonical form among the images of each point.
std::vector<Eigen::VectorXd> orbit_dedup(const QuotientModel& model,
                                         const std::vector<Eigen::VectorXd>& points);

// Eigen-splits the Hessian at a certified critical point into the negative
// and positive stabilizer representations. Throws DegenerateCriticalPoint
// when an eigenvalue sits inside the zero band, SplitNotInvariant when the
// equivariant projection fails numerically.
CriticalPointData analyze_critical_point(const QuotientModel& model, const Eigen::VectorXd& x);

struct MorseCertificate {
  std::vector<CriticalPointData> points;
  FindDiagnostics diagnostics;
  // Minimum pairwise chart distance between orbit representatives; isolation
  // diagnostic. Infinity when fewer than two points.
  double min_pair_distance = 0.0;
};

// Full pipeline: find, dedup, analyze every representative.
MorseCertificate assert_morse(const QuotientModel& model);

// Printable chart coordinates, e.g. "(0, 0.5, 0.5, 0)".
std::string location_label(const Eigen::VectorXd& x);

}  // namespace orbmorse
