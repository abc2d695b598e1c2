#pragma once

#include <optional>
#include <vector>

#include "orbmorse/critical.hpp"
#include "orbmorse/exponent_poly.hpp"
#include "orbmorse/rational.hpp"

namespace orbmorse {

// One inertia sector (c, (g)): a critical point together with a conjugacy
// class of its stabilizer.
struct InertiaSectorDatum {
  int base_index = 0;  // position in the critical-data sequence
  int class_rep = 0;   // element index in the stabilizer
  int class_size = 1;
  int rep_order = 1;
  int ind_fixed_dim = 0;
  int coind_fixed_dim = 0;
  // Age of class_rep on the tangent space; present iff a complex structure
  // is available for the point.
  std::optional<Rational> age;
  // Centralizer action on the fixed part of the index is orientation
  // preserving.
  bool orientable_pair = false;
};

// One datum per (critical point, stabilizer conjugacy class). The identity
// class of each point comes first and mirrors the base data. fallback_J is
// used for points that do not carry their own complex structure.
std::vector<InertiaSectorDatum> inertia_sectors(
    const std::vector<CriticalPointData>& cpd,
    const std::optional<ComplexStructure>& fallback_J = std::nullopt);

// Sum of t^{dim ind_c} over orientable critical points.
ExponentPolynomial morse_polynomial(const std::vector<CriticalPointData>& cpd);

// Sum of t^{ind_fixed_dim} over orientable sectors.
ExponentPolynomial inertia_morse_polynomial(const std::vector<InertiaSectorDatum>& sectors);

// Sum of t^{ind_fixed_dim + 2*age} over orientable sectors; every sector
// must carry an age (MissingComplexStructure otherwise).
ExponentPolynomial orbifold_morse_polynomial(const std::vector<InertiaSectorDatum>& sectors);

// True iff every stabilizer is trivial, i.e. the quotient carries the
// homotopy type of an honest CW complex built from the critical cells.
bool representability_certificate(const std::vector<CriticalPointData>& cpd);

}  // namespace orbmorse
