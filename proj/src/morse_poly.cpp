#include "orbmorse/morse_poly.hpp"

#include "orbmorse/errors.hpp"
#include "orbmorse/representation.hpp"

namespace orbmorse {

std::vector<InertiaSectorDatum> inertia_sectors(const std::vector<CriticalPointData>& cpd,
                                                const std::optional<ComplexStructure>& fallback_J) {
  std::vector<InertiaSectorDatum> sectors;
  for (std::size_t p = 0; p < cpd.size(); ++p) {
    const CriticalPointData& point = cpd[p];
    const FiniteActionGroup& stab = *point.stabilizer;
    const std::optional<ComplexStructure>& J =
        point.complex_structure ? point.complex_structure : fallback_J;

    RealRepresentation tangent;
    if (J)
      tangent = point.tangent_rep.group_ptr() ? point.tangent_rep
                                              : RealRepresentation::tangent(point.stabilizer);

    for (const std::vector<int>& cls : conjugacy_classes(stab)) {
      int g = cls.front();
      InertiaSectorDatum sector;
      sector.base_index = static_cast<int>(p);
      sector.class_rep = g;
      sector.class_size = static_cast<int>(cls.size());
      sector.rep_order = stab.element_order(g);

      RealRepresentation ind_fixed = fixed_subspace(point.index_rep, g);
      sector.ind_fixed_dim = ind_fixed.dim();
      sector.coind_fixed_dim = fixed_subspace(point.coindex_rep, g).dim();
      sector.orientable_pair = is_orientation_preserving(ind_fixed);
      if (J) sector.age = age(g, *J, tangent);
      sectors.push_back(std::move(sector));
    }
  }
  return sectors;
}

ExponentPolynomial morse_polynomial(const std::vector<CriticalPointData>& cpd) {
  ExponentPolynomial M;
  for (const CriticalPointData& point : cpd)
    if (point.orientable) M.add_term(Rational(point.index_rep.dim()), 1);
  return M;
}

ExponentPolynomial inertia_morse_polynomial(const std::vector<InertiaSectorDatum>& sectors) {
  ExponentPolynomial M;
  for (const InertiaSectorDatum& s : sectors)
    if (s.orientable_pair) M.add_term(Rational(s.ind_fixed_dim), 1);
  return M;
}

ExponentPolynomial orbifold_morse_polynomial(const std::vector<InertiaSectorDatum>& sectors) {
  ExponentPolynomial M;
  for (const InertiaSectorDatum& s : sectors) {
    if (!s.age)
      throw MissingComplexStructure("sector lacks an age; declare a complex structure");
    if (s.orientable_pair) M.add_term(Rational(s.ind_fixed_dim) + *s.age + *s.age, 1);
  }
  return M;
}

bool representability_certificate(const std::vector<CriticalPointData>& cpd) {
  for (const CriticalPointData& point : cpd)
    if (point.stabilizer->order() > 1) return false;
  return true;
}

}  // namespace orbmorse
