#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "orbmorse/critical.hpp"
#include "orbmorse/exponent_poly.hpp"
#include "orbmorse/flow.hpp"
#include "orbmorse/inequalities.hpp"
#include "orbmorse/model.hpp"
#include "orbmorse/morse_poly.hpp"

namespace orbmorse {

// Parses a JSON document, rejecting unknown keys. Matrix entries may be
// numbers or exact rationals written as strings "p/q"; a matrix parsed from
// strings and integers keeps exact group arithmetic.
QuotientModel parse_model(const nlohmann::json& doc);
QuotientModel load_model(const std::string& path);

// Critical-data documents: {"entries": [...]} with optional "diagnostics"
// and "min_pair_distance", or a bare entry array. Stabilizers are rebuilt
// from their generator matrices and index/coindex actions extended along
// generator words; closure, declared order, orthogonality and the
// homomorphism property are all enforced.
std::vector<CriticalPointData> parse_critical_data(const nlohmann::json& doc);
std::vector<CriticalPointData> load_critical_data(const std::string& path);

nlohmann::json critical_entry_json(const CriticalPointData& point);
nlohmann::json critical_data_json(const std::vector<CriticalPointData>& points);
nlohmann::json certificate_json(const MorseCertificate& cert);

// Polynomials serialize as {"exponent": coefficient} with exponents rendered
// as reduced fractions ("2", "1/2").
ExponentPolynomial parse_polynomial(const nlohmann::json& doc);
ExponentPolynomial load_polynomial(const std::string& path);
nlohmann::json polynomial_json(const ExponentPolynomial& p);

nlohmann::json sectors_json(const std::vector<InertiaSectorDatum>& sectors,
                            const std::vector<CriticalPointData>& cpd);
nlohmann::json report_json(const InequalityReport& report);
nlohmann::json trajectory_json(const Trajectory& traj,
                               const std::vector<CriticalPointData>* certified = nullptr);
nlohmann::json census_json(const BasinCensus& census,
                           const std::vector<CriticalPointData>& certified);

// Throws FileFormatError with the path and parse position on bad input.
nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& doc);

}  // namespace orbmorse
