// Command-line surface for the orbifold Morse pipeline. Subcommands compose
// the library stages: analyze (model -> critical data), inertia (critical
// data -> sector table), poly (critical data -> Morse polynomials), check
// (Morse inequalities), betti (lacunary polynomial -> graded dims), flow
// (gradient-flow trajectories and basin census), example (builtin fixtures).
//
// Exit codes: 0 success, 1 domain failure (degenerate critical point,
// inconsistent inequality under --strict, ...), 2 malformed input.

#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "orbmorse/critical.hpp"
#include "orbmorse/errors.hpp"
#include "orbmorse/examples.hpp"
#include "orbmorse/exponent_poly.hpp"
#include "orbmorse/flow.hpp"
#include "orbmorse/inequalities.hpp"
#include "orbmorse/io.hpp"
#include "orbmorse/model.hpp"
#include "orbmorse/morse_poly.hpp"

namespace {

using orbmorse::CriticalPointData;
using orbmorse::ExponentPolynomial;
using orbmorse::FlowFieldKind;
using orbmorse::InertiaSectorDatum;

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

void emit(const nlohmann::json& doc) { std::cout << doc.dump(2) << "\n"; }

void emit_or_write(const nlohmann::json& doc, const std::string& out_path) {
  if (out_path.empty())
    emit(doc);
  else
    orbmorse::write_json_file(out_path, doc);
}

void print_points_table(const std::vector<CriticalPointData>& points) {
  std::printf("%-28s %12s %6s %4s %6s %s\n", "label", "value", "|Aut|", "ind", "coind",
              "orientable");
  for (const CriticalPointData& p : points)
    std::printf("%-28s %12s %6d %4d %6d %s\n", p.label.c_str(), fmt("%.9g", p.value).c_str(),
                p.stabilizer->order(), p.index_rep.dim(), p.coindex_rep.dim(),
                p.orientable ? "yes" : "no");
}

void print_sectors_table(const std::vector<InertiaSectorDatum>& sectors,
                         const std::vector<CriticalPointData>& points) {
  std::printf("%-28s %7s %7s %6s %7s %8s %s\n", "base", "ord(g)", "|class|", "ind^g", "coind^g",
              "age", "orientable");
  for (const InertiaSectorDatum& s : sectors)
    std::printf("%-28s %7d %7d %6d %7d %8s %s\n", points[s.base_index].label.c_str(), s.rep_order,
                s.class_size, s.ind_fixed_dim, s.coind_fixed_dim,
                s.age ? s.age->str().c_str() : "-", s.orientable_pair ? "yes" : "no");
}

int cmd_analyze(const std::string& model_path, bool json_out, const std::string& certify_path) {
  orbmorse::QuotientModel model = orbmorse::load_model(model_path);
  orbmorse::MorseCertificate cert = orbmorse::assert_morse(model);
  nlohmann::json doc = orbmorse::certificate_json(cert);
  if (!certify_path.empty()) orbmorse::write_json_file(certify_path, doc);
  if (json_out) {
    emit(doc);
    return 0;
  }
  print_points_table(cert.points);
  const orbmorse::FindDiagnostics& d = cert.diagnostics;
  std::printf("%zu critical orbits\n", cert.points.size());
  std::printf("seeds %d: converged %d, diverged %d, singular %d, non-finite %d\n", d.seeds_total,
              d.converged, d.diverged, d.singular, d.non_finite);
  std::printf("min pair distance %s\n", fmt("%.9g", cert.min_pair_distance).c_str());
  return 0;
}

int cmd_inertia(const std::string& data_path, bool json_out) {
  std::vector<CriticalPointData> points = orbmorse::load_critical_data(data_path);
  std::vector<InertiaSectorDatum> sectors = orbmorse::inertia_sectors(points);
  if (json_out) {
    emit(orbmorse::sectors_json(sectors, points));
    return 0;
  }
  print_sectors_table(sectors, points);
  std::printf("%zu sectors over %zu critical orbits\n", sectors.size(), points.size());
  return 0;
}

int cmd_poly(const std::string& data_path, const std::string& which, bool json_out) {
  std::vector<CriticalPointData> points = orbmorse::load_critical_data(data_path);
  ExponentPolynomial p;
  if (which == "plain") {
    p = orbmorse::morse_polynomial(points);
  } else {
    std::vector<InertiaSectorDatum> sectors = orbmorse::inertia_sectors(points);
    p = which == "inertia" ? orbmorse::inertia_morse_polynomial(sectors)
                           : orbmorse::orbifold_morse_polynomial(sectors);
  }
  if (json_out)
    emit(orbmorse::polynomial_json(p));
  else
    std::printf("%s\n", p.str().c_str());
  return 0;
}

int cmd_check(const std::string& morse_path, const std::string& poincare_path, bool strict,
              bool json_out) {
  ExponentPolynomial M = orbmorse::load_polynomial(morse_path);
  ExponentPolynomial P = orbmorse::load_polynomial(poincare_path);
  orbmorse::InequalityReport report = orbmorse::check_inequality(M, P);
  if (json_out) {
    emit(orbmorse::report_json(report));
  } else {
    std::printf("morse:      %s\n", report.morse.str().c_str());
    std::printf("poincare:   %s\n", report.poincare.str().c_str());
    std::printf("remainder:  %s\n",
                report.remainder ? report.remainder->str().c_str() : "(none)");
    std::printf("consistent: %s\n", report.consistent ? "yes" : "no");
    std::printf("euler:      %s\n", report.euler_check ? (*report.euler_check ? "pass" : "fail")
                                                       : "skipped");
  }
  if (strict && !report.consistent)
    throw orbmorse::DomainFault("Morse inequalities are inconsistent: no remainder with "
                                "non-negative integer coefficients exists");
  return 0;
}

int cmd_betti(const std::string& morse_path, bool json_out) {
  ExponentPolynomial M = orbmorse::load_polynomial(morse_path);
  std::vector<long long> betti = orbmorse::betti_from_lacunary(M);
  if (json_out) {
    emit(nlohmann::json{{"betti", betti}});
    return 0;
  }
  for (std::size_t k = 0; k < betti.size(); ++k)
    std::printf("b_%zu = %lld\n", k, betti[k]);
  return 0;
}

Eigen::VectorXd parse_start(const std::string& text, int dim) {
  std::vector<double> coords;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    std::string piece = text.substr(pos, next == std::string::npos ? next : next - pos);
    try {
      std::size_t used = 0;
      coords.push_back(std::stod(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw orbmorse::InputError("--x0: cannot parse coordinate '" + piece + "'");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (static_cast<int>(coords.size()) != dim)
    throw orbmorse::InputError("--x0: expected " + std::to_string(dim) + " coordinates, got " +
                               std::to_string(coords.size()));
  return Eigen::Map<Eigen::VectorXd>(coords.data(), static_cast<int>(coords.size()));
}

int cmd_flow(const std::string& model_path, const std::string& x0_text, int seeds,
             const std::string& field_name, double t_max, unsigned long long rng_seed,
             bool json_out) {
  if (x0_text.empty() == (seeds == 0))
    throw orbmorse::InputError("flow: give exactly one of --x0 or --seeds");
  FlowFieldKind field = field_name == "neg"   ? FlowFieldKind::NegGradient
                        : field_name == "pos" ? FlowFieldKind::PosGradient
                                              : FlowFieldKind::UnitSpeedGradient;

  orbmorse::QuotientModel model = orbmorse::load_model(model_path);
  orbmorse::MorseCertificate cert = orbmorse::assert_morse(model);

  if (!x0_text.empty()) {
    Eigen::VectorXd x0 = parse_start(x0_text, model.dim());
    orbmorse::Trajectory traj =
        orbmorse::integrate(model, x0, field, t_max, {}, &cert.points);
    if (json_out) {
      emit(orbmorse::trajectory_json(traj, &cert.points));
      return 0;
    }
    std::printf("%-14s %s %14s\n", "t", "state", "f");
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      std::printf("%-14s", fmt("%.8g", traj.times[i]).c_str());
      for (int j = 0; j < traj.states[i].size(); ++j)
        std::printf(" %13s", fmt("%.8g", traj.states[i][j]).c_str());
      std::printf(" %14s\n", fmt("%.8g", traj.f_values[i]).c_str());
    }
    const char* terminal = traj.terminal == orbmorse::Trajectory::Terminal::Converged
                               ? "converged"
                           : traj.terminal == orbmorse::Trajectory::Terminal::LeftDomain
                               ? "left domain"
                               : "max time reached";
    if (traj.converged_to >= 0)
      std::printf("terminal: %s at %s\n", terminal, cert.points[traj.converged_to].label.c_str());
    else
      std::printf("terminal: %s\n", terminal);
    return 0;
  }

  orbmorse::BasinCensus census = orbmorse::basin_census(model, cert.points, seeds, rng_seed, t_max);
  if (json_out) {
    emit(orbmorse::census_json(census, cert.points));
    return 0;
  }
  for (const auto& [idx, count] : census.hits)
    std::printf("%-28s %d\n", cert.points[idx].label.c_str(), count);
  std::printf("seeds %d: converged %d, non-converged %d\n", census.total,
              census.total - census.non_converged, census.non_converged);
  return 0;
}

int cmd_example(const std::string& name, const std::vector<long long>& weights,
                const std::string& out_path) {
  nlohmann::json doc;
  if (name == "kummer") {
    doc = orbmorse::kummer_model_json();
  } else if (name == "teardrop") {
    doc = orbmorse::teardrop_data_json();
  } else if (name == "wps") {
    if (weights.empty())
      throw orbmorse::InputError("example wps: give the weights, e.g. `example wps 1 2 3 4`");
    doc = orbmorse::weighted_projective_data_json(weights);
  } else if (name == "k3") {
    doc = orbmorse::resolution_levels_json(orbmorse::k3_resolution_levels());
  } else {
    throw orbmorse::InputError("unknown example '" + name +
                               "' (available: kummer, teardrop, wps, k3)");
  }
  if (name != "wps" && !weights.empty())
    throw orbmorse::InputError("example " + name + " takes no weights");
  emit_or_write(doc, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant Morse invariants of finite-quotient orbifold charts"};
  app.require_subcommand(1);

  std::string model_path, data_path, morse_path, poincare_path, example_name;
  std::string certify_path, out_path, x0_text;
  std::string field_name = "unit";
  std::vector<long long> weights;
  bool json_out = false, strict = false;
  bool poly_plain = false, poly_inertia = false, poly_orbifold = false;
  int seeds = 0;
  double t_max = 50.0;
  unsigned long long rng_seed = 1;

  CLI::App* analyze = app.add_subcommand("analyze", "Find and classify the critical orbits of a model");
  analyze->add_option("model", model_path, "model JSON file")->required();
  analyze->add_flag("--json", json_out, "machine-readable output");
  analyze->add_option("--certify", certify_path, "also write the critical-data JSON to this path");

  CLI::App* inertia = app.add_subcommand("inertia", "Inertia sectors of a critical-data file");
  inertia->add_option("data", data_path, "critical-data JSON file")->required();
  inertia->add_flag("--json", json_out, "machine-readable output");

  CLI::App* poly = app.add_subcommand("poly", "Morse polynomial of a critical-data file");
  poly->add_option("data", data_path, "critical-data JSON file")->required();
  poly->add_flag("--plain", poly_plain, "count orientable critical points by index dimension");
  poly->add_flag("--inertia", poly_inertia, "count orientable sectors by fixed index dimension");
  poly->add_flag("--orbifold", poly_orbifold, "shift sector exponents by twice the age");
  poly->add_flag("--json", json_out, "machine-readable output");

  CLI::App* check = app.add_subcommand("check", "Morse inequalities between two polynomials");
  check->add_option("morse", morse_path, "Morse polynomial JSON file")->required();
  check->add_option("poincare", poincare_path, "Poincare polynomial JSON file")->required();
  check->add_flag("--strict", strict, "exit 1 when the inequalities are inconsistent");
  check->add_flag("--json", json_out, "machine-readable output");

  CLI::App* betti = app.add_subcommand("betti", "Graded dimensions of a lacunary Morse polynomial");
  betti->add_option("morse", morse_path, "Morse polynomial JSON file")->required();
  betti->add_flag("--json", json_out, "machine-readable output");

  CLI::App* flow = app.add_subcommand("flow", "Gradient-flow trajectories and basin census");
  flow->add_option("model", model_path, "model JSON file")->required();
  flow->add_option("--x0", x0_text, "start point, comma-separated coordinates");
  flow->add_option("--seeds", seeds, "random-start census of this size");
  flow->add_option("--field", field_name, "flow field: neg, pos or unit (default unit)")
      ->check(CLI::IsMember({"neg", "pos", "unit"}));
  flow->add_option("--tmax", t_max, "integration horizon (default 50)");
  flow->add_option("--rng-seed", rng_seed, "census seed stream (default 1)");
  flow->add_flag("--json", json_out, "machine-readable output");

  CLI::App* example = app.add_subcommand("example", "Write a builtin fixture document");
  example->add_option("name", example_name, "kummer, teardrop, wps or k3")->required();
  example->add_option("weights", weights, "weights for wps, e.g. 1 2 3 4");
  example->add_option("--out", out_path, "write to this path instead of stdout");
  example->add_flag("--json", json_out, "machine-readable output (always on)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(model_path, json_out, certify_path);
    if (inertia->parsed()) return cmd_inertia(data_path, json_out);
    if (poly->parsed()) {
      if (poly_plain + poly_inertia + poly_orbifold > 1)
        throw orbmorse::InputError("poly: --plain, --inertia and --orbifold are exclusive");
      return cmd_poly(data_path,
                      poly_orbifold ? "orbifold" : (poly_inertia ? "inertia" : "plain"), json_out);
    }
    if (check->parsed()) return cmd_check(morse_path, poincare_path, strict, json_out);
    if (betti->parsed()) return cmd_betti(morse_path, json_out);
    if (flow->parsed())
      return cmd_flow(model_path, x0_text, seeds, field_name, t_max, rng_seed, json_out);
    if (example->parsed()) return cmd_example(example_name, weights, out_path);
  } catch (const orbmorse::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == orbmorse::Error::Kind::Input ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
