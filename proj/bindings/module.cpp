// Python surface for the orbifold Morse pipeline. Structured values cross
// the boundary as the same JSON documents the command-line tool reads and
// writes, so results are directly interchangeable between the two.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

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

namespace py = pybind11;
using nlohmann::json;

namespace {

json parse_doc(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw orbmorse::FileFormatError(std::string("not valid JSON: ") + e.what());
  }
}

std::string dump(const json& doc) { return doc.dump(2); }

std::vector<orbmorse::CriticalPointData> points_of(const std::string& critical_json) {
  return orbmorse::parse_critical_data(parse_doc(critical_json));
}

orbmorse::FlowFieldKind field_of(const std::string& name) {
  if (name == "neg") return orbmorse::FlowFieldKind::NegGradient;
  if (name == "pos") return orbmorse::FlowFieldKind::PosGradient;
  if (name == "unit") return orbmorse::FlowFieldKind::UnitSpeedGradient;
  throw orbmorse::InputError("unknown flow field '" + name + "' (use neg, pos or unit)");
}

}  // namespace

PYBIND11_MODULE(orbmorse, m) {
  m.doc() = "Equivariant Morse invariants of finite-quotient orbifold charts";

  py::register_exception<orbmorse::Error>(m, "Error");

  m.def("analyze", [](const std::string& model_json) {
    orbmorse::QuotientModel model = orbmorse::parse_model(parse_doc(model_json));
    return dump(orbmorse::certificate_json(orbmorse::assert_morse(model)));
  }, py::arg("model_json"),
     "Critical-data certificate (JSON) of a model document (JSON)");

  m.def("inertia", [](const std::string& critical_json) {
    auto points = points_of(critical_json);
    return dump(orbmorse::sectors_json(orbmorse::inertia_sectors(points), points));
  }, py::arg("critical_json"), "Inertia sector table (JSON) of critical data");

  m.def("morse_polynomial", [](const std::string& critical_json) {
    return dump(orbmorse::polynomial_json(orbmorse::morse_polynomial(points_of(critical_json))));
  }, py::arg("critical_json"),
     "Orientable critical points counted by index dimension (polynomial JSON)");

  m.def("inertia_morse_polynomial", [](const std::string& critical_json) {
    auto points = points_of(critical_json);
    return dump(orbmorse::polynomial_json(
        orbmorse::inertia_morse_polynomial(orbmorse::inertia_sectors(points))));
  }, py::arg("critical_json"),
     "Orientable sectors counted by fixed index dimension (polynomial JSON)");

  m.def("orbifold_morse_polynomial", [](const std::string& critical_json) {
    auto points = points_of(critical_json);
    return dump(orbmorse::polynomial_json(
        orbmorse::orbifold_morse_polynomial(orbmorse::inertia_sectors(points))));
  }, py::arg("critical_json"),
     "Sectors counted by fixed index dimension shifted by twice the age");

  m.def("polynomial_str", [](const std::string& poly_json) {
    return orbmorse::parse_polynomial(parse_doc(poly_json)).str();
  }, py::arg("poly_json"), "Human-readable form of a polynomial document");

  m.def("check", [](const std::string& morse_json, const std::string& poincare_json) {
    return dump(orbmorse::report_json(
        orbmorse::check_inequality(orbmorse::parse_polynomial(parse_doc(morse_json)),
                                   orbmorse::parse_polynomial(parse_doc(poincare_json)))));
  }, py::arg("morse_json"), py::arg("poincare_json"),
     "Morse inequality report (JSON) between two polynomial documents");

  m.def("is_lacunary", [](const std::string& poly_json) {
    return orbmorse::is_lacunary(orbmorse::parse_polynomial(parse_doc(poly_json)));
  }, py::arg("poly_json"));

  m.def("betti", [](const std::string& poly_json) {
    return orbmorse::betti_from_lacunary(orbmorse::parse_polynomial(parse_doc(poly_json)));
  }, py::arg("poly_json"), "Graded dimensions of a lacunary polynomial");

  m.def("integrate", [](const std::string& model_json, const std::vector<double>& x0,
                        const std::string& field, double t_max) {
    orbmorse::QuotientModel model = orbmorse::parse_model(parse_doc(model_json));
    if (static_cast<int>(x0.size()) != model.dim())
      throw orbmorse::InputError("x0: expected " + std::to_string(model.dim()) +
                                 " coordinates, got " + std::to_string(x0.size()));
    orbmorse::MorseCertificate cert = orbmorse::assert_morse(model);
    Eigen::VectorXd start = Eigen::Map<const Eigen::VectorXd>(
        x0.data(), static_cast<Eigen::Index>(x0.size()));
    orbmorse::Trajectory traj =
        orbmorse::integrate(model, start, field_of(field), t_max, {}, &cert.points);
    return dump(orbmorse::trajectory_json(traj, &cert.points));
  }, py::arg("model_json"), py::arg("x0"), py::arg("field") = "neg", py::arg("t_max") = 50.0,
     "Gradient-flow trajectory (JSON) from a start point");

  m.def("basin_census", [](const std::string& model_json, int seeds,
                           unsigned long long rng_seed, double t_max) {
    orbmorse::QuotientModel model = orbmorse::parse_model(parse_doc(model_json));
    orbmorse::MorseCertificate cert = orbmorse::assert_morse(model);
    return dump(orbmorse::census_json(
        orbmorse::basin_census(model, cert.points, seeds, rng_seed, t_max), cert.points));
  }, py::arg("model_json"), py::arg("seeds"), py::arg("rng_seed") = 1,
     py::arg("t_max") = 50.0, "Random-start downhill census (JSON) of a model");

  m.def("kummer_model_json", [] { return dump(orbmorse::kummer_model_json()); },
        "Builtin model: 4-torus modulo the sign involution");
  m.def("teardrop_data_json", [] { return dump(orbmorse::teardrop_data_json()); },
        "Builtin critical data: weighted projective line (1, 2)");
  m.def("weighted_projective_data_json", [](const std::vector<long long>& weights) {
    return dump(orbmorse::weighted_projective_data_json(weights));
  }, py::arg("weights"), "Builtin critical data: weighted projective space");
  m.def("k3_resolution_levels_json",
        [] { return dump(orbmorse::resolution_levels_json(orbmorse::k3_resolution_levels())); },
        "Builtin level-by-level ranks of the resolved 4-torus quotient");
  m.def("k3_assembled_ranks",
        [] { return orbmorse::assemble_even_ranks(orbmorse::k3_resolution_levels()); },
        "Betti numbers assembled from the builtin resolution levels");
}
