#include "orbmorse/io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>

#include "orbmorse/errors.hpp"

namespace orbmorse {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& what,
                  std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) known = known || it.key() == key;
    if (!known) throw FileFormatError(what + ": unknown key \"" + it.key() + "\"");
  }
}

const json& require(const json& obj, const char* key, const std::string& what) {
  auto it = obj.find(key);
  if (it == obj.end()) throw FileFormatError(what + ": missing key \"" + key + "\"");
  return *it;
}

long long require_integer(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw FileFormatError(what + ": expected an integer");
  return v.get<long long>();
}

double require_number(const json& v, const std::string& what) {
  if (!v.is_number()) throw FileFormatError(what + ": expected a number");
  return v.get<double>();
}

std::string require_string(const json& v, const std::string& what) {
  if (!v.is_string()) throw FileFormatError(what + ": expected a string");
  return v.get<std::string>();
}

struct ParsedMatrix {
  Eigen::MatrixXd values;
  std::vector<Rational> exact;  // row-major; empty when any entry was inexact
};

ParsedMatrix parse_flat_matrix(const json& arr, int rows, int cols, const std::string& what) {
  if (!arr.is_array())
    throw FileFormatError(what + ": expected a flat row-major array");
  if (static_cast<int>(arr.size()) != rows * cols)
    throw FileFormatError(what + ": expected " + std::to_string(rows * cols) + " entries, got " +
                          std::to_string(arr.size()));
  ParsedMatrix out;
  out.values.resize(rows, cols);
  out.exact.reserve(arr.size());
  bool exact = true;
  for (int i = 0; i < rows * cols; ++i) {
    const json& e = arr[i];
    double v;
    if (e.is_string()) {
      Rational r = Rational::parse(e.get<std::string>());
      v = r.to_double();
      if (exact) out.exact.push_back(r);
    } else if (e.is_number_integer()) {
      long long n = e.get<long long>();
      v = static_cast<double>(n);
      if (exact) out.exact.push_back(Rational(n));
    } else if (e.is_number()) {
      v = e.get<double>();
      exact = false;
    } else {
      throw FileFormatError(what + ": entries must be numbers or \"p/q\" strings");
    }
    out.values(i / cols, i % cols) = v;
  }
  if (!exact) out.exact.clear();
  return out;
}

int square_side(std::size_t flat_size, const std::string& what) {
  int k = static_cast<int>(std::llround(std::sqrt(static_cast<double>(flat_size))));
  if (static_cast<std::size_t>(k) * k != flat_size)
    throw FileFormatError(what + ": flat array of length " + std::to_string(flat_size) +
                          " is not a square matrix");
  return k;
}

AffineIsometry isometry_from_parsed(int dim, ParsedMatrix lin, ParsedMatrix trans) {
  if (!lin.exact.empty() && !trans.exact.empty())
    return AffineIsometry::from_exact(dim, std::move(lin.exact), std::move(trans.exact));
  return AffineIsometry::from_float(std::move(lin.values), Eigen::VectorXd(trans.values.col(0)));
}

json matrix_entries_json(const Eigen::MatrixXd& M, const std::vector<Rational>& exact) {
  json arr = json::array();
  if (!exact.empty()) {
    for (const Rational& r : exact) arr.push_back(r.str());
  } else {
    for (int i = 0; i < M.rows(); ++i)
      for (int j = 0; j < M.cols(); ++j) arr.push_back(M(i, j));
  }
  return arr;
}

json vector_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

const char* terminal_name(Trajectory::Terminal t) {
  switch (t) {
    case Trajectory::Terminal::Converged:
      return "converged";
    case Trajectory::Terminal::MaxTimeReached:
      return "max_time_reached";
    case Trajectory::Terminal::LeftDomain:
      return "left_domain";
  }
  return "unknown";
}

}  // namespace

QuotientModel parse_model(const json& doc) {
  if (!doc.is_object()) throw FileFormatError("model: document must be an object");
  require_keys(doc, "model",
               {"dim", "lattice", "generators", "function", "complex_structure", "tolerances",
                "seeds"});

  int dim = static_cast<int>(require_integer(require(doc, "dim", "model"), "model dim"));
  if (dim < 1) throw FileFormatError("model dim: must be positive");
  bool lattice = false;
  if (doc.contains("lattice")) {
    if (!doc["lattice"].is_boolean()) throw FileFormatError("model lattice: expected a boolean");
    lattice = doc["lattice"].get<bool>();
  }

  const json& gens = require(doc, "generators", "model");
  if (!gens.is_array()) throw FileFormatError("model generators: expected an array");
  std::vector<AffineIsometry> generators;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::string what = "generator " + std::to_string(i);
    require_keys(gens[i], what, {"linear", "translation"});
    ParsedMatrix lin = parse_flat_matrix(require(gens[i], "linear", what), dim, dim, what + " linear");
    ParsedMatrix trans;
    if (gens[i].contains("translation")) {
      trans = parse_flat_matrix(gens[i]["translation"], dim, 1, what + " translation");
    } else {
      trans.values = Eigen::MatrixXd::Zero(dim, 1);
      trans.exact.assign(dim, Rational(0));
    }
    generators.push_back(isometry_from_parsed(dim, std::move(lin), std::move(trans)));
  }

  Expression f = Expression::parse(require_string(require(doc, "function", "model"), "model function"), dim);

  std::optional<ComplexStructure> J;
  if (doc.contains("complex_structure")) {
    ParsedMatrix jm = parse_flat_matrix(doc["complex_structure"], dim, dim, "complex_structure");
    J = ComplexStructure{std::move(jm.values)};
  }

  Tolerances tol;
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    require_keys(t, "tolerances",
                 {"newton_tol", "hessian_zero_rel", "orbit_tol", "invariance_tol",
                  "invariance_samples"});
    if (t.contains("newton_tol")) tol.newton_tol = require_number(t["newton_tol"], "newton_tol");
    if (t.contains("hessian_zero_rel"))
      tol.hessian_zero_rel = require_number(t["hessian_zero_rel"], "hessian_zero_rel");
    if (t.contains("orbit_tol")) tol.orbit_tol = require_number(t["orbit_tol"], "orbit_tol");
    if (t.contains("invariance_tol"))
      tol.invariance_tol = require_number(t["invariance_tol"], "invariance_tol");
    if (t.contains("invariance_samples"))
      tol.invariance_samples =
          static_cast<int>(require_integer(t["invariance_samples"], "invariance_samples"));
  }

  SeedPlan seeds;
  if (doc.contains("seeds")) {
    const json& s = doc["seeds"];
    require_keys(s, "seeds", {"grid", "random", "rng_seed"});
    if (s.contains("grid")) seeds.grid = static_cast<int>(require_integer(s["grid"], "seeds grid"));
    if (s.contains("random"))
      seeds.random = static_cast<int>(require_integer(s["random"], "seeds random"));
    if (s.contains("rng_seed"))
      seeds.rng_seed = static_cast<unsigned long long>(require_integer(s["rng_seed"], "seeds rng_seed"));
    if (seeds.grid < 0 || seeds.random < 0)
      throw FileFormatError("seeds: grid and random must be non-negative");
  }

  auto group = std::make_shared<FiniteActionGroup>(
      FiniteActionGroup::generate(generators, dim, lattice));
  return QuotientModel(std::move(group), std::move(f), std::move(J), tol, seeds);
}

QuotientModel load_model(const std::string& path) { return parse_model(read_json_file(path)); }

namespace {

CriticalPointData parse_critical_entry(const json& e, int ordinal) {
  std::string what = "critical entry " + std::to_string(ordinal);
  if (!e.is_object()) throw FileFormatError(what + ": expected an object");
  require_keys(e, what,
               {"location_label", "location", "value", "stabilizer", "index_action",
                "coindex_action", "index_dim", "coindex_dim", "complex_structure"});

  const json& stab_doc = require(e, "stabilizer", what);
  require_keys(stab_doc, what + " stabilizer", {"order", "generators"});
  long long declared_order = require_integer(require(stab_doc, "order", what), what + " order");
  if (declared_order < 1 || declared_order > 10000)
    throw FileFormatError(what + ": stabilizer order must be between 1 and 10000");
  const json& gen_docs = require(stab_doc, "generators", what);
  if (!gen_docs.is_array()) throw FileFormatError(what + " stabilizer generators: expected an array");

  // Tangent dimension from whichever fields are present; all must agree.
  int n = -1;
  auto propose = [&](int candidate, const char* source) {
    if (n < 0) n = candidate;
    if (n != candidate)
      throw FileFormatError(what + ": inconsistent tangent dimension from " + source);
  };
  if (!gen_docs.empty()) propose(square_side(gen_docs[0].size(), what), "stabilizer generators");
  if (e.contains("complex_structure"))
    propose(square_side(e["complex_structure"].size(), what), "complex_structure");
  if (e.contains("location")) propose(static_cast<int>(e["location"].size()), "location");
  if (e.contains("index_dim") && e.contains("coindex_dim"))
    propose(static_cast<int>(require_integer(e["index_dim"], what) +
                             require_integer(e["coindex_dim"], what)),
            "index_dim + coindex_dim");
  if (n < 0)
    throw FileFormatError(what + ": tangent dimension is underdetermined; give index_dim and coindex_dim");

  std::vector<AffineIsometry> gens;
  std::vector<Eigen::MatrixXd> tangent_action;
  for (std::size_t i = 0; i < gen_docs.size(); ++i) {
    ParsedMatrix lin = parse_flat_matrix(gen_docs[i], n, n,
                                         what + " stabilizer generator " + std::to_string(i));
    tangent_action.push_back(lin.values);
    ParsedMatrix trans;
    trans.values = Eigen::MatrixXd::Zero(n, 1);
    trans.exact.assign(n, Rational(0));
    gens.push_back(isometry_from_parsed(n, std::move(lin), std::move(trans)));
  }
  auto closure = std::make_shared<FiniteActionGroup>(FiniteActionGroup::generate(gens, n, false));
  std::shared_ptr<const FiniteActionGroup> group;
  if (closure->order() == declared_order) {
    group = std::move(closure);
  } else if (gens.size() == 1 && declared_order > closure->order()) {
    // A single generator whose tangent matrix closes up early declares a
    // cyclic group acting non-faithfully. Realize the abstract cyclic group
    // faithfully as rotations of an auxiliary plane; the declared matrices
    // enter through the representations below, whose homomorphism check
    // enforces that the matrix order divides the declared order.
    constexpr double kTwoPi = 6.28318530717958647692;
    double angle = kTwoPi / static_cast<double>(declared_order);
    Eigen::MatrixXd rot(2, 2);
    rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    group = std::make_shared<FiniteActionGroup>(FiniteActionGroup::generate(
        {AffineIsometry::from_float(rot, Eigen::VectorXd::Zero(2))}, 2, false,
        static_cast<int>(declared_order)));
  } else {
    throw FileFormatError(what + ": stabilizer closure has order " +
                          std::to_string(closure->order()) + ", declared " +
                          std::to_string(declared_order));
  }

  auto parse_action = [&](const char* key, const char* dim_key) {
    const json& mats = require(e, key, what);
    if (!mats.is_array()) throw FileFormatError(what + " " + key + ": expected an array");
    if (mats.size() != gens.size())
      throw FileFormatError(what + " " + key + ": one matrix per stabilizer generator required");
    int k = -1;
    if (e.contains(dim_key))
      k = static_cast<int>(require_integer(e[dim_key], what + " " + dim_key));
    std::vector<Eigen::MatrixXd> action;
    for (std::size_t i = 0; i < mats.size(); ++i) {
      int side = square_side(mats[i].size(), what + " " + key);
      if (k < 0) k = side;
      if (side != k) throw FileFormatError(what + " " + key + ": matrix sizes disagree");
      action.push_back(
          parse_flat_matrix(mats[i], k, k, what + " " + key + " " + std::to_string(i)).values);
    }
    if (k < 0)
      throw FileFormatError(what + ": " + std::string(dim_key) +
                            " is required when the stabilizer has no generators");
    return std::pair<int, std::vector<Eigen::MatrixXd>>(k, std::move(action));
  };
  auto [ind_dim, ind_action] = parse_action("index_action", "index_dim");
  auto [coind_dim, coind_action] = parse_action("coindex_action", "coindex_dim");
  if (ind_dim + coind_dim != n)
    throw FileFormatError(what + ": index and coindex dimensions must add up to " +
                          std::to_string(n));

  CriticalPointData point;
  point.value = require_number(require(e, "value", what), what + " value");
  point.label = e.contains("location_label") ? require_string(e["location_label"], what)
                                             : "c" + std::to_string(ordinal);
  if (e.contains("location")) {
    ParsedMatrix loc = parse_flat_matrix(e["location"], n, 1, what + " location");
    point.location = loc.values.col(0);
    point.label = e.contains("location_label") ? point.label : location_label(*point.location);
  }
  point.tangent_rep = RealRepresentation::from_action(group, n, tangent_action);
  point.index_rep = RealRepresentation::from_action(group, ind_dim, ind_action);
  point.coindex_rep = RealRepresentation::from_action(group, coind_dim, coind_action);
  point.orientable = is_orientation_preserving(point.index_rep);
  if (e.contains("complex_structure")) {
    ParsedMatrix jm = parse_flat_matrix(e["complex_structure"], n, n, what + " complex_structure");
    ComplexStructure J{std::move(jm.values)};
    J.validate();
    point.complex_structure = std::move(J);
  }
  point.stabilizer = std::move(group);
  return point;
}

}  // namespace

std::vector<CriticalPointData> parse_critical_data(const json& doc) {
  const json* entries = nullptr;
  if (doc.is_array()) {
    entries = &doc;
  } else if (doc.is_object()) {
    require_keys(doc, "critical data", {"entries", "diagnostics", "min_pair_distance"});
    entries = &require(doc, "entries", "critical data");
  } else {
    throw FileFormatError("critical data: expected an object or an array");
  }
  if (!entries->is_array()) throw FileFormatError("critical data entries: expected an array");

  std::vector<CriticalPointData> out;
  for (std::size_t i = 0; i < entries->size(); ++i)
    out.push_back(parse_critical_entry((*entries)[i], static_cast<int>(i)));
  return out;
}

std::vector<CriticalPointData> load_critical_data(const std::string& path) {
  return parse_critical_data(read_json_file(path));
}

json critical_entry_json(const CriticalPointData& point) {
  const FiniteActionGroup& stab = *point.stabilizer;
  json entry;
  entry["location_label"] = point.label;
  if (point.location) entry["location"] = vector_json(*point.location);
  entry["value"] = point.value;

  json gens = json::array();
  json ind = json::array();
  json coind = json::array();
  const RealRepresentation* tan = point.tangent_rep.group_ptr() ? &point.tangent_rep : nullptr;
  for (int g : stab.generator_indices()) {
    const AffineIsometry& iso = stab.element(g);
    // Exact entries survive as strings whenever the group itself acts on the
    // tangent space (the tangent action then equals the element linear part).
    bool on_tangent = !tan || (tan->action(g).rows() == iso.linear.rows() &&
                               (tan->action(g).array() == iso.linear.array()).all());
    if (on_tangent)
      gens.push_back(matrix_entries_json(iso.linear, iso.linear_exact));
    else
      gens.push_back(matrix_entries_json(tan->action(g), {}));
    ind.push_back(matrix_entries_json(point.index_rep.action(g), {}));
    coind.push_back(matrix_entries_json(point.coindex_rep.action(g), {}));
  }
  entry["stabilizer"] = {{"order", stab.order()}, {"generators", gens}};
  entry["index_action"] = ind;
  entry["coindex_action"] = coind;
  entry["index_dim"] = point.index_rep.dim();
  entry["coindex_dim"] = point.coindex_rep.dim();
  if (point.complex_structure)
    entry["complex_structure"] = matrix_entries_json(point.complex_structure->J, {});
  return entry;
}

json critical_data_json(const std::vector<CriticalPointData>& points) {
  json entries = json::array();
  for (const CriticalPointData& p : points) entries.push_back(critical_entry_json(p));
  return json{{"entries", entries}};
}

json certificate_json(const MorseCertificate& cert) {
  json doc = critical_data_json(cert.points);
  doc["diagnostics"] = {{"seeds_total", cert.diagnostics.seeds_total},
                        {"converged", cert.diagnostics.converged},
                        {"diverged", cert.diagnostics.diverged},
                        {"singular", cert.diagnostics.singular},
                        {"non_finite", cert.diagnostics.non_finite}};
  doc["min_pair_distance"] = cert.min_pair_distance;
  return doc;
}

ExponentPolynomial parse_polynomial(const json& doc) {
  if (!doc.is_object()) throw FileFormatError("polynomial: expected an object");
  ExponentPolynomial p;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    Rational e = Rational::parse(it.key());
    if (e < Rational(0)) throw FileFormatError("polynomial: negative exponent " + it.key());
    p.add_term(e, require_integer(it.value(), "polynomial coefficient of t^" + it.key()));
  }
  return p;
}

ExponentPolynomial load_polynomial(const std::string& path) {
  return parse_polynomial(read_json_file(path));
}

json polynomial_json(const ExponentPolynomial& p) {
  json doc = json::object();
  for (const auto& [e, c] : p.terms()) doc[e.str()] = c;
  return doc;
}

json sectors_json(const std::vector<InertiaSectorDatum>& sectors,
                  const std::vector<CriticalPointData>& cpd) {
  json out = json::array();
  for (const InertiaSectorDatum& s : sectors) {
    json sector;
    sector["base"] = cpd[s.base_index].label;
    sector["class_rep_order"] = s.rep_order;
    sector["class_size"] = s.class_size;
    sector["ind_fixed_dim"] = s.ind_fixed_dim;
    sector["coind_fixed_dim"] = s.coind_fixed_dim;
    sector["age"] = s.age ? json(s.age->str()) : json(nullptr);
    sector["orientable_pair"] = s.orientable_pair;
    out.push_back(std::move(sector));
  }
  return out;
}

json report_json(const InequalityReport& report) {
  json doc;
  doc["morse"] = polynomial_json(report.morse);
  doc["poincare"] = polynomial_json(report.poincare);
  doc["remainder"] = report.remainder ? polynomial_json(*report.remainder) : json(nullptr);
  doc["consistent"] = report.consistent;
  doc["euler_check"] = report.euler_check ? json(*report.euler_check) : json(nullptr);
  return doc;
}

json trajectory_json(const Trajectory& traj, const std::vector<CriticalPointData>* certified) {
  json states = json::array();
  for (const Eigen::VectorXd& s : traj.states) states.push_back(vector_json(s));
  json doc;
  doc["times"] = traj.times;
  doc["states"] = std::move(states);
  doc["f_values"] = traj.f_values;
  doc["terminal"] = terminal_name(traj.terminal);
  if (traj.converged_to >= 0 && certified)
    doc["converged_to"] = (*certified)[traj.converged_to].label;
  else if (traj.converged_to >= 0)
    doc["converged_to"] = traj.converged_to;
  else
    doc["converged_to"] = nullptr;
  return doc;
}

json census_json(const BasinCensus& census, const std::vector<CriticalPointData>& certified) {
  json hits = json::object();
  for (const auto& [idx, count] : census.hits) hits[certified[idx].label] = count;
  return json{{"total", census.total}, {"non_converged", census.non_converged}, {"hits", hits}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileFormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FileFormatError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw FileFormatError("cannot open " + path + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw FileFormatError("failed writing " + path);
}

}  // namespace orbmorse
