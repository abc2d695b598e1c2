#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "orbmorse/critical.hpp"
#include "orbmorse/errors.hpp"
#include "orbmorse/examples.hpp"
#include "orbmorse/io.hpp"
#include "orbmorse/morse_poly.hpp"

using nlohmann::json;
using orbmorse::FileFormatError;

namespace {

json minimal_entry() {
  return json{{"location_label", "p"},
              {"value", 0.0},
              {"stabilizer", {{"order", 2}, {"generators", {{-1.0, 0.0, 0.0, -1.0}}}}},
              {"index_action", {{-1.0, 0.0, 0.0, -1.0}}},
              {"coindex_action", json::array({json::array()})},
              {"index_dim", 2},
              {"coindex_dim", 0}};
}

}  // namespace

TEST_CASE("builtin 4-torus quotient model parses with exact group data") {
  auto model = orbmorse::parse_model(orbmorse::kummer_model_json());
  CHECK(model.dim() == 4);
  CHECK(model.lattice());
  CHECK(model.group().order() == 2);
  CHECK(!model.group().element(1).linear_exact.empty());
  CHECK(model.complex_structure().has_value());
  CHECK(model.seeds().grid == 4);
  CHECK(model.seeds().random == 64);
}

TEST_CASE("model files reject unknown and missing keys") {
  json doc = orbmorse::kummer_model_json();
  json bad = doc;
  bad["extra"] = 1;
  CHECK_THROWS_AS(orbmorse::parse_model(bad), FileFormatError);

  bad = doc;
  bad["generators"][0]["shift"] = 0;
  CHECK_THROWS_AS(orbmorse::parse_model(bad), FileFormatError);

  bad = doc;
  bad["tolerances"]["newton"] = 1e-9;
  CHECK_THROWS_AS(orbmorse::parse_model(bad), FileFormatError);

  bad = doc;
  bad.erase("function");
  CHECK_THROWS_AS(orbmorse::parse_model(bad), FileFormatError);

  bad = doc;
  bad["generators"][0]["linear"] = {1, 0, 0};  // not a square matrix
  CHECK_THROWS_AS(orbmorse::parse_model(bad), FileFormatError);

  bad = doc;
  bad["generators"][0]["linear"][0] = "one";
  CHECK_THROWS_AS(orbmorse::parse_model(bad), FileFormatError);

  bad = doc;
  bad["seeds"]["random"] = -3;
  CHECK_THROWS_AS(orbmorse::parse_model(bad), FileFormatError);
}

TEST_CASE("critical data survives an emit and parse cycle") {
  auto model = orbmorse::parse_model(orbmorse::kummer_model_json());
  auto cert = orbmorse::assert_morse(model);
  json doc = orbmorse::certificate_json(cert);

  auto reread = orbmorse::parse_critical_data(doc);
  REQUIRE(reread.size() == cert.points.size());
  for (std::size_t i = 0; i < reread.size(); ++i) {
    CHECK(reread[i].value == doctest::Approx(cert.points[i].value));
    CHECK(reread[i].label == cert.points[i].label);
    CHECK(reread[i].stabilizer->order() == cert.points[i].stabilizer->order());
    CHECK(reread[i].index_rep.dim() == cert.points[i].index_rep.dim());
    CHECK(reread[i].coindex_rep.dim() == cert.points[i].coindex_rep.dim());
    CHECK(reread[i].orientable == cert.points[i].orientable);
  }
  // The emitted document is a fixed point of parse followed by emit.
  CHECK(orbmorse::critical_data_json(reread) == orbmorse::critical_data_json(cert.points));

  // The inertia computation sees the same data either way.
  auto s1 = orbmorse::inertia_sectors(cert.points);
  auto s2 = orbmorse::inertia_sectors(reread);
  CHECK(orbmorse::orbifold_morse_polynomial(s1).str() == orbmorse::orbifold_morse_polynomial(s2).str());

  // Bare entry arrays are accepted as a shorthand for {"entries": ...}.
  auto bare = orbmorse::parse_critical_data(doc["entries"]);
  CHECK(bare.size() == reread.size());
}

TEST_CASE("weighted projective data round-trips including gerby stabilizers") {
  for (const std::vector<long long>& w :
       {std::vector<long long>{1, 2, 3, 4}, {2, 4}, {5, 5, 5}}) {
    json doc = orbmorse::weighted_projective_data_json(w);
    auto pts = orbmorse::parse_critical_data(doc);
    REQUIRE(pts.size() == w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
      CHECK(pts[i].stabilizer->order() == w[i]);

    auto again = orbmorse::parse_critical_data(orbmorse::critical_data_json(pts));
    auto p1 = orbmorse::orbifold_morse_polynomial(orbmorse::inertia_sectors(pts));
    auto p2 = orbmorse::orbifold_morse_polynomial(orbmorse::inertia_sectors(again));
    CHECK(p1.str() == p2.str());
  }
}

TEST_CASE("stabilizer declarations are validated") {
  // Declared order 4 with an order-2 matrix is a legal non-faithful action.
  json entry = minimal_entry();
  entry["stabilizer"]["order"] = 4;
  auto pts = orbmorse::parse_critical_data(json::array({entry}));
  CHECK(pts[0].stabilizer->order() == 4);
  CHECK(pts[0].tangent_rep.action(1).isApprox(-Eigen::Matrix2d::Identity()));

  // Order 3 is not a multiple of the matrix order, so no action exists.
  entry["stabilizer"]["order"] = 3;
  CHECK_THROWS_AS(orbmorse::parse_critical_data(json::array({entry})), orbmorse::Error);

  // Multiple generators with an order mismatch cannot be realized uniquely.
  entry = minimal_entry();
  entry["stabilizer"]["order"] = 4;
  entry["stabilizer"]["generators"].push_back({1.0, 0.0, 0.0, 1.0});
  entry["index_action"].push_back({1.0, 0.0, 0.0, 1.0});
  entry["coindex_action"].push_back(json::array());
  CHECK_THROWS_AS(orbmorse::parse_critical_data(json::array({entry})), FileFormatError);

  entry = minimal_entry();
  entry["stabilizer"]["order"] = 0;
  CHECK_THROWS_AS(orbmorse::parse_critical_data(json::array({entry})), FileFormatError);
  entry["stabilizer"]["order"] = 20000;
  CHECK_THROWS_AS(orbmorse::parse_critical_data(json::array({entry})), FileFormatError);

  // Dimensions must be consistent with the declared actions.
  entry = minimal_entry();
  entry["index_dim"] = 1;
  CHECK_THROWS_AS(orbmorse::parse_critical_data(json::array({entry})), FileFormatError);

  entry = minimal_entry();
  entry["unexpected"] = true;
  CHECK_THROWS_AS(orbmorse::parse_critical_data(json::array({entry})), FileFormatError);
}

TEST_CASE("polynomial files round-trip and reject malformed terms") {
  json doc = {{"0", 1}, {"2", 22}, {"4", 1}};
  auto p = orbmorse::parse_polynomial(doc);
  CHECK(p.str() == "1 + 22*t^2 + t^4");
  CHECK(orbmorse::polynomial_json(p) == doc);

  auto q = orbmorse::parse_polynomial(json{{"1/2", 3}});
  CHECK(q.coefficient(orbmorse::Rational(1, 2)) == 3);
  CHECK(orbmorse::polynomial_json(q) == json{{"1/2", 3}});

  CHECK_THROWS_AS(orbmorse::parse_polynomial(json{{"-1", 2}}), FileFormatError);
  CHECK_THROWS_AS(orbmorse::parse_polynomial(json{{"2", 1.5}}), FileFormatError);
  CHECK_THROWS_AS(orbmorse::parse_polynomial(json{{"1/x", 2}}), FileFormatError);
}

TEST_CASE("json files read and write through the error-reporting wrappers") {
  std::string path = "/tmp/orbmorse_io_test.json";
  json doc = {{"a", 1}, {"b", {1, 2, 3}}};
  orbmorse::write_json_file(path, doc);
  CHECK(orbmorse::read_json_file(path) == doc);

  CHECK_THROWS_AS(orbmorse::read_json_file("/tmp/orbmorse_does_not_exist.json"),
                  FileFormatError);

  std::ofstream(path) << "{ not json";
  try {
    orbmorse::read_json_file(path);
    FAIL("expected FileFormatError");
  } catch (const FileFormatError& e) {
    CHECK(std::string(e.what()).find(path) != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("resolution level table has the expected shape") {
  auto levels = orbmorse::k3_resolution_levels();
  REQUIRE(levels.size() == 5);
  json doc = orbmorse::resolution_levels_json(levels);
  REQUIRE(doc.contains("levels"));
  REQUIRE(doc["levels"].size() == 5);
  CHECK(doc["levels"][0]["relative_ranks"] == json{{"0", 1}, {"2", 1}});
  CHECK(doc["levels"][1]["relative_ranks"] == json{{"2", 4}});
  CHECK(doc["levels"][2]["relative_ranks"] == json{{"2", 12}});
  CHECK(doc["levels"][3]["relative_ranks"] == json{{"2", 4}});
  CHECK(doc["levels"][4]["relative_ranks"] == json{{"2", 1}, {"4", 1}});
}
