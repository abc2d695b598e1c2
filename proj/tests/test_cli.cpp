// End-to-end tests of the command-line tool: every invocation here shells out
// to the real binary (path injected by the build as ORBMORSE_CLI_PATH), so
// argument parsing, exit codes and output formatting are all exercised.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;  // stdout and stderr combined
};

Run run(const std::string& args) {
  std::string cmd = std::string(ORBMORSE_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string path(const std::string& name) { return "/tmp/orbmorse_cli_" + name; }

void write_poly(const std::string& file, const nlohmann::json& doc) {
  std::ofstream(file) << doc.dump(2) << "\n";
}

}  // namespace

TEST_CASE("model to orbifold polynomial pipeline") {
  REQUIRE(run("example kummer --out " + path("model.json")).code == 0);

  Run analyze = run("analyze " + path("model.json") + " --json --certify " + path("cert.json"));
  REQUIRE(analyze.code == 0);
  auto doc = nlohmann::json::parse(analyze.out);
  CHECK(doc["entries"].size() == 16);
  CHECK(doc["min_pair_distance"].get<double>() == doctest::Approx(0.5));

  CHECK(run("poly " + path("cert.json")).out == "1 + 6*t^2 + t^4\n");
  CHECK(run("poly " + path("cert.json") + " --inertia").out == "17 + 6*t^2 + t^4\n");
  CHECK(run("poly " + path("cert.json") + " --orbifold").out == "1 + 22*t^2 + t^4\n");

  Run table = run("analyze " + path("model.json"));
  CHECK(table.code == 0);
  CHECK(table.out.find("16 critical orbits") != std::string::npos);
  CHECK(table.out.find("min pair distance 0.5") != std::string::npos);

  Run sectors = run("inertia " + path("cert.json"));
  CHECK(sectors.code == 0);
  CHECK(sectors.out.find("32 sectors over 16 critical orbits") != std::string::npos);
}

TEST_CASE("inequality check and strict mode") {
  Run plain = run("poly " + path("cert.json") + " --plain --json");
  REQUIRE(plain.code == 0);
  auto M = nlohmann::json::parse(plain.out);
  write_poly(path("morse.json"), M);

  Run check = run("check " + path("morse.json") + " " + path("morse.json"));
  CHECK(check.code == 0);
  CHECK(check.out.find("remainder:  0") != std::string::npos);
  CHECK(check.out.find("consistent: yes") != std::string::npos);
  CHECK(check.out.find("euler:      pass") != std::string::npos);

  // A Poincare polynomial exceeding the Morse counts in one degree cannot be
  // reconciled by any non-negative remainder.
  auto P = M;
  P["1"] = 1;
  write_poly(path("poincare_bad.json"), P);
  Run loose = run("check " + path("morse.json") + " " + path("poincare_bad.json"));
  CHECK(loose.code == 0);
  CHECK(loose.out.find("consistent: no") != std::string::npos);
  Run strict = run("check " + path("morse.json") + " " + path("poincare_bad.json") + " --strict");
  CHECK(strict.code == 1);
  CHECK(strict.out.find("error:") != std::string::npos);
}

TEST_CASE("betti numbers from a lacunary polynomial") {
  Run betti = run("betti " + path("morse.json"));
  CHECK(betti.code == 0);
  CHECK(betti.out == "b_0 = 1\nb_1 = 0\nb_2 = 6\nb_3 = 0\nb_4 = 1\n");

  Run as_json = run("betti " + path("morse.json") + " --json");
  CHECK(nlohmann::json::parse(as_json.out)["betti"] ==
        nlohmann::json::array({1, 0, 6, 0, 1}));

  write_poly(path("dense.json"), {{"1", 1}, {"2", 1}});
  Run dense = run("betti " + path("dense.json"));
  CHECK(dense.code == 1);
  CHECK(dense.out.find("error:") != std::string::npos);
}

TEST_CASE("flow trajectories and census") {
  Run traj = run("flow " + path("model.json") + " --x0 0.3,0.4,0.2,0.1 --field neg --json");
  REQUIRE(traj.code == 0);
  auto doc = nlohmann::json::parse(traj.out);
  CHECK(doc["terminal"] == "converged");
  CHECK(doc["converged_to"] == "(0.5, 0.5, 0.5, 0.5)");

  Run census = run("flow " + path("model.json") + " --seeds 25 --field neg");
  CHECK(census.code == 0);
  CHECK(census.out.find("seeds 25: converged 25, non-converged 0") != std::string::npos);

  CHECK(run("flow " + path("model.json") + " --x0 0.1,0.2").code == 2);
  CHECK(run("flow " + path("model.json")).code == 2);
  CHECK(run("flow " + path("model.json") + " --x0 0.1,0.2,0.3,0.4 --seeds 5").code == 2);
}

TEST_CASE("builtin data examples feed the polynomial commands") {
  REQUIRE(run("example teardrop --out " + path("td.json")).code == 0);
  CHECK(run("poly " + path("td.json") + " --orbifold").out == "1 + t + t^2\n");
  CHECK(run("poly " + path("td.json") + " --inertia").out == "2 + t^2\n");

  REQUIRE(run("example wps 1 2 3 4 --out " + path("wps.json")).code == 0);
  CHECK(run("poly " + path("wps.json")).out == "1 + t^2 + t^4 + t^6\n");

  Run k3 = run("example k3");
  CHECK(k3.code == 0);
  CHECK(nlohmann::json::parse(k3.out)["levels"].size() == 5);
}

TEST_CASE("malformed invocations exit with code 2") {
  CHECK(run("analyze /tmp/orbmorse_no_such_file.json").code == 2);
  CHECK(run("example escher").code == 2);
  CHECK(run("example kummer 1 2").code == 2);
  CHECK(run("example wps").code == 2);
  CHECK(run("poly " + path("cert.json") + " --plain --orbifold").code == 2);
  CHECK(run("analyze").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("--bogus").code == 2);
  CHECK(run("--help").code == 0);
  CHECK(run("analyze --help").code == 0);
}

TEST_CASE("identical invocations produce identical bytes") {
  Run a = run("analyze " + path("model.json") + " --json");
  Run b = run("analyze " + path("model.json") + " --json");
  CHECK(a.out == b.out);
  CHECK(run("example wps 2 4").out == run("example wps 2 4").out);

  // Output does not depend on how the seed sweep is scheduled.
  Run serial = run("analyze " + path("model.json") + " --json");
  setenv("ORBIFOLD_MORSE_THREADS", "1", 1);
  Run threaded = run("analyze " + path("model.json") + " --json");
  unsetenv("ORBIFOLD_MORSE_THREADS");
  CHECK(serial.out == threaded.out);
}
