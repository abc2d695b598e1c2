#include "orbmorse/examples.hpp"

#include <cmath>

#include "orbmorse/errors.hpp"

namespace orbmorse {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

double snapped(double v) {
  return std::abs(v - std::round(v)) < 1e-12 ? std::round(v) : v;
}

// Flat row-major rotation blocks: block j of `blocks` is rotated by angle[j].
nlohmann::json rotation_block_matrix(const std::vector<double>& angles) {
  const int k = 2 * static_cast<int>(angles.size());
  std::vector<double> m(static_cast<std::size_t>(k) * k, 0.0);
  for (std::size_t j = 0; j < angles.size(); ++j) {
    double c = snapped(std::cos(angles[j]));
    double s = snapped(std::sin(angles[j]));
    int r = 2 * static_cast<int>(j);
    m[static_cast<std::size_t>(r) * k + r] = c;
    m[static_cast<std::size_t>(r) * k + r + 1] = -s;
    m[static_cast<std::size_t>(r + 1) * k + r] = s;
    m[static_cast<std::size_t>(r + 1) * k + r + 1] = c;
  }
  return nlohmann::json(m);
}

nlohmann::json standard_j_matrix(int n) {
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  for (int b = 0; b < n; b += 2) {
    m[static_cast<std::size_t>(b) * n + b + 1] = -1.0;
    m[static_cast<std::size_t>(b + 1) * n + b] = 1.0;
  }
  return nlohmann::json(m);
}

}  // namespace

nlohmann::json kummer_model_json() {
  nlohmann::json model;
  model["dim"] = 4;
  model["lattice"] = true;
  nlohmann::json generator;
  std::vector<std::string> lin(16, "0");
  for (int i = 0; i < 4; ++i) lin[static_cast<std::size_t>(i) * 4 + i] = "-1";
  generator["linear"] = lin;
  generator["translation"] = std::vector<std::string>(4, "0");
  model["generators"] = nlohmann::json::array({generator});
  model["function"] = "cos(2*pi*x1) + cos(2*pi*x2) + cos(2*pi*x3) + cos(2*pi*x4)";
  model["complex_structure"] = standard_j_matrix(4);
  model["seeds"] = {{"grid", 4}, {"random", 64}, {"rng_seed", 1}};
  return model;
}

nlohmann::json weighted_projective_data_json(const std::vector<long long>& weights) {
  if (weights.empty()) throw FileFormatError("weighted projective space needs at least one weight");
  for (long long q : weights)
    if (q < 1) throw FileFormatError("weights must be positive integers");

  const int n = static_cast<int>(weights.size()) - 1;
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 0; i <= n; ++i) {
    nlohmann::json entry;
    entry["location_label"] = "c" + std::to_string(i);
    entry["value"] = i;

    std::vector<double> tangent_angles, index_angles, coindex_angles;
    for (int j = 0; j <= n; ++j) {
      if (j == i) continue;
      double angle = kTwoPi * static_cast<double>(weights[j]) / static_cast<double>(weights[i]);
      tangent_angles.push_back(angle);
      (j < i ? index_angles : coindex_angles).push_back(angle);
    }

    nlohmann::json stabilizer;
    stabilizer["order"] = weights[i];
    nlohmann::json generators = nlohmann::json::array();
    nlohmann::json index_action = nlohmann::json::array();
    nlohmann::json coindex_action = nlohmann::json::array();
    if (weights[i] > 1) {
      generators.push_back(rotation_block_matrix(tangent_angles));
      index_action.push_back(rotation_block_matrix(index_angles));
      coindex_action.push_back(rotation_block_matrix(coindex_angles));
    }
    stabilizer["generators"] = generators;
    entry["stabilizer"] = stabilizer;
    entry["index_action"] = index_action;
    entry["coindex_action"] = coindex_action;
    entry["index_dim"] = 2 * i;
    entry["coindex_dim"] = 2 * (n - i);
    entry["complex_structure"] = standard_j_matrix(2 * n);
    entries.push_back(std::move(entry));
  }
  return nlohmann::json{{"entries", entries}};
}

nlohmann::json teardrop_data_json() { return weighted_projective_data_json({1, 2}); }

std::vector<ResolutionLevel> k3_resolution_levels() {
  auto choose4 = [](int i) { return std::vector<long long>{1, 4, 6, 4, 1}[i]; };
  std::vector<ResolutionLevel> levels;
  for (int i = 0; i <= 4; ++i) {
    ResolutionLevel level;
    level.level = i;
    for (const auto& [deg, rank] : resolved_cell_rank(i)) level.relative_ranks[deg] = choose4(i) * rank;
    levels.push_back(std::move(level));
  }
  return levels;
}

nlohmann::json resolution_levels_json(const std::vector<ResolutionLevel>& levels) {
  nlohmann::json out = nlohmann::json::array();
  for (const ResolutionLevel& level : levels) {
    nlohmann::json ranks = nlohmann::json::object();
    for (const auto& [deg, rank] : level.relative_ranks) ranks[std::to_string(deg)] = rank;
    out.push_back({{"level", level.level}, {"relative_ranks", ranks}});
  }
  return nlohmann::json{{"levels", out}};
}

}  // namespace orbmorse
