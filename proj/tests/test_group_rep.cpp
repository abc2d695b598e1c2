#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <memory>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "orbmorse/errors.hpp"
#include "orbmorse/group.hpp"
#include "orbmorse/representation.hpp"

using orbmorse::AffineIsometry;
using orbmorse::ComplexStructure;
using orbmorse::FiniteActionGroup;
using orbmorse::Rational;
using orbmorse::RealRepresentation;

namespace {

constexpr double kPi = 3.14159265358979323846;

AffineIsometry exact_linear(int n, std::vector<long long> entries) {
  std::vector<Rational> lin;
  lin.reserve(entries.size());
  for (long long e : entries) lin.emplace_back(e);
  return AffineIsometry::from_exact(n, std::move(lin), std::vector<Rational>(n, Rational(0)));
}

AffineIsometry rotation2(double angle) {
  Eigen::MatrixXd R(2, 2);
  R << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return AffineIsometry::from_float(R, Eigen::VectorXd::Zero(2));
}

// Block-diagonal rotation on R^{2m} by the given angles.
AffineIsometry block_rotation(const std::vector<double>& angles) {
  int n = 2 * static_cast<int>(angles.size());
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < static_cast<int>(angles.size()); ++j) {
    double c = std::cos(angles[j]), s = std::sin(angles[j]);
    R.block<2, 2>(2 * j, 2 * j) << c, -s, s, c;
  }
  return AffineIsometry::from_float(R, Eigen::VectorXd::Zero(n));
}

// Permutation matrix sending basis vector i to basis vector perm[i].
AffineIsometry permutation(const std::vector<int>& perm) {
  int n = static_cast<int>(perm.size());
  std::vector<long long> lin(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) lin[static_cast<std::size_t>(perm[i]) * n + i] = 1;
  return exact_linear(n, std::move(lin));
}

}  // namespace

TEST_CASE("generation basics") {
  auto trivial = FiniteActionGroup::generate({}, 3, false);
  CHECK(trivial.order() == 1);
  CHECK(trivial.element(0).linear.isIdentity(0.0));

  auto z2 = FiniteActionGroup::generate({exact_linear(1, {-1})}, 1, false);
  CHECK(z2.order() == 2);
  CHECK(z2.multiply(1, 1) == 0);
  CHECK(z2.inverse(1) == 1);
  CHECK(z2.element_order(1) == 2);

  // Rotation by 2*pi/5 generates a cyclic group; oracle: the smallest k > 0
  // with R^k = I found by brute-force matrix powers.
  auto z5 = FiniteActionGroup::generate({rotation2(2 * kPi / 5)}, 2, false);
  Eigen::MatrixXd R = rotation2(2 * kPi / 5).linear;
  Eigen::MatrixXd P = R;
  int brute = 1;
  while ((P - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-9) {
    P = P * R;
    ++brute;
  }
  CHECK(brute == 5);
  CHECK(z5.order() == brute);
  CHECK(z5.element_order(z5.generator_indices()[0]) == 5);
}

TEST_CASE("generation rejects bad input") {
  Eigen::MatrixXd shear(2, 2);
  shear << 1, 1, 0, 1;
  CHECK_THROWS_AS(FiniteActionGroup::generate(
                      {AffineIsometry::from_float(shear, Eigen::VectorXd::Zero(2))}, 2, false),
                  orbmorse::NotIsometry);
  // A 2*pi/5 rotation has non-integer entries, so it cannot act on the torus.
  CHECK_THROWS_AS(FiniteActionGroup::generate({rotation2(2 * kPi / 5)}, 2, true),
                  orbmorse::LatticeNotPreserved);
  // An angle incommensurable with pi never closes up.
  CHECK_THROWS_AS(FiniteActionGroup::generate({rotation2(1.0)}, 2, false, 500),
                  orbmorse::OrderExceeded);
}

TEST_CASE("group axioms hold elementwise") {
  // S3 as permutation matrices, and Z6 as a lattice-free rotation group.
  std::vector<FiniteActionGroup> groups;
  groups.push_back(FiniteActionGroup::generate({permutation({1, 0, 2}), permutation({0, 2, 1})},
                                               3, false));
  groups.push_back(FiniteActionGroup::generate({rotation2(2 * kPi / 6)}, 2, false));
  for (const auto& G : groups) {
    REQUIRE(G.order() <= 200);
    for (int i = 0; i < G.order(); ++i) {
      CHECK(G.multiply(0, i) == i);
      CHECK(G.multiply(i, 0) == i);
      CHECK(G.multiply(i, G.inverse(i)) == 0);
      CHECK(G.multiply(G.inverse(i), i) == 0);
      for (int j = 0; j < G.order(); ++j)
        for (int k = 0; k < G.order(); ++k)
          CHECK(G.multiply(G.multiply(i, j), k) == G.multiply(i, G.multiply(j, k)));
    }
    // Words reproduce their elements.
    for (int i = 0; i < G.order(); ++i) {
      AffineIsometry acc = AffineIsometry::identity(G.dim());
      for (int w : G.word(i))
        acc = orbmorse::compose(acc, G.element(G.generator_indices()[w]), G.lattice());
      CHECK(orbmorse::isometry_equal(acc, G.element(i), G.lattice()));
    }
  }
}

TEST_CASE("conjugacy classes and centralizers of S3") {
  auto s3 = FiniteActionGroup::generate({permutation({1, 0, 2}), permutation({0, 2, 1})}, 3,
                                        false);
  REQUIRE(s3.order() == 6);
  auto classes = orbmorse::conjugacy_classes(s3);
  REQUIRE(classes.size() == 3);
  CHECK(classes[0] == std::vector<int>{0});
  std::vector<std::size_t> sizes = {classes[0].size(), classes[1].size(), classes[2].size()};
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 2, 3});

  // |class| * |centralizer| = |G| (orbit-stabilizer for conjugation).
  for (const auto& cls : classes)
    CHECK(cls.size() * orbmorse::centralizer(s3, cls[0]).order() == 6);

  int transposition = s3.find(permutation({1, 0, 2}));
  REQUIRE(transposition >= 0);
  CHECK(orbmorse::centralizer(s3, transposition).order() == 2);
}

TEST_CASE("element equality is exact for rational data") {
  // 1/2 translations compose exactly on the torus: t + t = 0 mod lattice.
  std::vector<Rational> lin = {Rational(1)};
  auto half = AffineIsometry::from_exact(1, lin, {Rational(1, 2)});
  auto G = FiniteActionGroup::generate({half}, 1, true);
  CHECK(G.order() == 2);
  CHECK(G.multiply(1, 1) == 0);

  auto third = AffineIsometry::from_exact(1, lin, {Rational(1, 3)});
  CHECK(FiniteActionGroup::generate({third}, 1, true).order() == 3);
  CHECK(!orbmorse::isometry_equal(half, third, true));
}

TEST_CASE("fixed subspace dimension equals the character average") {
  // Oracle: dim W^g = (1/ord g) * sum_r tr(g^r) on W, a standard projector
  // trace identity, computed here directly from the action matrices.
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> order_dist(1, 6);
  std::uniform_int_distribution<int> phase(0, 5);
  for (int trial = 0; trial < 10; ++trial) {
    int m = order_dist(rng);
    std::vector<double> angles = {2 * kPi * phase(rng) / m, 2 * kPi * phase(rng) / m};
    auto G = std::make_shared<FiniteActionGroup>(
        FiniteActionGroup::generate({block_rotation(angles)}, 4, false));
    auto rep = RealRepresentation::tangent(G);
    for (int g = 0; g < G->order(); ++g) {
      double avg = 0.0;
      int ord = G->element_order(g);
      int p = 0;
      for (int r = 0; r < ord; ++r) {
        avg += rep.action(p).trace();
        p = G->multiply(p, g);
      }
      avg /= ord;
      auto fixed = orbmorse::fixed_subspace(rep, g);
      CHECK(fixed.dim() == doctest::Approx(avg));
      // The fixed basis really is pointwise fixed.
      if (fixed.dim() > 0)
        CHECK((rep.action(g) * fixed.basis() - fixed.basis()).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("fixed subspace carries the centralizer") {
  auto s3 = std::make_shared<FiniteActionGroup>(
      FiniteActionGroup::generate({permutation({1, 0, 2}), permutation({0, 2, 1})}, 3, false));
  auto rep = RealRepresentation::tangent(s3);
  int transposition = s3->find(permutation({1, 0, 2}));
  auto fixed = orbmorse::fixed_subspace(rep, transposition);
  // (12) fixes span{e1+e2, e3} pointwise inside R^3.
  CHECK(fixed.dim() == 2);
  CHECK(fixed.group().order() == 2);
  CHECK(fixed.group().parent_indices().size() == 2);
}

TEST_CASE("orientation detection") {
  auto minus = std::make_shared<FiniteActionGroup>(
      FiniteActionGroup::generate({exact_linear(2, {-1, 0, 0, -1})}, 2, false));
  CHECK(orbmorse::is_orientation_preserving(RealRepresentation::tangent(minus)));

  auto reflect = std::make_shared<FiniteActionGroup>(
      FiniteActionGroup::generate({exact_linear(2, {1, 0, 0, -1})}, 2, false));
  CHECK(!orbmorse::is_orientation_preserving(RealRepresentation::tangent(reflect)));

  auto minus1 = std::make_shared<FiniteActionGroup>(
      FiniteActionGroup::generate({exact_linear(1, {-1})}, 1, false));
  CHECK(!orbmorse::is_orientation_preserving(RealRepresentation::tangent(minus1)));
}

TEST_CASE("ages of the standard examples") {
  ComplexStructure J2 = ComplexStructure::standard(2);
  // Z2 rotating the plane by pi (the teardrop cone point): age 1/2.
  auto z2 = std::make_shared<FiniteActionGroup>(
      FiniteActionGroup::generate({exact_linear(2, {-1, 0, 0, -1})}, 2, false));
  auto rep2 = RealRepresentation::tangent(z2);
  CHECK(orbmorse::age(0, J2, rep2) == Rational(0));
  CHECK(orbmorse::age(1, J2, rep2) == Rational(1, 2));

  // -I on R^4 = C^2: both eigenphases 1/2, age 1.
  ComplexStructure J4 = ComplexStructure::standard(4);
  auto z2c2 = std::make_shared<FiniteActionGroup>(
      FiniteActionGroup::generate(
          {exact_linear(4, {-1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1})}, 4, false));
  auto rep4 = RealRepresentation::tangent(z2c2);
  CHECK(orbmorse::age(1, J4, rep4) == Rational(1));

  // Rotation by 2*pi/5 on C^1: age of g^k is k/5.
  auto z5 = std::make_shared<FiniteActionGroup>(
      FiniteActionGroup::generate({rotation2(2 * kPi / 5)}, 2, false));
  auto rep5 = RealRepresentation::tangent(z5);
  for (int g = 0; g < 5; ++g) {
    // Element g is the k-th power of the generator, k = its word length.
    int k = static_cast<int>(z5->word(g).size());
    CHECK(orbmorse::age(g, J2, rep5) == Rational(k % 5, 5));
  }
}

TEST_CASE("age identity: age(g) + age(g^{-1}) = complex codimension of the fixed space") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> order_dist(2, 12);
  for (int trial = 0; trial < 20; ++trial) {
    int m = order_dist(rng);
    std::uniform_int_distribution<int> phase(0, m - 1);
    std::vector<double> angles = {2 * kPi * phase(rng) / m, 2 * kPi * phase(rng) / m,
                                  2 * kPi * phase(rng) / m};
    auto G = std::make_shared<FiniteActionGroup>(
        FiniteActionGroup::generate({block_rotation(angles)}, 6, false));
    auto rep = RealRepresentation::tangent(G);
    ComplexStructure J = ComplexStructure::standard(6);
    for (int g = 0; g < G->order(); ++g) {
      Rational lhs = orbmorse::age(g, J, rep) + orbmorse::age(G->inverse(g), J, rep);
      int fixed_dim = orbmorse::fixed_subspace(rep, g).dim();
      CHECK(lhs == Rational((6 - fixed_dim) / 2));
    }
  }
}

TEST_CASE("age validates complex linearity and rationality") {
  // A reflection anticommutes with the standard J: not complex linear.
  auto reflect = std::make_shared<FiniteActionGroup>(
      FiniteActionGroup::generate({exact_linear(2, {1, 0, 0, -1})}, 2, false));
  CHECK_THROWS_AS(orbmorse::age(1, ComplexStructure::standard(2),
                                RealRepresentation::tangent(reflect)),
                  orbmorse::ActionNotComplexLinear);
  Eigen::MatrixXd notJ = Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(ComplexStructure{notJ}.validate(), orbmorse::Error);
}

TEST_CASE("characters separate representations") {
  auto z4 = std::make_shared<FiniteActionGroup>(
      FiniteActionGroup::generate({rotation2(kPi / 2)}, 2, false));
  auto rep = RealRepresentation::tangent(z4);
  Eigen::VectorXd chi = orbmorse::character_of(rep);
  // Classes of the cyclic group are singletons ordered by element index:
  // traces 2, 0, -2, 0 for angles 0, pi/2, pi, 3pi/2.
  REQUIRE(chi.size() == 4);
  CHECK(chi[0] == doctest::Approx(2.0));
  CHECK(std::abs(chi[1]) < 1e-9);
  CHECK(chi[2] == doctest::Approx(-2.0));

  // The same action conjugated by a rotation has the same character.
  Eigen::MatrixXd U = rotation2(0.37).linear;
  std::vector<Eigen::MatrixXd> conj = {U.transpose() * rep.action(z4->generator_indices()[0]) * U};
  auto rep_conj = RealRepresentation::from_action(z4, 2, conj);
  CHECK(orbmorse::same_character(rep, rep_conj));

  // The trivial 2-dimensional representation is not isomorphic to it.
  std::vector<Eigen::MatrixXd> triv = {Eigen::MatrixXd::Identity(2, 2)};
  auto rep_triv = RealRepresentation::from_action(z4, 2, triv);
  CHECK(!orbmorse::same_character(rep, rep_triv));
}
