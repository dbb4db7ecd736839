#include "doctest.h"
#include "oracles.hpp"

#include "polyband/floquet.hpp"
#include "polyband/graph.hpp"
#include "polyband/spectrum.hpp"

#include <random>

using namespace polyband;

namespace {

Eigen::MatrixXd random_symmetric(std::mt19937& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = g(rng);
  return a;
}

}  // namespace

TEST_CASE("benzene and zero matrix") {
  const auto s = eig_symmetric(build_oligomer(catalog_monomer("PPP"), 1, false).adjacency());
  const double expected[] = {-2, -1, -1, 1, 1, 2};
  for (int i = 0; i < 6; ++i) CHECK(s[static_cast<std::size_t>(i)] == doctest::Approx(expected[i]).epsilon(1e-14));
  const auto groups = s.multiplets();
  REQUIRE(groups.size() == 4);
  CHECK(groups[1].multiplicity == 2);
  CHECK(s.multiplicity_of(1.0) == 2);

  const auto z = eig_symmetric(Eigen::MatrixXd::Zero(4, 4));
  CHECK(z.values == std::vector<double>(4, 0.0));
}

TEST_CASE("PPf monomer against its characteristic polynomial") {
  const Eigen::MatrixXd c = catalog_monomer("PPf").adjacency();
  const auto coeff = oracle::characteristic_coefficients(c);
  const auto roots = oracle::simple_real_roots(coeff, -3.0, 3.0);
  const auto s = eig_symmetric(c);
  REQUIRE(roots.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(s[i] - roots[i]) <= 1e-10);
}

TEST_CASE("eigenvalues against Jacobi rotations, residuals and trace") {
  std::mt19937 rng(11);
  for (int n : {1, 2, 5, 9, 16}) {
    const auto a = random_symmetric(rng, n);
    const auto s = eig_symmetric(a, true);
    const auto ref = oracle::jacobi_eigenvalues(a);
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(s[i] - ref[i]) <= 1e-10 * std::max(1.0, a.norm()));
    double sum = 0.0;
    for (double v : s.values) sum += v;
    CHECK(std::abs(sum - a.trace()) <= 1e-9 * std::max(1.0, std::abs(a.trace())));
    REQUIRE(s.vectors);
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::VectorXd u = s.vectors->col(j);
      CHECK((a * u - s[static_cast<std::size_t>(j)] * u).norm() <= 1e-10 * a.norm());
    }
    CHECK(std::is_sorted(s.values.begin(), s.values.end()));
    // repeated calls are bit-identical
    CHECK(eig_symmetric(a).values == s.values);
  }
}

TEST_CASE("bipartite spectra are symmetric about zero") {
  std::mt19937 rng(3);
  for (const auto& spec : catalog())
    for (int m : {1, 2, 5}) {
      const auto g = build_oligomer(spec, m, false);
      if (!g.is_bipartite()) continue;
      const auto s = eig_symmetric(g.adjacency());
      const std::size_t n = s.size();
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(s[i] + s[n - 1 - i]) <= 1e-10);
    }
}

TEST_CASE("input validation") {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 2, 0;
  CHECK_THROWS_AS(eig_symmetric(a), std::invalid_argument);
  a << 0, NAN, NAN, 0;
  CHECK_THROWS_AS(eig_symmetric(a), std::invalid_argument);
  CHECK_THROWS_AS(eig_symmetric(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
  Eigen::MatrixXcd h(2, 2);
  h << 0, std::complex<double>(0, 1), std::complex<double>(0, 1), 0;
  CHECK_THROWS_AS(eig_hermitian(h), std::invalid_argument);
  CHECK_THROWS_AS(eig_generalized(Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d(1.0, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(eig_generalized(Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d(1.0, -1.0)), std::invalid_argument);
}

TEST_CASE("Hermitian solver") {
  std::mt19937 rng(5);
  const auto a = random_symmetric(rng, 7);
  const auto real = eig_symmetric(a), herm = eig_hermitian(a.cast<std::complex<double>>());
  for (std::size_t i = 0; i < real.size(); ++i) CHECK(std::abs(real[i] - herm[i]) <= 1e-12);

  Eigen::MatrixXcd one(1, 1);
  one(0, 0) = 2.5;
  CHECK(eig_hermitian(one).values == std::vector<double>{2.5});

  const auto b = floquet::bloch_matrix(catalog_monomer("PPf"), std::numbers::pi / 2).matrix;
  const auto doubled = hermitian_embedding_values(b);
  const auto s = eig_hermitian(b);
  REQUIRE(doubled.size() == 12);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(std::abs(doubled[2 * i] - doubled[2 * i + 1]) <= 1e-12);
    CHECK(std::abs(doubled[2 * i] - s[i]) <= 1e-12);
  }
  // characteristic polynomial vanishes at each value
  for (double lambda : s.values) {
    const auto d = oracle::det_cofactor(b - lambda * Eigen::MatrixXcd::Identity(6, 6));
    CHECK(std::abs(d) <= 1e-9);
  }
}

TEST_CASE("generalized problem") {
  std::mt19937 rng(9);
  const auto c = random_symmetric(rng, 5);
  const auto same = eig_generalized(c, Eigen::VectorXd::Ones(5));
  const auto ref = eig_symmetric(c);
  for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(same[i] - ref[i]) <= 1e-12);
  CHECK(same.tag == ModelTag::FeMuTilde);

  Eigen::MatrixXd p2(2, 2);
  p2 << 0, 1, 1, 0;
  const auto s2 = eig_generalized(p2, Eigen::VectorXd::Ones(2));
  CHECK(s2[0] == doctest::Approx(-1.0));
  CHECK(s2[1] == doctest::Approx(1.0));

  const auto ring = build_oligomer(catalog_monomer("PPP"), 1, false);
  const auto tilde = eig_generalized(ring.adjacency(), ring.valency());
  auto expected = oracle::cycle_spectrum(6);
  for (double& e : expected) e /= 2.0;
  for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(tilde[i] - expected[i]) <= 1e-12);

  // eigenvectors satisfy C u = mu V u
  Eigen::VectorXd v(5);
  v << 1, 2, 3, 0.5, 4;
  const auto gv = eig_generalized(c, v, true);
  REQUIRE(gv.vectors);
  for (Eigen::Index j = 0; j < 5; ++j) {
    const Eigen::VectorXd u = gv.vectors->col(j);
    CHECK((c * u - gv[static_cast<std::size_t>(j)] * v.asDiagonal() * u).norm() <= 1e-10 * c.norm() * u.norm());
  }
}

TEST_CASE("connected graphs have top generalized eigenvalue 1") {
  std::vector<MonomerSpec> specs = catalog();
  std::mt19937 rng(21);
  for (int i = 0; i < 20; ++i) specs.push_back(oracle::random_monomer(rng));
  for (const auto& spec : specs)
    for (int m : {1, 3}) {
      const auto g = build_oligomer(spec, m, false);
      if (g.bonds().empty()) continue;
      const auto s = eig_generalized(g.adjacency(), g.valency());
      CHECK(std::abs(s.values.back() - 1.0) <= 1e-10);
      CHECK(s.values.front() >= -1.0 - 1e-10);
    }
}
