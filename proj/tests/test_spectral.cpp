#include <doctest.h>

#include <cmath>
#include <random>

#include "lobsterctl/spectral.hpp"
#include "oracles.hpp"

using namespace lobsterctl;

namespace {

const Eigenspace* space_near(const SpectralDecomposition& d, double lambda) {
  for (const auto& s : d.spaces)
    if (std::abs(s.value - lambda) < 1e-6) return &s;
  return nullptr;
}

}  // namespace

TEST_CASE("K2 spectrum") {
  const auto d = eigen_decompose(Graph(2, {{1, 2}}));
  REQUIRE(d.spaces.size() == 2);
  CHECK(d.spaces[0].value == doctest::Approx(0.0));
  CHECK(d.spaces[1].value == doctest::Approx(2.0));
  CHECK(d.spaces[0].multiplicity() == 1);
  CHECK(d.spaces[1].multiplicity() == 1);
}

TEST_CASE("eigenvalue 1 of the seven-vertex example") {
  const auto g = oracle::example7();
  const int exact = oracle::integer_eigen_multiplicity(g, 1);
  CHECK(exact == 3);
  const auto* s = space_near(eigen_decompose(g), 1.0);
  REQUIRE(s != nullptr);
  CHECK(s->multiplicity() == exact);
}

TEST_CASE("P5 has the golden-ratio eigenvalue") {
  const auto cp = oracle::characteristic_polynomial(path_graph(5));
  const auto rem = oracle::poly_mod(cp, {1, -3, 1});
  CHECK(rem[0] == 0);
  CHECK(rem[1] == 0);
  const double want = (3.0 - std::sqrt(5.0)) / 2.0;
  const auto* s = space_near(eigen_decompose(path_graph(5)), want);
  REQUIRE(s != nullptr);
  CHECK(std::abs(s->value - want) < 1e-9);
}

TEST_CASE("grouped multiplicities match exact ranks on random trees") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = oracle::random_tree(3 + trial % 14, rng);
    const auto d = eigen_decompose(g);
    int total = 0;
    for (const auto& s : d.spaces) total += s.multiplicity();
    CHECK(total == g.size());
    for (int lambda = 0; lambda <= 3; ++lambda) {
      const int exact = oracle::integer_eigen_multiplicity(g, lambda);
      const auto* s = space_near(d, lambda);
      CHECK((s ? s->multiplicity() : 0) == exact);
    }
  }
}

TEST_CASE("vanishing_subspace") {
  const auto d = eigen_decompose(oracle::example7());
  const auto* one = space_near(d, 1.0);
  REQUIRE(one != nullptr);
  const int k = one->multiplicity();
  const auto full = vanishing_subspace(*one, {});
  CHECK(full.cols() == k);
  CHECK(full.isApprox(Eigen::MatrixXd::Identity(k, k)));
  CHECK(vanishing_subspace(*one, {2, 4}).cols() == k);
  CHECK(vanishing_subspace(*one, {1, 2, 3, 4, 5, 6, 7}).cols() == 0);
  CHECK(vanishing_subspace(*one, {1}).cols() == k - 1);
}

TEST_CASE("exists_support_exactly on the seven-vertex example") {
  const auto d = eigen_decompose(oracle::example7());
  const auto w = exists_support_exactly(d, {1, 3});
  REQUIRE(w.has_value());
  CHECK(w->lambda == doctest::Approx(1.0));
  CHECK(w->y(0) == doctest::Approx(-w->y(2)));
  for (int i : {1, 3, 4, 5, 6}) CHECK(w->y(i) == 0.0);
  CHECK_FALSE(exists_support_exactly(d, {3, 5}).has_value());
  CHECK_FALSE(exists_support_exactly(d, {1, 2, 3, 5, 6, 7}).has_value());
  CHECK(exists_support_within(d, {1, 2, 3, 5, 6, 7}).has_value());
}

TEST_CASE("spectral invariants on random connected graphs") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 2 + trial % 15;
    const auto g = oracle::random_connected(n, trial % 2 ? 0.25 : 0.0, rng);
    const auto d = eigen_decompose(g);
    const Eigen::MatrixXd L = laplacian(g).cast<double>();

    Eigen::MatrixXd rebuilt = Eigen::MatrixXd::Zero(n, n);
    for (const auto& s : d.spaces) {
      rebuilt += s.value * s.basis * s.basis.transpose();
      CHECK((s.basis.transpose() * s.basis - Eigen::MatrixXd::Identity(s.multiplicity(), s.multiplicity()))
                .cwiseAbs()
                .maxCoeff() < 1e-9);
      if (std::abs(s.value) > 1e-6) CHECK(s.basis.colwise().sum().cwiseAbs().maxCoeff() < 1e-8);
    }
    CHECK((rebuilt - L).cwiseAbs().maxCoeff() <= 1e-7 * L.cwiseAbs().maxCoeff());

    VertexSet all(n);
    for (int v = 1; v <= n; ++v) all[v - 1] = v;
    const auto everything = exists_support_exactly(d, all);
    REQUIRE(everything.has_value());

    std::uniform_int_distribution<int> pick(1, n);
    for (int rep = 0; rep < 10; ++rep) {
      VertexSet s = make_vertex_set({pick(rng), pick(rng), pick(rng), pick(rng)});
      const auto w = exists_support_exactly(d, s);
      if (!w) continue;
      const double ymax = w->y.cwiseAbs().maxCoeff();
      CHECK(relative_residual(d, *w) <= 1e-7);
      for (Vertex v = 1; v <= n; ++v) {
        if (contains(s, v)) {
          CHECK(std::abs(w->y(v - 1)) > kZeroTol * ymax);
        } else {
          CHECK(w->y(v - 1) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("connected graphs have a one-dimensional kernel") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = oracle::random_connected(2 + trial % 12, 0.3, rng);
    const auto d = eigen_decompose(g);
    CHECK(std::abs(d.spaces.front().value) < 1e-9);
    CHECK(d.spaces.front().multiplicity() == 1);
  }
}
