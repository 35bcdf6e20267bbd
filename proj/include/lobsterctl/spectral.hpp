#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lobsterctl/graph.hpp"

namespace lobsterctl {

inline constexpr double kGroupTol = 1e-8;
inline constexpr double kZeroTol = 1e-8;
// Singular values of restricted orthonormal bases at or below this count as zero.
inline constexpr double kRankTol = 1e-8;

struct Eigenspace {
  double value = 0.0;
  Eigen::MatrixXd basis;  // n x k, orthonormal columns

  int multiplicity() const { return static_cast<int>(basis.cols()); }
};

struct SpectralDecomposition {
  Eigen::MatrixXd matrix;  // the decomposed Laplacian, kept for residual checks
  std::vector<Eigenspace> spaces;  // ascending eigenvalue
  double group_tol = kGroupTol;
  std::vector<std::string> warnings;  // near-miss eigenvalue gaps

  int size() const { return static_cast<int>(matrix.rows()); }
};

// Dense symmetric eigensolve followed by grouping of (numerically) equal
// eigenvalues into eigenspaces. Throws Error(numerical) if the solver fails.
SpectralDecomposition eigen_decompose(const IntMatrix& L, double group_tol = kGroupTol);
SpectralDecomposition eigen_decompose(const Graph& g, double group_tol = kGroupTol);

// Orthonormal coefficient basis C (k x d) of {c : (U c)_v = 0 for all v in Z}.
// Z = {} yields the identity.
Eigen::MatrixXd vanishing_subspace(const Eigenspace& space, const VertexSet& zero_on,
                                   double rank_tol = kRankTol);

// Smallest singular value of the rows of `space.basis` indexed by `rows`
// (0 when there are fewer rows than columns).
double min_singular_value(const Eigenspace& space, const VertexSet& rows);

struct Witness {
  double lambda = 0.0;
  Eigen::VectorXd y;  // length n, index v-1 holds the entry of vertex v
};

// An eigenvector that vanishes off S and is nonzero on every vertex of S, if
// one exists. Throws Error(numerical) if a generic combination cannot be built
// after the bounded number of reseeded retries.
std::optional<Witness> exists_support_exactly(const SpectralDecomposition& decomp,
                                              const VertexSet& s, double zero_tol = kZeroTol);

// An eigenvector supported inside S (possibly on a proper subset), if any.
std::optional<Witness> exists_support_within(const SpectralDecomposition& decomp,
                                             const VertexSet& s);

// max |L y - lambda y| / max|y|.
double relative_residual(const SpectralDecomposition& decomp, const Witness& w);

}  // namespace lobsterctl
