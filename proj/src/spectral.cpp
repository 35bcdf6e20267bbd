#include "lobsterctl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "lobsterctl/error.hpp"

namespace lobsterctl {

namespace {

std::uint64_t fingerprint(const IntMatrix& L) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (Eigen::Index j = 0; j < L.cols(); ++j) {
    for (Eigen::Index i = 0; i < L.rows(); ++i) {
      h ^= static_cast<std::uint64_t>(L(i, j));
      h *= 1099511628211ull;
    }
  }
  return h;
}

Eigen::MatrixXd restrict_rows(const Eigen::MatrixXd& m, const VertexSet& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(rows[i] - 1);
  return out;
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& cols) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(cols);
  return qr.householderQ() * Eigen::MatrixXd::Identity(cols.rows(), cols.cols());
}

}  // namespace

SpectralDecomposition eigen_decompose(const IntMatrix& L, double group_tol) {
  if (L.rows() != L.cols()) throw Error(ErrorCode::invalid_argument, "matrix is not square");
  if (L != L.transpose()) throw Error(ErrorCode::invalid_argument, "matrix is not symmetric");

  SpectralDecomposition out;
  out.matrix = L.cast<double>();
  out.group_tol = group_tol;
  const Eigen::Index n = L.rows();
  if (n == 0) return out;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(out.matrix);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eigensolver did not converge (n=" << n << ", fingerprint=" << std::hex << fingerprint(L) << ")";
    throw Error(ErrorCode::numerical, os.str());
  }
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Eigen::MatrixXd& vectors = solver.eigenvectors();

  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    bool split = (i == n);
    if (!split) {
      const double gap = values(i) - values(i - 1);
      const double scale = std::max(1.0, std::abs(values(i)));
      split = gap > group_tol * scale;
      const double rel = gap / scale;
      if (rel >= 1e-10 && rel <= 1e-6) {
        std::ostringstream os;
        os << "near-miss eigenvalue gap " << gap << " at lambda=" << values(i)
           << (split ? " (kept separate)" : " (grouped)");
        out.warnings.push_back(os.str());
      }
    }
    if (!split) continue;
    Eigenspace space;
    space.value = values.segment(start, i - start).mean();
    space.basis = orthonormalize(vectors.middleCols(start, i - start));
    out.spaces.push_back(std::move(space));
    start = i;
  }
  return out;
}

SpectralDecomposition eigen_decompose(const Graph& g, double group_tol) {
  return eigen_decompose(laplacian(g), group_tol);
}

Eigen::MatrixXd vanishing_subspace(const Eigenspace& space, const VertexSet& zero_on, double rank_tol) {
  const Eigen::Index k = space.basis.cols();
  if (zero_on.empty()) return Eigen::MatrixXd::Identity(k, k);
  const Eigen::MatrixXd rows = restrict_rows(space.basis, zero_on);
  if (k == 1) {
    if (rows.cwiseAbs().maxCoeff() <= rank_tol) return Eigen::MatrixXd::Identity(1, 1);
    return Eigen::MatrixXd(1, 0);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rank_tol) ++rank;
  }
  return svd.matrixV().rightCols(k - rank);
}

double min_singular_value(const Eigenspace& space, const VertexSet& rows) {
  const Eigen::Index k = space.basis.cols();
  if (static_cast<Eigen::Index>(rows.size()) < k) return 0.0;
  const Eigen::MatrixXd sub = restrict_rows(space.basis, rows);
  if (k == 1) return sub.norm();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub);
  return svd.singularValues()(k - 1);
}

std::optional<Witness> exists_support_exactly(const SpectralDecomposition& decomp, const VertexSet& s,
                                              double zero_tol) {
  if (s.empty()) throw Error(ErrorCode::invalid_argument, "support set must be nonempty");
  const int n = decomp.size();
  const VertexSet outside = complement(s, n);

  for (const auto& space : decomp.spaces) {
    const Eigen::MatrixXd K = vanishing_subspace(space, outside);
    if (K.cols() == 0) continue;
    Eigen::MatrixXd W = space.basis * K;
    const double wmax = W.cwiseAbs().maxCoeff();

    // If some vertex of S is zero on the whole subspace, no vector in it has
    // support exactly S.
    bool dead = false;
    for (Vertex v : s) {
      if (W.row(v - 1).cwiseAbs().maxCoeff() <= zero_tol * wmax) {
        dead = true;
        break;
      }
    }
    if (dead) continue;

    // Otherwise a generic combination works; try 1, 3, 9, ... then reseed.
    const Eigen::Index d = W.cols();
    Eigen::VectorXd weights(d);
    for (Eigen::Index j = 0; j < d; ++j) weights(j) = std::pow(3.0, static_cast<double>(j));
    std::mt19937_64 rng(0x5eedu + static_cast<std::uint64_t>(d));
    std::uniform_real_distribution<double> draw(0.5, 1.5);
    for (int attempt = 0; attempt <= 8; ++attempt) {
      if (attempt > 0) {
        for (Eigen::Index j = 0; j < d; ++j) weights(j) = draw(rng) * ((rng() & 1u) ? 1.0 : -1.0);
      }
      Eigen::VectorXd y = W * weights;
      y /= y.cwiseAbs().maxCoeff();
      bool ok = true;
      for (Vertex v : s) {
        if (std::abs(y(v - 1)) <= zero_tol) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (Vertex v : outside) y(v - 1) = 0.0;
      return Witness{space.value, std::move(y)};
    }
    std::ostringstream os;
    os << "could not build a generic witness for support " << to_string(s) << " at lambda=" << space.value;
    throw Error(ErrorCode::numerical, os.str());
  }
  return std::nullopt;
}

std::optional<Witness> exists_support_within(const SpectralDecomposition& decomp, const VertexSet& s) {
  const VertexSet outside = complement(s, decomp.size());
  for (const auto& space : decomp.spaces) {
    const Eigen::MatrixXd K = vanishing_subspace(space, outside);
    if (K.cols() == 0) continue;
    Eigen::VectorXd y = space.basis * K.col(0);
    y /= y.cwiseAbs().maxCoeff();
    for (Vertex v : outside) y(v - 1) = 0.0;
    return Witness{space.value, std::move(y)};
  }
  return std::nullopt;
}

double relative_residual(const SpectralDecomposition& decomp, const Witness& w) {
  const double scale = w.y.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (decomp.matrix * w.y - w.lambda * w.y).cwiseAbs().maxCoeff() / scale;
}

}  // namespace lobsterctl
