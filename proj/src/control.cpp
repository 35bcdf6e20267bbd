#include "lobsterctl/control.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

#include "lobsterctl/error.hpp"
#include "lobsterctl/exact_rank.hpp"

namespace lobsterctl {

LeaderSet::LeaderSet(std::vector<Vertex> vertices) : vertices_(make_vertex_set(std::move(vertices))) {
  if (vertices_.empty()) throw Error(ErrorCode::invalid_argument, "leader set must be nonempty");
  if (vertices_.front() < 1) throw Error(ErrorCode::invalid_argument, "leader ids are 1-based");
}

namespace {

void check_leaders(const Graph& g, const LeaderSet& leaders) {
  if (leaders.vertices().back() > g.size()) {
    std::ostringstream os;
    os << "leader " << leaders.vertices().back() << " outside 1.." << g.size();
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  if (!g.is_connected()) throw Error(ErrorCode::not_connected, "graph is not connected");
}

}  // namespace

ControllabilityVerdict pbh_controllable(const Graph& g, const SpectralDecomposition& decomp,
                                        const LeaderSet& leaders, double tol) {
  check_leaders(g, leaders);
  ControllabilityVerdict out;
  out.method = VerdictMethod::pbh_float;
  out.followers = g.size() - static_cast<int>(leaders.size());
  out.controllable = true;
  out.min_singular = std::numeric_limits<double>::infinity();
  for (const auto& space : decomp.spaces) {
    const double s = min_singular_value(space, leaders.vertices());
    out.min_singular = std::min(out.min_singular, s);
    if (s <= tol && out.controllable) {
      out.controllable = false;
      const Eigen::MatrixXd K = vanishing_subspace(space, leaders.vertices(), tol);
      Eigen::VectorXd y = space.basis * K.col(0);
      y /= y.cwiseAbs().maxCoeff();
      out.witness = Witness{space.value, std::move(y)};
    }
  }
  out.near_threshold = out.min_singular > tol && out.min_singular <= 10 * tol;
  return out;
}

ControllabilityVerdict pbh_controllable(const Graph& g, const LeaderSet& leaders) {
  return pbh_controllable(g, eigen_decompose(g), leaders);
}

std::pair<IntMatrix, IntMatrix> follower_system(const Graph& g, const LeaderSet& leaders) {
  const IntMatrix L = laplacian(g);
  const VertexSet& lead = leaders.vertices();
  const VertexSet follow = leaders.followers(g.size());
  const auto nf = static_cast<Eigen::Index>(follow.size());
  const auto nl = static_cast<Eigen::Index>(lead.size());
  IntMatrix A(nf, nf);
  IntMatrix B(nf, nl);
  for (Eigen::Index i = 0; i < nf; ++i) {
    for (Eigen::Index j = 0; j < nf; ++j) A(i, j) = L(follow[i] - 1, follow[j] - 1);
    for (Eigen::Index j = 0; j < nl; ++j) B(i, j) = L(follow[i] - 1, lead[j] - 1);
  }
  return {A, B};
}

ControllabilityVerdict kalman_controllable_exact(const Graph& g, const LeaderSet& leaders, ExactRoute route) {
  check_leaders(g, leaders);
  ControllabilityVerdict out;
  out.method = VerdictMethod::kalman_exact;
  out.followers = g.size() - static_cast<int>(leaders.size());
  if (out.followers == 0) {
    out.controllable = true;
    out.rank = 0;
    return out;
  }
  const auto [A, B] = follower_system(g, leaders);
  int rank = 0;
  if (route == ExactRoute::full_bareiss) {
    rank = bareiss_rank(controllability_matrix(A, B));
  } else {
    rank = krylov_rank_mod_p(A, B);
    if (rank < out.followers) rank = krylov_rank_exact(A, B);
  }
  out.rank = rank;
  out.controllable = rank == out.followers;
  return out;
}

ControllabilityVerdict decide_controllable(const Graph& g, const SpectralDecomposition& decomp,
                                           const LeaderSet& leaders, int exact_limit) {
  auto verdict = pbh_controllable(g, decomp, leaders);
  if (verdict.near_threshold && verdict.followers <= exact_limit) {
    return kalman_controllable_exact(g, leaders);
  }
  return verdict;
}

MinLeaderResult min_leader_bruteforce(const Graph& g, int k_max) {
  const int n = g.size();
  if (n > kBruteForceLeaderCap) {
    std::ostringstream os;
    os << "exhaustive leader search refused for n=" << n << " (limit " << kBruteForceLeaderCap << ")";
    throw Error(ErrorCode::limit_exceeded, os.str());
  }
  if (k_max < 1) throw Error(ErrorCode::invalid_argument, "k_max must be at least 1");
  if (!g.is_connected()) throw Error(ErrorCode::not_connected, "graph is not connected");
  MinLeaderResult out;
  out.k_max = std::min(k_max, n);
  for (int k = 1; k <= out.k_max; ++k) {
    // lexicographic k-combinations of 1..n
    std::vector<Vertex> comb(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) comb[i] = i + 1;
    std::uint64_t count = 0;
    std::vector<VertexSet> sets;
    while (true) {
      if (kalman_controllable_exact(g, LeaderSet(comb)).controllable) {
        ++count;
        if (count <= kListLimit) sets.push_back(comb);
      }
      int i = k - 1;
      while (i >= 0 && comb[i] == n - k + i + 1) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
    if (count > 0) {
      out.k_min = k;
      out.count = count;
      out.list_complete = count <= kListLimit;
      if (out.list_complete) out.sets = std::move(sets);
      break;
    }
  }
  return out;
}

Probability count_to_probability(std::uint64_t count, int n, int k) {
  if (n < 0 || k < 0) throw Error(ErrorCode::invalid_argument, "n and k must be non-negative");
  if (k > n) throw Error(ErrorCode::invalid_argument, "k must not exceed n");
  mpz_class total;
  mpz_bin_uiui(total.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  mpz_class c(static_cast<unsigned long>(count));
  if (c > total) throw Error(ErrorCode::invalid_argument, "count exceeds C(n, k)");
  Probability p;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), total.get_mpz_t());
  if (c == 0) g = total;
  p.numerator = c / g;
  p.denominator = total / g;
  mpq_class q(c, total);
  q.canonicalize();
  p.value = q.get_d();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", p.value);
  p.rendered = buf;
  return p;
}

}  // namespace lobsterctl
