#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lobsterctl/graph.hpp"
#include "lobsterctl/spectral.hpp"

namespace lobsterctl {

// Nonempty set of leader (driver) vertices.
class LeaderSet {
 public:
  explicit LeaderSet(std::vector<Vertex> vertices);

  const VertexSet& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }

  // Followers are everything else.
  VertexSet followers(int n) const { return complement(vertices_, n); }

 private:
  VertexSet vertices_;
};

enum class VerdictMethod { pbh_float, kalman_exact };

struct ControllabilityVerdict {
  bool controllable = false;
  VerdictMethod method = VerdictMethod::pbh_float;
  std::optional<Witness> witness;  // PBH only, set when uncontrollable
  std::optional<int> rank;  // Kalman only
  int followers = 0;
  // PBH only: smallest singular value of the leader rows over all eigenspaces.
  double min_singular = 0.0;
  // PBH only: min_singular fell in (tol, 10 tol], i.e. a 10x wider tolerance
  // would have flipped the verdict.
  bool near_threshold = false;
};

inline constexpr double kPbhTol = 1e-8;

// Eigenspace-wise PBH test: controllable iff, for every eigenspace, the rows
// of its basis at the leaders have full column rank. Throws
// Error(not_connected) for disconnected graphs.
ControllabilityVerdict pbh_controllable(const Graph& g, const SpectralDecomposition& decomp,
                                        const LeaderSet& leaders, double tol = kPbhTol);
ControllabilityVerdict pbh_controllable(const Graph& g, const LeaderSet& leaders);

// A = L restricted to followers x followers, B = followers x leaders.
std::pair<IntMatrix, IntMatrix> follower_system(const Graph& g, const LeaderSet& leaders);

enum class ExactRoute {
  krylov,         // incremental echelon basis of the Krylov space
  full_bareiss,   // literal [B, AB, ...] followed by Bareiss elimination
};

// Kalman rank condition over exact integers; no tolerances. The default route
// first tries a GF(p) rank, which certifies full rank when it comes out full,
// and otherwise computes the rank over Z.
ControllabilityVerdict kalman_controllable_exact(const Graph& g, const LeaderSet& leaders,
                                                 ExactRoute route = ExactRoute::krylov);

// PBH, escalated to the exact oracle when the float verdict sits within a 10x
// tolerance band of flipping and the follower count is at most exact_limit.
ControllabilityVerdict decide_controllable(const Graph& g, const SpectralDecomposition& decomp,
                                           const LeaderSet& leaders, int exact_limit = 200);

struct MinLeaderResult {
  std::optional<int> k_min;  // empty: no controllable set of size <= k_max
  int k_max = 0;
  std::uint64_t count = 0;  // number of controllable sets of size k_min
  std::vector<VertexSet> sets;  // filled when count <= kListLimit
  bool list_complete = false;
};

inline constexpr std::uint64_t kListLimit = 10000;
inline constexpr int kBruteForceLeaderCap = 25;

// Exhaustive search by increasing size with the exact oracle deciding each
// candidate. Throws Error(limit_exceeded) for n > 25.
MinLeaderResult min_leader_bruteforce(const Graph& g, int k_max);

struct Probability {
  mpz_class numerator;  // reduced
  mpz_class denominator;
  double value = 0.0;
  std::string rendered;  // 4 significant digits
};

// count / C(n, k). Throws Error(invalid_argument) if k > n or count > C(n, k).
Probability count_to_probability(std::uint64_t count, int n, int k);

}  // namespace lobsterctl
