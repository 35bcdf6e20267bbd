#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lobsterctl/graph.hpp"
#include "lobsterctl/lobster.hpp"
#include "lobsterctl/spectral.hpp"

namespace lobsterctl {

// Critical sets are read through eigenvector supports:
//   CS   - contains the support of some Laplacian eigenvector,
//   PCS  - is exactly the support of some eigenvector,
//   MPCS - a PCS with no proper subset that is a PCS.
enum class CriticalKind { cs, pcs, mpcs };
enum class CriticalOrigin { twin, quad, spine8, spine4n, brute_force };

const char* to_string(CriticalKind kind);
const char* to_string(CriticalOrigin origin);

struct CriticalRecord {
  VertexSet vertices;
  CriticalKind kind = CriticalKind::mpcs;
  CriticalOrigin origin = CriticalOrigin::brute_force;
  Witness witness;
  bool verified_exact = false;  // confirmed against a complete brute-force catalog
};

struct MpcsCatalog {
  std::vector<CriticalRecord> records;
  bool complete = false;

  bool contains(const VertexSet& s) const;
  std::vector<VertexSet> sets() const;
};

inline const double kQuadLambda = (3.0 - 2.2360679774997896964) / 2.0;
inline const double kQuadLambdaHigh = (3.0 + 2.2360679774997896964) / 2.0;

std::optional<Witness> is_critical(const SpectralDecomposition& decomp, const VertexSet& s);
std::optional<Witness> is_perfect_critical(const SpectralDecomposition& decomp, const VertexSet& s);

struct MpcsCheck {
  bool perfect = false;  // S is a PCS
  bool minimal = false;  // no proper subset is a PCS
  std::optional<Witness> witness;

  bool is_mpcs() const { return perfect && minimal; }
};

// S is an MPCS iff every eigenspace admits at most a one-dimensional family
// of vectors supported inside S, each such family has full support on S, and
// at least one such family exists. Polynomial in |S|; no subset enumeration.
MpcsCheck is_mpcs(const SpectralDecomposition& decomp, const VertexSet& s);

inline constexpr int kBruteForceMpcsCap = 16;

// Subsets by increasing size; a PCS with no previously recorded MPCS inside
// it is minimal. Throws Error(limit_exceeded) when n > n_cap.
MpcsCatalog enumerate_mpcs_bruteforce(const SpectralDecomposition& decomp, int n_cap = kBruteForceMpcsCap);

// Every PCS of the graph (no minimality filter), by increasing size.
std::vector<VertexSet> enumerate_pcs_bruteforce(const SpectralDecomposition& decomp,
                                                int n_cap = kBruteForceMpcsCap);

struct Verification {
  bool ok = false;
  CriticalRecord record;
  std::string reason;  // empty when ok
};

// PCS + minimality, and, when expected eigenvalues are given, a match within
// 1e-8 of one of them. `reference` (a complete catalog) sets verified_exact.
Verification verify_mpcs(const SpectralDecomposition& decomp, const VertexSet& s,
                         const std::vector<double>& expected_lambdas = {},
                         const MpcsCatalog* reference = nullptr);

// Pairs {u, w} such that every other vertex sees both or neither of them.
std::vector<CriticalRecord> detect_twins(const Graph& g, const MpcsCatalog* reference = nullptr);

// Two pure 2-paths hanging from a common vertex. Every vertex of the graph is
// scanned, so 2-paths that lie along the spine count too (P5 is one quad).
std::vector<CriticalRecord> detect_quads(const Graph& g, const SpectralDecomposition& decomp,
                                         const MpcsCatalog* reference = nullptr);

// Spine runs anchored on both sides by a spine vertex outside the set that
// carries a pure 2-path inside the set, with pendant-carrying spine pairs in
// between separated by single excluded spine vertices. Sizes 8, 12, 16, ...
// Candidates are emitted only after verify_mpcs accepts them.
std::vector<CriticalRecord> detect_spine_patterns(const Graph& g, const SpectralDecomposition& decomp,
                                                  const AttachmentProfile& profile,
                                                  const MpcsCatalog* reference = nullptr);

}  // namespace lobsterctl
