#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "lobsterctl/graph.hpp"

namespace lobsterctl {

using BigMatrix = std::vector<std::vector<mpz_class>>;  // row-major

// Rank over Q of an integer matrix by fraction-free (Bareiss) elimination.
// Every division performed is exact; a non-exact division throws
// Error(internal).
int bareiss_rank(BigMatrix m);

// The Kalman matrix [B, AB, A^2 B, ..., A^{N-1} B] with N = rows(A).
BigMatrix controllability_matrix(const IntMatrix& A, const IntMatrix& B);

// rank [B, AB, ..., A^{N-1}B] over Q, computed as the dimension of the
// smallest A-invariant subspace containing the columns of B. Vectors are kept
// in integer echelon form with content removed. Stops early once the rank
// reaches N.
int krylov_rank_exact(const IntMatrix& A, const IntMatrix& B);

// Same quantity over GF(p) for the prime p = 2^61 - 1. Never exceeds the
// rank over Q, so a full result certifies full rank over Q.
int krylov_rank_mod_p(const IntMatrix& A, const IntMatrix& B);

}  // namespace lobsterctl
