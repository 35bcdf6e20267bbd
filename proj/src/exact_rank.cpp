#include "lobsterctl/exact_rank.hpp"

#include <deque>
#include <utility>

#include "lobsterctl/error.hpp"

namespace lobsterctl {

int bareiss_rank(BigMatrix m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  for (const auto& r : m) {
    if (r.size() != cols) throw Error(ErrorCode::invalid_argument, "ragged matrix");
  }

  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    const mpz_class& p = m[rank][col];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const mpz_class factor = m[i][col];
      for (std::size_t j = col + 1; j < cols; ++j) {
        mpz_class num = p * m[i][j] - factor * m[rank][j];
        if (!mpz_divisible_p(num.get_mpz_t(), prev.get_mpz_t())) {
          throw Error(ErrorCode::internal, "Bareiss step produced a non-exact division");
        }
        mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][col] = 0;
    }
    prev = p;
    ++rank;
  }
  return static_cast<int>(rank);
}

BigMatrix controllability_matrix(const IntMatrix& A, const IntMatrix& B) {
  const Eigen::Index n = A.rows();
  const Eigen::Index m = B.cols();
  BigMatrix C(static_cast<std::size_t>(n), std::vector<mpz_class>(static_cast<std::size_t>(n * m)));
  // block holds A^k B
  std::vector<std::vector<mpz_class>> block(static_cast<std::size_t>(n), std::vector<mpz_class>(static_cast<std::size_t>(m)));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) block[i][j] = static_cast<long>(B(i, j));
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < m; ++j) C[i][k * m + j] = block[i][j];
    if (k + 1 == n) break;
    auto next = block;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) {
        mpz_class acc = 0;
        for (Eigen::Index t = 0; t < n; ++t) {
          if (A(i, t) != 0) acc += static_cast<long>(A(i, t)) * block[t][j];
        }
        next[i][j] = std::move(acc);
      }
    }
    block = std::move(next);
  }
  return C;
}

namespace {

using BigVec = std::vector<mpz_class>;

void remove_content(BigVec& v) {
  mpz_class g = 0;
  for (const auto& x : v) {
    if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1) {
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
}

BigVec mat_vec(const IntMatrix& A, const BigVec& v) {
  BigVec out(v.size());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    mpz_class acc = 0;
    for (Eigen::Index t = 0; t < A.cols(); ++t) {
      if (A(i, t) != 0 && v[t] != 0) acc += static_cast<long>(A(i, t)) * v[t];
    }
    out[i] = std::move(acc);
  }
  return out;
}

struct EchelonRow {
  std::size_t pivot;
  BigVec v;
};

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(r & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(r >> 61);
  std::uint64_t s = lo + hi;
  return s >= kPrime ? s - kPrime : s;
}

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}

std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mod_mul(r, a);
    a = mod_mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t to_mod(std::int64_t x) {
  return x >= 0 ? static_cast<std::uint64_t>(x) % kPrime
                : kPrime - (static_cast<std::uint64_t>(-x) % kPrime);
}

}  // namespace

int krylov_rank_exact(const IntMatrix& A, const IntMatrix& B) {
  const std::size_t n = static_cast<std::size_t>(A.rows());
  if (n == 0) return 0;
  std::deque<BigVec> queue;
  for (Eigen::Index j = 0; j < B.cols(); ++j) {
    BigVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<long>(B(static_cast<Eigen::Index>(i), j));
    queue.push_back(std::move(v));
  }
  std::vector<EchelonRow> basis;
  while (!queue.empty() && basis.size() < n) {
    BigVec w = std::move(queue.front());
    queue.pop_front();
    for (const auto& row : basis) {
      if (w[row.pivot] == 0) continue;
      const mpz_class a = row.v[row.pivot];
      const mpz_class b = w[row.pivot];
      for (std::size_t i = 0; i < n; ++i) w[i] = a * w[i] - b * row.v[i];
      remove_content(w);
    }
    std::size_t pivot = 0;
    while (pivot < n && w[pivot] == 0) ++pivot;
    if (pivot == n) continue;
    remove_content(w);
    queue.push_back(mat_vec(A, w));
    basis.push_back({pivot, std::move(w)});
  }
  return static_cast<int>(basis.size());
}

int krylov_rank_mod_p(const IntMatrix& A, const IntMatrix& B) {
  const std::size_t n = static_cast<std::size_t>(A.rows());
  if (n == 0) return 0;
  using ModVec = std::vector<std::uint64_t>;
  std::vector<ModVec> Am(n, ModVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) Am[i][j] = to_mod(A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));

  std::deque<ModVec> queue;
  for (Eigen::Index j = 0; j < B.cols(); ++j) {
    ModVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = to_mod(B(static_cast<Eigen::Index>(i), j));
    queue.push_back(std::move(v));
  }
  // basis rows are normalized so that the pivot entry is 1
  std::vector<std::pair<std::size_t, ModVec>> basis;
  while (!queue.empty() && basis.size() < n) {
    ModVec w = std::move(queue.front());
    queue.pop_front();
    for (const auto& [pivot, v] : basis) {
      const std::uint64_t f = w[pivot];
      if (f == 0) continue;
      for (std::size_t i = 0; i < n; ++i) w[i] = mod_sub(w[i], mod_mul(f, v[i]));
    }
    std::size_t pivot = 0;
    while (pivot < n && w[pivot] == 0) ++pivot;
    if (pivot == n) continue;
    const std::uint64_t inv = mod_pow(w[pivot], kPrime - 2);
    for (auto& x : w) x = mod_mul(x, inv);
    ModVec image(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t t = 0; t < n; ++t) {
        if (Am[i][t] != 0 && w[t] != 0) acc = mod_add(acc, mod_mul(Am[i][t], w[t]));
      }
      image[i] = acc;
    }
    queue.push_back(std::move(image));
    basis.emplace_back(pivot, std::move(w));
  }
  return static_cast<int>(basis.size());
}

}  // namespace lobsterctl
