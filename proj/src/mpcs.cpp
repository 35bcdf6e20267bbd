#include "lobsterctl/mpcs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>

#include "lobsterctl/error.hpp"

namespace lobsterctl {

const char* to_string(CriticalKind kind) {
  switch (kind) {
    case CriticalKind::cs: return "CS";
    case CriticalKind::pcs: return "PCS";
    case CriticalKind::mpcs: return "MPCS";
  }
  return "?";
}

const char* to_string(CriticalOrigin origin) {
  switch (origin) {
    case CriticalOrigin::twin: return "twin";
    case CriticalOrigin::quad: return "quad";
    case CriticalOrigin::spine8: return "spine8";
    case CriticalOrigin::spine4n: return "spine4n";
    case CriticalOrigin::brute_force: return "brute-force";
  }
  return "?";
}

bool MpcsCatalog::contains(const VertexSet& s) const {
  return std::any_of(records.begin(), records.end(), [&](const CriticalRecord& r) { return r.vertices == s; });
}

std::vector<VertexSet> MpcsCatalog::sets() const {
  std::vector<VertexSet> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.vertices);
  return out;
}

std::optional<Witness> is_critical(const SpectralDecomposition& decomp, const VertexSet& s) {
  if (s.empty()) throw Error(ErrorCode::invalid_argument, "critical-set query needs a nonempty set");
  return exists_support_within(decomp, s);
}

std::optional<Witness> is_perfect_critical(const SpectralDecomposition& decomp, const VertexSet& s) {
  return exists_support_exactly(decomp, s);
}

MpcsCheck is_mpcs(const SpectralDecomposition& decomp, const VertexSet& s) {
  if (s.empty()) throw Error(ErrorCode::invalid_argument, "MPCS query needs a nonempty set");
  MpcsCheck out;
  out.minimal = true;
  const VertexSet outside = complement(s, decomp.size());
  for (const auto& space : decomp.spaces) {
    const Eigen::MatrixXd K = vanishing_subspace(space, outside);
    if (K.cols() == 0) continue;
    if (K.cols() >= 2) {
      // a 2-dim family always contains a vector vanishing somewhere on S
      out.minimal = false;
      out.perfect = out.perfect || exists_support_exactly(decomp, s).has_value();
      continue;
    }
    Eigen::VectorXd y = space.basis * K.col(0);
    y /= y.cwiseAbs().maxCoeff();
    const bool full = std::all_of(s.begin(), s.end(), [&](Vertex v) { return std::abs(y(v - 1)) > kZeroTol; });
    if (!full) {
      out.minimal = false;
      continue;
    }
    out.perfect = true;
    if (!out.witness) {
      for (Vertex v : outside) y(v - 1) = 0.0;
      out.witness = Witness{space.value, std::move(y)};
    }
  }
  if (!out.perfect) out.minimal = false;
  if (out.perfect && !out.witness) out.witness = exists_support_exactly(decomp, s);
  return out;
}

namespace {

using Mask = std::uint32_t;

VertexSet mask_to_set(Mask m) {
  VertexSet s;
  for (int v = 0; m; ++v, m >>= 1)
    if (m & 1u) s.push_back(v + 1);
  return s;
}

// Subset-test acceleration for small graphs: simple eigenvalues reduce to a
// support-mask comparison; only repeated eigenvalues need the linear algebra.
class SupportIndex {
 public:
  explicit SupportIndex(const SpectralDecomposition& decomp) : decomp_(decomp) {
    for (const auto& space : decomp.spaces) {
      if (space.multiplicity() != 1) {
        has_multiple_ = true;
        continue;
      }
      const Eigen::VectorXd& u = space.basis.col(0);
      const double scale = u.cwiseAbs().maxCoeff();
      Mask m = 0;
      for (Eigen::Index i = 0; i < u.size(); ++i)
        if (std::abs(u(i)) > kZeroTol * scale) m |= Mask{1} << i;
      simple_supports_.push_back(m);
    }
  }

  bool is_pcs(Mask s) const {
    if (std::find(simple_supports_.begin(), simple_supports_.end(), s) != simple_supports_.end()) return true;
    if (!has_multiple_) return false;
    const VertexSet set = mask_to_set(s);
    const VertexSet outside = complement(set, decomp_.size());
    for (const auto& space : decomp_.spaces) {
      if (space.multiplicity() == 1) continue;
      const Eigen::MatrixXd K = vanishing_subspace(space, outside);
      if (K.cols() == 0) continue;
      const Eigen::MatrixXd W = space.basis * K;
      const double wmax = W.cwiseAbs().maxCoeff();
      bool dead = false;
      for (Vertex v : set) {
        if (W.row(v - 1).cwiseAbs().maxCoeff() <= kZeroTol * wmax) {
          dead = true;
          break;
        }
      }
      if (!dead) return true;
    }
    return false;
  }

 private:
  const SpectralDecomposition& decomp_;
  std::vector<Mask> simple_supports_;
  bool has_multiple_ = false;
};

std::vector<Mask> masks_by_size(int n) {
  std::vector<Mask> all;
  all.reserve(std::size_t{1} << n);
  for (Mask m = 1; m < (Mask{1} << n); ++m) all.push_back(m);
  std::stable_sort(all.begin(), all.end(), [](Mask a, Mask b) { return __builtin_popcount(a) < __builtin_popcount(b); });
  return all;
}

void check_cap(int n, int n_cap) {
  if (n > n_cap || n > 24) {
    std::ostringstream os;
    os << "brute-force enumeration refused for n=" << n << " (limit " << n_cap << ")";
    throw Error(ErrorCode::limit_exceeded, os.str());
  }
}

}  // namespace

MpcsCatalog enumerate_mpcs_bruteforce(const SpectralDecomposition& decomp, int n_cap) {
  const int n = decomp.size();
  check_cap(n, n_cap);
  SupportIndex index(decomp);
  std::vector<Mask> found;
  MpcsCatalog out;
  out.complete = true;
  for (Mask m : masks_by_size(n)) {
    if (std::any_of(found.begin(), found.end(), [m](Mask f) { return (f & m) == f; })) continue;
    if (!index.is_pcs(m)) continue;
    found.push_back(m);
    CriticalRecord rec;
    rec.vertices = mask_to_set(m);
    rec.kind = CriticalKind::mpcs;
    rec.origin = CriticalOrigin::brute_force;
    rec.witness = *exists_support_exactly(decomp, rec.vertices);
    rec.verified_exact = true;
    out.records.push_back(std::move(rec));
  }
  return out;
}

std::vector<VertexSet> enumerate_pcs_bruteforce(const SpectralDecomposition& decomp, int n_cap) {
  const int n = decomp.size();
  check_cap(n, n_cap);
  SupportIndex index(decomp);
  std::vector<VertexSet> out;
  for (Mask m : masks_by_size(n))
    if (index.is_pcs(m)) out.push_back(mask_to_set(m));
  return out;
}

Verification verify_mpcs(const SpectralDecomposition& decomp, const VertexSet& s,
                         const std::vector<double>& expected_lambdas, const MpcsCatalog* reference) {
  Verification out;
  out.record.vertices = s;
  const MpcsCheck check = is_mpcs(decomp, s);
  if (!check.perfect) {
    out.reason = "not a perfect critical set";
    out.record.kind = is_critical(decomp, s) ? CriticalKind::cs : CriticalKind::pcs;
    return out;
  }
  out.record.witness = *check.witness;
  if (!check.minimal) {
    out.record.kind = CriticalKind::pcs;
    out.reason = "a proper subset is a perfect critical set";
    return out;
  }
  out.record.kind = CriticalKind::mpcs;
  if (!expected_lambdas.empty()) {
    const double got = check.witness->lambda;
    const bool match = std::any_of(expected_lambdas.begin(), expected_lambdas.end(), [got](double e) {
      return std::abs(got - e) <= 1e-8 * std::max(1.0, std::abs(e));
    });
    if (!match) {
      std::ostringstream os;
      os << "eigenvalue " << got << " does not match the expected value";
      out.reason = os.str();
      return out;
    }
  }
  out.record.verified_exact = reference && reference->complete && reference->contains(s);
  out.ok = true;
  return out;
}

std::vector<CriticalRecord> detect_twins(const Graph& g, const MpcsCatalog* reference) {
  std::vector<CriticalRecord> out;
  const int n = g.size();
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex w = u + 1; w <= n; ++w) {
      if (g.degree(u) != g.degree(w)) continue;
      const bool adj = g.adjacent(u, w);
      std::vector<Vertex> nu;
      std::vector<Vertex> nw;
      for (Vertex x : g.neighbors(u))
        if (x != w) nu.push_back(x);
      for (Vertex x : g.neighbors(w))
        if (x != u) nw.push_back(x);
      if (nu != nw) continue;
      CriticalRecord rec;
      rec.vertices = {u, w};
      rec.kind = CriticalKind::mpcs;
      rec.origin = CriticalOrigin::twin;
      rec.witness.lambda = g.degree(u) + (adj ? 1 : 0);
      rec.witness.y = Eigen::VectorXd::Zero(n);
      rec.witness.y(u - 1) = 1.0;
      rec.witness.y(w - 1) = -1.0;
      rec.verified_exact = reference && reference->complete && reference->contains(rec.vertices);
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::vector<CriticalRecord> detect_quads(const Graph& g, const SpectralDecomposition& decomp,
                                         const MpcsCatalog* reference) {
  std::vector<CriticalRecord> out;
  for (Vertex v = 1; v <= g.size(); ++v) {
    const auto paths = hanging_two_paths(g, v);
    for (std::size_t i = 0; i < paths.size(); ++i) {
      for (std::size_t j = i + 1; j < paths.size(); ++j) {
        const VertexSet s = make_vertex_set({paths[i].inner, paths[i].tip, paths[j].inner, paths[j].tip});
        auto ver = verify_mpcs(decomp, s, {kQuadLambda}, reference);
        if (!ver.ok) continue;
        ver.record.origin = CriticalOrigin::quad;
        out.push_back(std::move(ver.record));
      }
    }
  }
  return out;
}

namespace {

// Spine vertex at index i with exactly one off-spine neighbour, which is a leaf.
std::optional<Vertex> single_pendant(const Graph& g, const std::vector<Vertex>& spine, std::size_t i) {
  if (i == 0 || i + 1 >= spine.size()) return std::nullopt;
  const Vertex v = spine[i];
  if (g.degree(v) != 3) return std::nullopt;
  for (Vertex u : g.neighbors(v)) {
    if (u == spine[i - 1] || u == spine[i + 1]) continue;
    if (g.degree(u) == 1) return u;
  }
  return std::nullopt;
}

void scan_spine(const Graph& g, const SpectralDecomposition& decomp, const std::vector<Vertex>& spine,
                const MpcsCatalog* reference, std::set<VertexSet>& seen, std::vector<CriticalRecord>& out) {
  const std::size_t len = spine.size();
  for (std::size_t start = 1; start + 2 < len; ++start) {
    const auto left = hanging_two_paths(g, spine[start - 1], {spine[start]});
    if (left.empty()) continue;
    std::vector<Vertex> core;  // pair vertices and their pendants
    for (std::size_t b = start; b + 2 < len; b += 3) {
      const auto pb = single_pendant(g, spine, b);
      const auto pc = single_pendant(g, spine, b + 1);
      if (!pb || !pc) break;
      core.insert(core.end(), {spine[b], *pb, spine[b + 1], *pc});
      const std::size_t anchor = b + 2;
      const auto right = hanging_two_paths(g, spine[anchor], {spine[b + 1]});
      for (const auto& lp : left) {
        for (const auto& rp : right) {
          std::vector<Vertex> cand = core;
          cand.insert(cand.end(), {lp.inner, lp.tip, rp.inner, rp.tip});
          VertexSet s = make_vertex_set(std::move(cand));
          if (!seen.insert(s).second) continue;
          auto ver = verify_mpcs(decomp, s, {kQuadLambda, kQuadLambdaHigh}, reference);
          if (!ver.ok) continue;
          ver.record.origin = s.size() == 8 ? CriticalOrigin::spine8 : CriticalOrigin::spine4n;
          out.push_back(std::move(ver.record));
        }
      }
    }
  }
}

}  // namespace

std::vector<CriticalRecord> detect_spine_patterns(const Graph& g, const SpectralDecomposition& decomp,
                                                  const AttachmentProfile& profile, const MpcsCatalog* reference) {
  std::vector<CriticalRecord> out;
  std::set<VertexSet> seen;
  scan_spine(g, decomp, profile.spine, reference, seen, out);
  std::vector<Vertex> reversed(profile.spine.rbegin(), profile.spine.rend());
  scan_spine(g, decomp, reversed, reference, seen, out);
  return out;
}

}  // namespace lobsterctl
