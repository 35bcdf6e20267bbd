#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "lobsterctl/lobster.hpp"
#include "lobsterctl/mpcs.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace lobsterctl;

namespace {

std::vector<VertexSet> record_sets(const std::vector<CriticalRecord>& records) {
  std::vector<VertexSet> out;
  for (const auto& r : records) out.push_back(r.vertices);
  std::sort(out.begin(), out.end());
  return out;
}

// y normalised to unit max-norm with a positive entry at `anchor`.
Eigen::VectorXd normalized(const Eigen::VectorXd& y, int anchor) {
  Eigen::VectorXd z = y / y.cwiseAbs().maxCoeff();
  if (z(anchor - 1) < 0) z = -z;
  return z;
}

const double kPhi = (std::sqrt(5.0) + 1.0) / 2.0;

}  // namespace

TEST_CASE("critical and perfectly critical sets of the seven-vertex example") {
  const auto d = eigen_decompose(oracle::example7());
  CHECK_FALSE(is_critical(d, {3, 5}).has_value());
  const auto cs = is_critical(d, {1, 2, 3, 5, 6, 7});
  REQUIRE(cs.has_value());
  CHECK(cs->lambda == doctest::Approx(1.0));
  const auto all = is_critical(d, {1, 2, 3, 4, 5, 6, 7});
  REQUIRE(all.has_value());
  CHECK(std::abs(all->lambda) < 1e-9);

  const auto pcs = is_perfect_critical(d, {1, 3, 5, 6, 7});
  REQUIRE(pcs.has_value());
  CHECK(pcs->lambda == doctest::Approx(1.0));
  CHECK_FALSE(is_perfect_critical(d, {1, 2, 3, 5, 6, 7}).has_value());
  const auto pair = is_perfect_critical(d, {5, 6});
  REQUIRE(pair.has_value());
  CHECK(pair->lambda == doctest::Approx(1.0));
  CHECK(pair->y(4) == doctest::Approx(-pair->y(5)));
}

TEST_CASE("is_mpcs") {
  const auto d = eigen_decompose(oracle::example7());
  CHECK(is_mpcs(d, {1, 3}).is_mpcs());
  const auto big = is_mpcs(d, {1, 3, 5, 6, 7});
  CHECK(big.perfect);
  CHECK_FALSE(big.minimal);

  const auto p5 = is_mpcs(eigen_decompose(path_graph(5)), {1, 2, 4, 5});
  CHECK(p5.is_mpcs());
  REQUIRE(p5.witness.has_value());
  CHECK(std::abs(p5.witness->lambda - kQuadLambda) < 1e-9);
}

TEST_CASE("brute-force catalogs") {
  const auto fig = enumerate_mpcs_bruteforce(eigen_decompose(oracle::example7()));
  CHECK(fig.complete);
  const std::vector<VertexSet> want = {{1, 3}, {5, 6}, {5, 7}, {6, 7}};
  CHECK(fig.sets() == want);

  CHECK(enumerate_mpcs_bruteforce(eigen_decompose(Graph(2, {{1, 2}}))).sets() == std::vector<VertexSet>{{1, 2}});

  const auto p5 = enumerate_mpcs_bruteforce(eigen_decompose(path_graph(5)));
  CHECK(p5.contains({1, 2, 4, 5}));
  for (const auto& s : p5.sets()) CHECK(s.size() != 3);

  CHECK(error_code([] { enumerate_mpcs_bruteforce(eigen_decompose(path_graph(17))); }) ==
        ErrorCode::limit_exceeded);
}

TEST_CASE("verify_mpcs") {
  const auto d = eigen_decompose(oracle::example7());
  CHECK(verify_mpcs(d, {1, 3}, {1.0}).ok);
  CHECK_FALSE(verify_mpcs(d, {1, 3}, {2.0}).ok);
  CHECK_FALSE(verify_mpcs(d, {1, 3, 5}).ok);
  const auto ref = enumerate_mpcs_bruteforce(d);
  CHECK(verify_mpcs(d, {5, 7}, {}, &ref).record.verified_exact);

  const auto quad = verify_mpcs(eigen_decompose(path_graph(5)), {1, 2, 4, 5}, {kQuadLambda});
  REQUIRE(quad.ok);
  // Inner vertices 2 and 4, tips 1 and 5.
  const auto y = normalized(quad.record.witness.y, 5);
  CHECK(std::abs(y(4) - 1.0) < 1e-8);
  CHECK(std::abs(y(3) - 1.0 / kPhi) < 1e-8);
  CHECK(std::abs(y(1) + 1.0 / kPhi) < 1e-8);
  CHECK(std::abs(y(0) + 1.0) < 1e-8);
}

TEST_CASE("twin detection") {
  const auto g = oracle::example7();
  const auto twins = detect_twins(g);
  CHECK(record_sets(twins) == std::vector<VertexSet>{{1, 3}, {5, 6}, {5, 7}, {6, 7}});
  for (const auto& t : twins) CHECK(t.witness.lambda == 1.0);

  CHECK(detect_twins(path_graph(5)).empty());

  const Graph k3(3, {{1, 2}, {1, 3}, {2, 3}});
  const auto tri = detect_twins(k3);
  CHECK(tri.size() == 3);
  for (const auto& t : tri) CHECK(t.witness.lambda == 3.0);
}

TEST_CASE("twins equal the size-2 part of the brute-force catalog") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + trial % 11;
    const auto g = trial % 3 ? oracle::random_tree(n, rng) : oracle::random_connected(n, 0.35, rng);
    const auto d = eigen_decompose(g);
    const auto twins = record_sets(detect_twins(g));
    CHECK(twins == oracle::twin_pairs(g));
    std::vector<VertexSet> pairs;
    for (const auto& s : enumerate_mpcs_bruteforce(d).sets())
      if (s.size() == 2) pairs.push_back(s);
    std::sort(pairs.begin(), pairs.end());
    CHECK(twins == pairs);
    for (const auto& t : detect_twins(g)) {
      CHECK(relative_residual(d, t.witness) < 1e-9);
    }
  }
}

TEST_CASE("quad detection") {
  SUBCASE("two 2-paths on one vertex") {
    const auto g = build_lobster({3, {{}, {2, 2}, {}}});
    const auto d = eigen_decompose(g);
    const auto quads = detect_quads(g, d);
    // Vertex 2 carries (4,5) and (6,7); the spine ends are single vertices.
    REQUIRE(quads.size() == 1);
    CHECK(quads[0].vertices == VertexSet{4, 5, 6, 7});
    CHECK(std::abs(quads[0].witness.lambda - kQuadLambda) < 1e-9);
    const auto y = normalized(quads[0].witness.y, 5);
    // (inner1, tip1, inner2, tip2) = (4, 5, 6, 7) against (1, phi, -1, -phi) / phi.
    CHECK(std::abs(y(3) - 1.0 / kPhi) < 1e-8);
    CHECK(std::abs(y(4) - 1.0) < 1e-8);
    CHECK(std::abs(y(5) + 1.0 / kPhi) < 1e-8);
    CHECK(std::abs(y(6) + 1.0) < 1e-8);
    for (int v : {1, 2, 3}) CHECK(y(v - 1) == 0.0);
  }
  SUBCASE("three 2-paths give all three pairs") {
    const auto g = build_lobster({3, {{}, {2, 2, 2}, {}}});
    const auto d = eigen_decompose(g);
    const auto quads = record_sets(detect_quads(g, d));
    CHECK(quads == std::vector<VertexSet>{{4, 5, 6, 7}, {4, 5, 8, 9}, {6, 7, 8, 9}});
    const auto brute = enumerate_mpcs_bruteforce(d);
    for (const auto& q : quads) CHECK(brute.contains(q));
  }
  SUBCASE("P5 is a quad around its centre") {
    const auto g = path_graph(5);
    CHECK(record_sets(detect_quads(g, eigen_decompose(g))) == std::vector<VertexSet>{{1, 2, 4, 5}});
  }
  SUBCASE("no 2-paths") {
    const auto g = build_lobster({5, {{}, {1}, {1, 1}, {1}, {}}});
    CHECK(detect_quads(g, eigen_decompose(g)).empty());
  }
}

TEST_CASE("eight-vertex spine pattern against brute force") {
  // Spine a-b-c-d with a 2-path on a and d and one pendant on b and c.
  const auto g = build_lobster({4, {{2}, {1}, {1}, {2}}});
  REQUIRE(g.size() == 10);
  const auto d = eigen_decompose(g);
  const auto brute = enumerate_mpcs_bruteforce(d);
  const VertexSet cand = {2, 3, 5, 6, 7, 8, 9, 10};
  const auto found = detect_spine_patterns(g, d, analyze_lobster(g), &brute);
  const bool in_brute = brute.contains(cand);
  CHECK(in_brute);
  REQUIRE(found.size() == 1);
  CHECK(found[0].vertices == cand);
  CHECK(found[0].origin == CriticalOrigin::spine8);
  CHECK(found[0].verified_exact);
  const double lam = found[0].witness.lambda;
  CHECK((std::abs(lam - kQuadLambda) < 1e-8 || std::abs(lam - kQuadLambdaHigh) < 1e-8));
}

TEST_CASE("twelve-vertex spine pattern") {
  // Two pendant pairs separated by one bare spine vertex, anchored by 2-paths.
  const auto g = build_lobster({7, {{2}, {1}, {1}, {}, {1}, {1}, {2}}});
  const auto d = eigen_decompose(g);
  const auto found = detect_spine_patterns(g, d, analyze_lobster(g));
  bool has12 = false;
  for (const auto& r : found) {
    CHECK(verify_mpcs(d, r.vertices).ok);
    if (r.vertices.size() == 12) {
      has12 = true;
      CHECK(r.origin == CriticalOrigin::spine4n);
    }
  }
  CHECK(has12);
}

TEST_CASE("spine patterns need anchors and pendant pairs") {
  const auto caterpillar = build_lobster({6, {{}, {1}, {1}, {1}, {1}, {}}});
  CHECK(detect_spine_patterns(caterpillar, eigen_decompose(caterpillar), analyze_lobster(caterpillar)).empty());
  const auto quads_only = build_lobster({5, {{}, {2, 2}, {}, {2, 2}, {}}});
  CHECK(detect_spine_patterns(quads_only, eigen_decompose(quads_only), analyze_lobster(quads_only)).empty());
}

TEST_CASE("detector records are sound and appear in the brute-force catalog") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 400 && checked < 120; ++seed) {
    const auto spec = random_lobster(4 + static_cast<int>(seed % 5), seed, 4);
    const auto g = build_lobster(spec);
    if (g.size() > 16) continue;
    ++checked;
    const auto d = eigen_decompose(g);
    const auto brute = enumerate_mpcs_bruteforce(d);
    std::vector<CriticalRecord> all = detect_twins(g, &brute);
    for (auto& r : detect_quads(g, d, &brute)) all.push_back(r);
    for (auto& r : detect_spine_patterns(g, d, analyze_lobster(g), &brute)) all.push_back(r);
    for (const auto& r : all) {
      CHECK(verify_mpcs(d, r.vertices).ok);
      CHECK(brute.contains(r.vertices));
      CHECK(r.verified_exact);
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("minimality test agrees with subset enumeration") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = oracle::random_tree(3 + trial % 9, rng);
    const auto d = eigen_decompose(g);
    const auto pcs = enumerate_pcs_bruteforce(d);
    const auto mpcs = enumerate_mpcs_bruteforce(d);
    for (const auto& s : pcs) {
      bool has_proper = false;
      for (const auto& t : pcs)
        if (t.size() < s.size() && std::includes(s.begin(), s.end(), t.begin(), t.end())) has_proper = true;
      CHECK(is_mpcs(d, s).is_mpcs() == !has_proper);
      CHECK(mpcs.contains(s) == !has_proper);
    }
  }
}

TEST_CASE("structural properties of critical sets on random graphs") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 2 + trial % 10;
    const auto g = trial % 2 ? oracle::random_tree(n, rng) : oracle::random_connected(n, 0.3, rng);
    const auto d = eigen_decompose(g);
    for (Vertex v = 1; v <= n; ++v) CHECK_FALSE(is_critical(d, {v}).has_value());
    for (const auto& s : enumerate_mpcs_bruteforce(d).sets()) CHECK(s.size() != 3);
    for (const auto& s : enumerate_pcs_bruteforce(d)) {
      const int k = static_cast<int>(s.size());
      for (Vertex v = 1; v <= n; ++v) {
        if (contains(s, v)) continue;
        int seen = 0;
        for (Vertex u : g.neighbors(v)) seen += contains(s, u);
        CHECK(seen != 1);
        if (k > 2) CHECK(seen != k - 1);
      }
    }
  }
}

TEST_CASE("sets seen all-or-nothing from outside are critical") {
  std::mt19937_64 rng(83);
  int tested = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 10;
    const auto g = oracle::random_connected(n, 0.4, rng);
    const auto d = eigen_decompose(g);
    for (std::uint32_t mask = 3; mask < (1u << n); mask += 7) {
      VertexSet s;
      for (int v = 1; v <= n; ++v)
        if (mask >> (v - 1) & 1u) s.push_back(v);
      if (s.size() < 2) continue;
      bool uniform = true;
      for (Vertex v = 1; v <= n && uniform; ++v) {
        if (contains(s, v)) continue;
        int seen = 0;
        for (Vertex u : g.neighbors(v)) seen += contains(s, u);
        uniform = seen == 0 || seen == static_cast<int>(s.size());
      }
      if (!uniform) continue;
      ++tested;
      CHECK(is_critical(d, s).has_value());
    }
  }
  CHECK(tested > 50);
}
