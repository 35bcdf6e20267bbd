#include <doctest.h>

#include <map>
#include <random>

#include "lobsterctl/error.hpp"
#include "lobsterctl/graph.hpp"
#include "lobsterctl/io.hpp"
#include "lobsterctl/lobster.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace lobsterctl;

TEST_CASE("laplacian of the seven-vertex example matches the typed matrix") {
  const auto L = laplacian(oracle::example7());
  const auto want = oracle::example7_laplacian();
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) CHECK(L(i, j) == want[i][j]);
}

TEST_CASE("laplacian small cases") {
  const auto k2 = laplacian(Graph(2, {{1, 2}}));
  CHECK(k2(0, 0) == 1);
  CHECK(k2(0, 1) == -1);
  CHECK(k2(1, 0) == -1);
  CHECK(k2(1, 1) == 1);

  const auto p5 = laplacian(path_graph(5));
  const int diag[] = {1, 2, 2, 2, 1};
  for (int i = 0; i < 5; ++i) {
    CHECK(p5(i, i) == diag[i]);
    for (int j = 0; j < 5; ++j)
      if (std::abs(i - j) > 1) CHECK(p5(i, j) == 0);
  }
}

TEST_CASE("laplacian rows sum to zero and the matrix is symmetric") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = oracle::random_connected(2 + trial % 12, 0.3, rng);
    const auto L = laplacian(g);
    CHECK(L == L.transpose());
    CHECK(L.rowwise().sum().isZero());
    for (Vertex v = 1; v <= g.size(); ++v) CHECK(L(v - 1, v - 1) == g.degree(v));
  }
}

TEST_CASE("graph construction rejects bad edges and names them") {
  CHECK(error_code([] { Graph(3, {{1, 1}}); }) == ErrorCode::invalid_argument);
  CHECK(error_code([] { Graph(3, {{1, 4}}); }) == ErrorCode::invalid_argument);
  CHECK(error_code([] { Graph(3, {{1, 2}, {2, 1}}); }) == ErrorCode::invalid_argument);
  CHECK(error_message([] { Graph(3, {{1, 2}, {2, 1}}); }).find("2") != std::string::npos);
}

TEST_CASE("connectivity and tree predicates") {
  CHECK(oracle::example7().is_tree());
  CHECK(path_graph(1).is_tree());
  const Graph cycle(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
  CHECK(cycle.is_connected());
  CHECK_FALSE(cycle.is_tree());
  const Graph split(4, {{1, 2}, {3, 4}});
  CHECK_FALSE(split.is_connected());
  CHECK_FALSE(split.is_tree());
}

TEST_CASE("build_lobster numbering") {
  SUBCASE("bare spine is a path") { CHECK(build_lobster({5, {{}, {}, {}, {}, {}}}) == path_graph(5)); }
  SUBCASE("two pendants on the first spine vertex") {
    const auto g = build_lobster({2, {{1, 1}, {}}});
    CHECK(g == Graph(4, {{1, 2}, {1, 3}, {1, 4}}));
    CHECK(g.degree(1) == 3);
    CHECK(g.degree(2) == 1);
    CHECK(g.degree(3) == 1);
    CHECK(g.degree(4) == 1);
  }
  SUBCASE("2-paths are numbered inner then tip") {
    const auto g = build_lobster({3, {{}, {2, 1}, {}}});
    CHECK(g == Graph(6, {{1, 2}, {2, 3}, {2, 4}, {4, 5}, {2, 6}}));
  }
  SUBCASE("invalid specs") {
    CHECK(error_code([] { build_lobster({3, {{}, {3}, {}}}); }) == ErrorCode::invalid_argument);
    CHECK(error_code([] { build_lobster({3, {{}, {}}}); }) == ErrorCode::invalid_argument);
    CHECK(error_code([] { build_lobster({1, {{}}}); }) == ErrorCode::invalid_argument);
  }
}

TEST_CASE("legal attachment configs") {
  const std::vector<std::vector<int>> two = {{}, {1}, {2}, {1, 1}};
  CHECK(legal_attachment_configs(2) == two);
  CHECK(legal_attachment_configs(0) == std::vector<std::vector<int>>{{}});
  CHECK(legal_attachment_configs(4).size() == 6);
}

TEST_CASE("random_lobster is deterministic and respects the constraints") {
  CHECK(random_lobster(10, 42) == random_lobster(10, 42));
  CHECK_FALSE(random_lobster(30, 1) == random_lobster(30, 2));
  CHECK(error_code([] { random_lobster(1, 1); }) == ErrorCode::invalid_argument);
  const auto legal = legal_attachment_configs(2);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto spec = random_lobster(10, seed);
    REQUIRE(spec.attach.size() == 10);
    CHECK(spec.attach.front().empty());
    CHECK(spec.attach.back().empty());
    for (const auto& a : spec.attach) CHECK(std::find(legal.begin(), legal.end(), a) != legal.end());
  }
}

TEST_CASE("random_lobster draws configs uniformly") {
  const auto legal = legal_attachment_configs(2);
  std::map<std::vector<int>, long> freq;
  long draws = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const auto spec = random_lobster(100, seed);
    for (std::size_t i = 1; i + 1 < spec.attach.size(); ++i) {
      ++freq[spec.attach[i]];
      ++draws;
    }
  }
  const double expect = static_cast<double>(draws) / legal.size();
  const double p = 1.0 / legal.size();
  const double sigma = std::sqrt(draws * p * (1 - p));
  double chi2 = 0;
  for (const auto& cfg : legal) {
    const double obs = static_cast<double>(freq[cfg]);
    CHECK(std::abs(obs - expect) <= 3 * sigma);
    chi2 += (obs - expect) * (obs - expect) / expect;
  }
  // 99.9% quantile of chi-squared with 3 degrees of freedom.
  CHECK(chi2 < 16.27);
}

TEST_CASE("generated lobsters are trees within distance 2 of their spine") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto spec = random_lobster(5 + static_cast<int>(seed % 30), seed);
    const auto g = build_lobster(spec);
    CHECK(g.is_tree());
    const auto spine = find_spine(g);
    CHECK(static_cast<int>(spine.size()) >= spec.spine_len);
    const auto profile = attachment_profile(g, spine);
    int total = static_cast<int>(spine.size());
    for (std::size_t i = 0; i < spine.size(); ++i) total += profile.load(i);
    CHECK(total == g.size());
    CHECK(spine_is_longest(spec) == (static_cast<int>(spine.size()) == spec.spine_len));
  }
}

TEST_CASE("find_spine") {
  CHECK(find_spine(path_graph(5)) == std::vector<Vertex>{1, 2, 3, 4, 5});

  const Graph star(4, {{1, 2}, {1, 3}, {1, 4}});
  const auto s = find_spine(star);
  REQUIRE(s.size() == 3);
  CHECK(s[1] == 1);

  // A 2-path next to the spine end extends the longest path past spine_len.
  const auto g = build_lobster({6, {{}, {2}, {}, {}, {1}, {}}});
  CHECK(oracle::longest_path_edges(g) == 6);
  CHECK(find_spine(g).size() == 7);
  CHECK_FALSE(spine_is_longest({6, {{}, {2}, {}, {}, {1}, {}}}));

  CHECK(error_code([] { find_spine(Graph(3, {{1, 2}})); }) == ErrorCode::not_tree);
}

TEST_CASE("find_spine returns a longest path on random trees") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto t = oracle::random_tree(2 + trial % 40, rng);
    const auto spine = find_spine(t);
    CHECK(static_cast<int>(spine.size()) - 1 == oracle::longest_path_edges(t));
    for (std::size_t i = 1; i < spine.size(); ++i) CHECK(t.adjacent(spine[i - 1], spine[i]));
    CHECK(find_spine(t) == spine);
  }
}

TEST_CASE("attachment_profile") {
  SUBCASE("bare path") {
    const auto p = attachment_profile(path_graph(5), {1, 2, 3, 4, 5});
    for (std::size_t i = 0; i < 5; ++i) CHECK(p.load(i) == 0);
  }
  SUBCASE("seven-vertex example") {
    const auto g = oracle::example7();
    const auto spine = find_spine(g);
    REQUIRE(spine == std::vector<Vertex>{1, 2, 4, 5});
    const auto p = attachment_profile(g, spine);
    CHECK(p.at[1].p1 == 1);
    CHECK(p.at[1].s1 == VertexSet{3});
    CHECK(p.at[2].p1 == 2);
    CHECK(p.at[2].s1 == VertexSet{6, 7});
    CHECK(p.at[0].p1 == 0);
    CHECK(p.at[3].p1 == 0);
  }
  SUBCASE("one pasted 2-path") {
    const auto g = build_lobster({3, {{}, {2}, {}}});
    const auto p = attachment_profile(g, {1, 2, 3});
    CHECK(p.at[1].p1 == 1);
    CHECK(p.at[1].p2 == 1);
    CHECK(p.at[1].s1.empty());
    CHECK(p.at[1].s2 == VertexSet{5});
    REQUIRE(p.at[1].two_paths.size() == 1);
    CHECK(p.at[1].two_paths[0].inner == 4);
    CHECK(p.at[1].two_paths[0].tip == 5);
  }
  SUBCASE("spider with legs of length 3 is not a lobster") {
    const Graph spider(10, {{1, 2}, {2, 3}, {3, 4}, {1, 5}, {5, 6}, {6, 7}, {1, 8}, {8, 9}, {9, 10}});
    CHECK(error_code([&] { analyze_lobster(spider); }) == ErrorCode::not_lobster);
  }
  SUBCASE("cycle is not a tree") {
    const Graph cycle(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
    CHECK(error_code([&] { analyze_lobster(cycle); }) == ErrorCode::not_tree);
  }
}

TEST_CASE("graph JSON and DOT") {
  CHECK(parse_graph(R"({"n":2,"edges":[[1,2]]})") == Graph(2, {{1, 2}}));
  CHECK(error_code([] { parse_graph(R"({"n":3,"edges":[[1,2],[2,1]]})"); }) == ErrorCode::invalid_argument);
  CHECK(error_code([] { parse_graph(R"({"n":3,"edges":[[1,2],)"); }) == ErrorCode::parse);
  CHECK(error_code([] { parse_graph(R"({"edges":[]})"); }) == ErrorCode::parse);
  CHECK(error_code([] { parse_graph(R"({"n":3,"edges":[[1,"x"]]})"); }) == ErrorCode::parse);
  CHECK(error_code([] { parse_graph(""); }) == ErrorCode::parse);

  const auto g = parse_graph(R"({"n":7,"edges":[[2,1],[3,2],[2,4],[4,5],[6,4],[4,7]]})");
  CHECK(g == oracle::example7());
  CHECK(serialize_graph(g) == R"({"edges":[[1,2],[2,3],[2,4],[4,5],[4,6],[4,7]],"n":7})");
  CHECK(parse_graph(serialize_graph(g)) == g);

  const auto dot = parse_graph("graph G {\n  1 -- 2 -- 3; // chain\n  2 -- 4 [color=red];\n  4 -- 5\n 4 -- 6; 4 -- 7 }");
  CHECK(dot == oracle::example7());
  CHECK(error_code([] { parse_graph("digraph { 1 -> 2 }"); }) == ErrorCode::parse);
  CHECK(error_code([] { parse_graph("graph { a -- b }"); }) == ErrorCode::parse);
}

TEST_CASE("graph serialization round trip on random graphs") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_connected(1 + trial % 20, 0.2, rng);
    CHECK(parse_graph(serialize_graph(g)) == g);
  }
}

TEST_CASE("lobster spec JSON round trip") {
  const auto spec = random_lobster(12, 9);
  CHECK(parse_lobster_spec(serialize_lobster_spec(spec)) == spec);
  CHECK(error_code([] { parse_lobster_spec(R"({"spine_len":3})"); }) == ErrorCode::parse);
  CHECK(error_code([] { parse_lobster_spec(R"({"spine_len":2,"attach":[[],[5]]})"); }) ==
        ErrorCode::invalid_argument);
}
