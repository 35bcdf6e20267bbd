#include "lobsterctl/lobster.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "lobsterctl/error.hpp"

namespace lobsterctl {

void validate(const LobsterSpec& spec) {
  if (spec.spine_len < 2) {
    throw Error(ErrorCode::invalid_argument, "spine_len must be at least 2");
  }
  if (static_cast<int>(spec.attach.size()) != spec.spine_len) {
    std::ostringstream os;
    os << "attach has " << spec.attach.size() << " entries, expected " << spec.spine_len;
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  for (std::size_t i = 0; i < spec.attach.size(); ++i) {
    for (int len : spec.attach[i]) {
      if (len != 1 && len != 2) {
        std::ostringstream os;
        os << "invalid path length " << len << " at spine vertex " << (i + 1)
           << " (only 1 or 2 allowed)";
        throw Error(ErrorCode::invalid_argument, os.str());
      }
    }
  }
}

Graph build_lobster(const LobsterSpec& spec) {
  validate(spec);
  std::vector<Edge> edges;
  for (Vertex v = 1; v < spec.spine_len; ++v) edges.emplace_back(v, v + 1);
  Vertex next = spec.spine_len + 1;
  for (int i = 0; i < spec.spine_len; ++i) {
    const Vertex v = i + 1;
    for (int len : spec.attach[i]) {
      edges.emplace_back(v, next);
      if (len == 2) {
        edges.emplace_back(next, next + 1);
        next += 2;
      } else {
        next += 1;
      }
    }
  }
  return Graph(next - 1, edges);
}

namespace {

int tree_diameter(const Graph& t) {
  auto d1 = t.distances_from(1);
  auto far = std::max_element(d1.begin() + 1, d1.end()) - d1.begin();
  auto d2 = t.distances_from(static_cast<Vertex>(far));
  return *std::max_element(d2.begin() + 1, d2.end());
}

}  // namespace

bool spine_is_longest(const LobsterSpec& spec) {
  return tree_diameter(build_lobster(spec)) == spec.spine_len - 1;
}

std::vector<std::vector<int>> legal_attachment_configs(int max_load) {
  static const std::vector<std::vector<int>> all = {{}, {1}, {2}, {1, 1}, {1, 2}, {2, 2}};
  std::vector<std::vector<int>> out;
  for (const auto& cfg : all) {
    int load = 0;
    for (int len : cfg) load += len;  // a 2-path adds one vertex at distance 1 and one at 2
    if (load <= max_load) out.push_back(cfg);
  }
  return out;
}

LobsterSpec random_lobster(int spine_len, std::uint64_t seed, int max_load) {
  if (spine_len < 2) throw Error(ErrorCode::invalid_argument, "spine_len must be at least 2");
  if (max_load < 0) throw Error(ErrorCode::invalid_argument, "max_load must be non-negative");
  const auto configs = legal_attachment_configs(max_load);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, configs.size() - 1);
  LobsterSpec spec;
  spec.spine_len = spine_len;
  spec.attach.assign(static_cast<std::size_t>(spine_len), {});
  for (int i = 1; i + 1 < spine_len; ++i) spec.attach[i] = configs[pick(rng)];
  return spec;
}

std::vector<Vertex> find_spine(const Graph& tree) {
  if (!tree.is_tree()) throw Error(ErrorCode::not_tree, "graph is not a tree");
  const int n = tree.size();
  if (n == 1) return {1};

  auto d0 = tree.distances_from(1);
  Vertex a0 = static_cast<Vertex>(std::max_element(d0.begin() + 1, d0.end()) - d0.begin());
  auto da0 = tree.distances_from(a0);
  Vertex b0 = static_cast<Vertex>(std::max_element(da0.begin() + 1, da0.end()) - da0.begin());
  const int diameter = da0[b0];
  auto db0 = tree.distances_from(b0);

  // In a tree, ecc(v) = max(d(v, a0), d(v, b0)) for any diameter pair (a0, b0).
  Vertex a = 0;
  for (Vertex v = 1; v <= n && a == 0; ++v) {
    if (std::max(da0[v], db0[v]) == diameter) a = v;
  }
  auto da = tree.distances_from(a);
  Vertex b = 0;
  for (Vertex v = 1; v <= n && b == 0; ++v) {
    if (da[v] == diameter) b = v;
  }

  // Walk from b back to a along strictly decreasing distance.
  std::vector<Vertex> path{b};
  Vertex cur = b;
  while (cur != a) {
    for (Vertex w : tree.neighbors(cur)) {
      if (da[w] == da[cur] - 1) {
        cur = w;
        break;
      }
    }
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

AttachmentProfile attachment_profile(const Graph& tree, const std::vector<Vertex>& spine) {
  if (!tree.is_tree()) throw Error(ErrorCode::not_tree, "graph is not a tree");
  if (spine.empty()) throw Error(ErrorCode::invalid_argument, "empty spine");
  const int n = tree.size();
  std::vector<char> on_spine(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t i = 0; i < spine.size(); ++i) {
    if (spine[i] < 1 || spine[i] > n) throw Error(ErrorCode::invalid_argument, "spine vertex out of range");
    if (i > 0 && !tree.adjacent(spine[i - 1], spine[i])) {
      throw Error(ErrorCode::invalid_argument, "spine is not a path of the graph");
    }
    on_spine[spine[i]] = 1;
  }

  AttachmentProfile prof;
  prof.spine = spine;
  prof.at.resize(spine.size());
  int covered = static_cast<int>(spine.size());
  for (std::size_t i = 0; i < spine.size(); ++i) {
    const Vertex v = spine[i];
    auto& rec = prof.at[i];
    rec.vertex = v;
    for (Vertex u : tree.neighbors(v)) {
      if (on_spine[u]) continue;
      ++rec.p1;
      if (tree.degree(u) == 1) rec.s1.push_back(u);
      for (Vertex w : tree.neighbors(u)) {
        if (w == v) continue;
        if (tree.degree(w) != 1) {
          std::ostringstream os;
          os << "not a lobster: vertex " << w << " has neighbours farther than 2 from the spine";
          throw Error(ErrorCode::not_lobster, os.str());
        }
        ++rec.p2;
        rec.s2.push_back(w);
        if (tree.degree(u) == 2) rec.two_paths.push_back({u, w});
      }
    }
    covered += rec.p1 + rec.p2;
    std::sort(rec.s1.begin(), rec.s1.end());
    std::sort(rec.s2.begin(), rec.s2.end());
  }
  if (covered != n) throw Error(ErrorCode::not_lobster, "not a lobster: vertices farther than 2 from the spine");
  return prof;
}

AttachmentProfile analyze_lobster(const Graph& g) {
  return attachment_profile(g, find_spine(g));
}

std::vector<TwoPath> hanging_two_paths(const Graph& g, Vertex v, const std::vector<Vertex>& exclude) {
  std::vector<TwoPath> out;
  for (Vertex u : g.neighbors(v)) {
    if (std::find(exclude.begin(), exclude.end(), u) != exclude.end()) continue;
    if (g.degree(u) != 2) continue;
    auto nb = g.neighbors(u);
    const Vertex t = nb[0] == v ? nb[1] : nb[0];
    if (g.degree(t) == 1) out.push_back({u, t});
  }
  return out;
}

}  // namespace lobsterctl
