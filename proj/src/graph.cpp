#include "lobsterctl/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "lobsterctl/error.hpp"

namespace lobsterctl {

VertexSet make_vertex_set(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

VertexSet complement(const VertexSet& s, int n) {
  VertexSet out;
  out.reserve(static_cast<std::size_t>(std::max(0, n - static_cast<int>(s.size()))));
  auto it = s.begin();
  for (Vertex v = 1; v <= n; ++v) {
    while (it != s.end() && *it < v) ++it;
    if (it == s.end() || *it != v) out.push_back(v);
  }
  return out;
}

bool contains(const VertexSet& s, Vertex v) {
  return std::binary_search(s.begin(), s.end(), v);
}

std::string to_string(const VertexSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ',';
    os << s[i];
  }
  os << '}';
  return os.str();
}

Graph::Graph(int n, const std::vector<Edge>& edges) : n_(n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "graph needs at least one vertex");
  edges_.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a < 1 || a > n || b < 1 || b > n) {
      std::ostringstream os;
      os << "edge [" << a << "," << b << "] has an endpoint outside 1.." << n;
      throw Error(ErrorCode::invalid_argument, os.str());
    }
    if (a == b) {
      std::ostringstream os;
      os << "self-loop at vertex " << a;
      throw Error(ErrorCode::invalid_argument, os.str());
    }
    edges_.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    std::ostringstream os;
    os << "duplicate edge [" << dup->first << "," << dup->second << "]";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  adj_.assign(static_cast<std::size_t>(n) + 1, {});
  for (auto [a, b] : edges_) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  if (v < 1 || v > n_) throw Error(ErrorCode::invalid_argument, "vertex out of range");
  return adj_[v];
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<int> Graph::distances_from(Vertex source) const {
  std::vector<int> dist(static_cast<std::size_t>(n_) + 1, -1);
  std::queue<Vertex> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    for (Vertex w : adj_[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

bool Graph::is_connected() const {
  if (n_ == 0) return true;
  auto dist = distances_from(1);
  return std::none_of(dist.begin() + 1, dist.end(), [](int d) { return d < 0; });
}

bool Graph::is_tree() const {
  return static_cast<int>(edges_.size()) == n_ - 1 && is_connected();
}

IntMatrix laplacian(const Graph& g) {
  const int n = g.size();
  IntMatrix L = IntMatrix::Zero(n, n);
  for (auto [a, b] : g.edges()) {
    L(a - 1, b - 1) = -1;
    L(b - 1, a - 1) = -1;
    L(a - 1, a - 1) += 1;
    L(b - 1, b - 1) += 1;
  }
  return L;
}

Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, edges);
}

}  // namespace lobsterctl
