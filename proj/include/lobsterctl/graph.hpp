#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lobsterctl {

// Vertices are 1-based throughout, matching the usual v1..vn labelling.
using Vertex = int;
using VertexSet = std::vector<Vertex>;  // sorted, unique
using Edge = std::pair<Vertex, Vertex>;  // first < second
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

VertexSet make_vertex_set(std::vector<Vertex> vertices);
VertexSet complement(const VertexSet& s, int n);
bool contains(const VertexSet& s, Vertex v);
std::string to_string(const VertexSet& s);

// Undirected simple graph on vertices 1..n. Immutable once built.
class Graph {
 public:
  Graph() = default;

  // Throws Error(invalid_argument) on self-loops, duplicate edges (in either
  // orientation) or endpoints outside 1..n.
  Graph(int n, const std::vector<Edge>& edges);

  int size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const;
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
  bool adjacent(Vertex u, Vertex v) const;

  bool is_connected() const;
  bool is_tree() const;

  // BFS distances from `source`; entry 0 unused, -1 for unreachable.
  std::vector<int> distances_from(Vertex source) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;            // canonical: i < j, lexicographic
  std::vector<std::vector<Vertex>> adj_;  // index 0 unused, sorted lists
};

// L = degree matrix - adjacency matrix.
IntMatrix laplacian(const Graph& g);

// Path on vertices 1..n.
Graph path_graph(int n);

}  // namespace lobsterctl
