#pragma once

#include <cstdint>
#include <vector>

#include "lobsterctl/graph.hpp"

namespace lobsterctl {

// Generative description of a lobster: a spine path v1..v_len plus, for each
// spine vertex, the lengths (1 or 2) of the paths pasted onto it.
struct LobsterSpec {
  int spine_len = 0;
  std::vector<std::vector<int>> attach;

  friend bool operator==(const LobsterSpec&, const LobsterSpec&) = default;
};

// Throws Error(invalid_argument) unless spine_len >= 2, attach has spine_len
// entries and every path length is 1 or 2.
void validate(const LobsterSpec& spec);

// Canonical numbering: spine gets 1..spine_len in order, then attachment
// vertices per spine vertex in order, each 2-path numbered inner then tip.
Graph build_lobster(const LobsterSpec& spec);

// True when the realized tree has no path longer than the spine. Pasting a
// 2-path next to a spine end (or anything on an end) makes the tree's true
// spine longer than `spine_len`.
bool spine_is_longest(const LobsterSpec& spec);

// The attachment configurations a spine vertex may draw, in canonical order:
// {}, {1}, {2}, {1,1}, {1,2}, {2,2}, filtered by p1 + p2 <= max_load.
std::vector<std::vector<int>> legal_attachment_configs(int max_load);

// Interior spine vertices draw i.i.d. uniformly from the legal configs; the
// two end vertices stay bare. Deterministic for a given seed.
LobsterSpec random_lobster(int spine_len, std::uint64_t seed, int max_load = 2);

// Longest path of a tree. Endpoints are the lexicographically smallest
// diameter pair (a, b) with a < b; the path is returned from a to b.
std::vector<Vertex> find_spine(const Graph& tree);

struct TwoPath {
  Vertex inner;
  Vertex tip;
};

struct SpineVertexProfile {
  Vertex vertex = 0;
  int p1 = 0;  // off-spine vertices at distance 1
  int p2 = 0;  // off-spine vertices at distance 2
  VertexSet s1;  // pendant vertices adjacent to the spine vertex
  VertexSet s2;  // degree-1 tips at distance 2
  std::vector<TwoPath> two_paths;  // pure pasted 2-paths (inner has degree 2)
};

struct AttachmentProfile {
  std::vector<Vertex> spine;
  std::vector<SpineVertexProfile> at;  // parallel to spine

  int load(std::size_t i) const { return at[i].p1 + at[i].p2; }
};

// Throws Error(not_lobster) when some vertex is more than 2 away from the
// spine, Error(not_tree) when `tree` is not a tree.
AttachmentProfile attachment_profile(const Graph& tree, const std::vector<Vertex>& spine);

// Spine + profile in one go for a graph expected to be a lobster.
AttachmentProfile analyze_lobster(const Graph& g);

// Pure 2-paths hanging off `v`: neighbours u with deg(u) = 2 whose other
// neighbour t is a leaf. Neighbours listed in `exclude` are skipped.
std::vector<TwoPath> hanging_two_paths(const Graph& g, Vertex v,
                                       const std::vector<Vertex>& exclude = {});

}  // namespace lobsterctl
