#pragma once

#include <cstdint>
#include <vector>

#include "lobsterctl/graph.hpp"

namespace lobsterctl {

struct HittingSetResult {
  int size = 0;
  VertexSet best;  // one optimal set, deterministic
  std::uint64_t count = 0;  // number of optimal hitting sets (saturating)
  bool count_complete = true;  // false once the enumeration cap was hit
};

inline constexpr std::uint64_t kHittingCountCap = 1'000'000;

// Exact minimum hitting set by branch and bound. The family is first reduced
// (duplicates and supersets dropped, neither changes the set of hitting
// sets) and split into vertex-disjoint components; sizes add and counts
// multiply across components. With count_all = false only `best` and `size`
// are computed. An empty catalog gives size 0. A catalog containing the empty
// set throws Error(invalid_argument).
HittingSetResult minimum_hitting_set(const std::vector<VertexSet>& catalog, bool count_all = true,
                                     std::uint64_t count_cap = kHittingCountCap);

// True when `candidate` meets every set of the catalog.
bool hits_all(const VertexSet& candidate, const std::vector<VertexSet>& catalog);

}  // namespace lobsterctl
