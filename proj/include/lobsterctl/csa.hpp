#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lobsterctl/graph.hpp"
#include "lobsterctl/lobster.hpp"

namespace lobsterctl {

enum class CsaMode {
  per_set,      // one vertex from every detected set, as the steps read literally
  hitting_set,  // minimum hitting set of everything detected so far
};

enum class CsaStatus { found, cant_find };

const char* to_string(CsaMode mode);
const char* to_string(CsaStatus status);

struct CsaOptions {
  CsaMode mode = CsaMode::hitting_set;
  std::optional<std::uint64_t> seed;  // per-set mode: uniform pick instead of lowest id
  bool strict_step6 = false;  // add every fallback vertex, then check once
  bool enable_step6 = true;
  int certify_limit = 30;  // exact certification when followers <= this
};

struct CsaStep {
  int step = 0;  // 1..6
  std::string action;  // twin | quad | spine8 | spine4n | fallback | check
  VertexSet set;
  std::optional<Vertex> leader;
  std::optional<bool> controllable;  // check entries only
};

struct LeaderReport {
  CsaStatus status = CsaStatus::cant_find;
  CsaMode mode = CsaMode::hitting_set;
  VertexSet leaders;
  std::vector<Vertex> spine;
  std::vector<CsaStep> steps;
  bool verdict_float = false;
  std::optional<bool> verdict_exact;
  std::optional<int> exact_rank;
  std::vector<std::string> notes;
};

// Spine vertices v_i whose predecessor carries attachments while v_i carries
// none, scanning both orientations; ascending spine index, no duplicates.
std::vector<Vertex> step6_fallback_vertices(const AttachmentProfile& profile);

// Critical Set Algorithm on a lobster:
//   1 twins, 2 quads, 3 check, 4 spine patterns, 5 check, 6 spine-gap fallback.
// Throws Error(not_tree / not_lobster) for other inputs. cant_find is a normal
// outcome. A found leader set is certified by the exact oracle when the
// follower count is within options.certify_limit; a disagreement throws
// Error(internal).
LeaderReport run_csa(const Graph& g, const CsaOptions& options = {});

}  // namespace lobsterctl
