#include "lobsterctl/csa.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "lobsterctl/control.hpp"
#include "lobsterctl/error.hpp"
#include "lobsterctl/hitting_set.hpp"
#include "lobsterctl/mpcs.hpp"
#include "lobsterctl/spectral.hpp"

namespace lobsterctl {

const char* to_string(CsaMode mode) { return mode == CsaMode::per_set ? "per-set" : "hitting-set"; }
const char* to_string(CsaStatus status) { return status == CsaStatus::found ? "found" : "cant_find"; }

std::vector<Vertex> step6_fallback_vertices(const AttachmentProfile& profile) {
  const std::size_t len = profile.spine.size();
  std::vector<char> pick(len, 0);
  for (std::size_t i = 1; i < len; ++i)
    if (profile.load(i - 1) > 0 && profile.load(i) == 0) pick[i] = 1;
  for (std::size_t i = 0; i + 1 < len; ++i)
    if (profile.load(i + 1) > 0 && profile.load(i) == 0) pick[i] = 1;
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < len; ++i)
    if (pick[i]) out.push_back(profile.spine[i]);
  return out;
}

namespace {

class CsaRun {
 public:
  CsaRun(const Graph& g, const CsaOptions& options)
      : g_(g), options_(options), profile_(analyze_lobster(g)), decomp_(eigen_decompose(g)) {
    if (options.seed) rng_.seed(*options.seed);
    report_.mode = options.mode;
    report_.spine = profile_.spine;
  }

  LeaderReport run() {
    add_records(1, detect_twins(g_));
    add_records(2, detect_quads(g_, decomp_));
    if (check(3)) return finish(CsaStatus::found);

    add_records(4, detect_spine_patterns(g_, decomp_, profile_));
    if (check(5)) return finish(CsaStatus::found);

    if (!options_.enable_step6) {
      report_.notes.push_back("fallback step disabled");
      return finish(CsaStatus::cant_find);
    }
    const auto fallback = step6_fallback_vertices(profile_);
    if (fallback.empty()) report_.notes.push_back("fallback step found no spine-gap vertices");
    if (options_.strict_step6) {
      for (Vertex v : fallback) add_fallback(v);
      if (check(6)) return finish(CsaStatus::found);
    } else {
      for (Vertex v : fallback) {
        if (contains(current_leaders(), v)) continue;
        add_fallback(v);
        if (check(6)) return finish(CsaStatus::found);
      }
      if (fallback.empty() && check(6)) return finish(CsaStatus::found);
    }
    if (catalog_.empty()) {
      report_.notes.push_back(
          "no critical sets were detected; the algorithm covers lobsters with pasted paths, and a bare "
          "path (controllable from an end vertex) falls outside it");
    }
    return finish(CsaStatus::cant_find);
  }

 private:
  void add_records(int step, const std::vector<CriticalRecord>& records) {
    for (const auto& rec : records) {
      if (std::find(catalog_.begin(), catalog_.end(), rec.vertices) != catalog_.end()) continue;
      catalog_.push_back(rec.vertices);
      CsaStep entry;
      entry.step = step;
      entry.action = to_string(rec.origin);
      entry.set = rec.vertices;
      if (options_.mode == CsaMode::per_set) {
        Vertex v = rec.vertices.front();
        if (options_.seed) {
          std::uniform_int_distribution<std::size_t> pick(0, rec.vertices.size() - 1);
          v = rec.vertices[pick(rng_)];
        }
        per_set_leaders_.insert(v);
        entry.leader = v;
      }
      report_.steps.push_back(std::move(entry));
    }
  }

  void add_fallback(Vertex v) {
    fallback_.insert(v);
    CsaStep entry;
    entry.step = 6;
    entry.action = "fallback";
    entry.set = {v};
    entry.leader = v;
    report_.steps.push_back(std::move(entry));
  }

  VertexSet current_leaders() const {
    std::vector<Vertex> all(fallback_.begin(), fallback_.end());
    if (options_.mode == CsaMode::per_set) {
      all.insert(all.end(), per_set_leaders_.begin(), per_set_leaders_.end());
    } else {
      const auto hs = minimum_hitting_set(catalog_, /*count_all=*/false);
      all.insert(all.end(), hs.best.begin(), hs.best.end());
    }
    return make_vertex_set(std::move(all));
  }

  bool check(int step) {
    const VertexSet leaders = current_leaders();
    bool ok = false;
    if (!leaders.empty()) ok = decide_controllable(g_, decomp_, LeaderSet(leaders)).controllable;
    CsaStep entry;
    entry.step = step;
    entry.action = "check";
    entry.set = leaders;
    entry.controllable = ok;
    report_.steps.push_back(std::move(entry));
    report_.leaders = leaders;
    report_.verdict_float = ok;
    return ok;
  }

  LeaderReport finish(CsaStatus status) {
    report_.status = status;
    if (status == CsaStatus::found) {
      const int followers = g_.size() - static_cast<int>(report_.leaders.size());
      if (followers <= options_.certify_limit) {
        const auto exact = kalman_controllable_exact(g_, LeaderSet(report_.leaders));
        report_.verdict_exact = exact.controllable;
        report_.exact_rank = exact.rank;
        if (!exact.controllable) {
          throw Error(ErrorCode::internal, "float and exact controllability verdicts disagree for leaders " +
                                               to_string(report_.leaders));
        }
      }
    }
    // In hitting-set mode, credit each set to the smallest leader inside it.
    if (options_.mode == CsaMode::hitting_set) {
      for (auto& entry : report_.steps) {
        if (entry.action == "check" || entry.action == "fallback") continue;
        for (Vertex v : entry.set) {
          if (contains(report_.leaders, v)) {
            entry.leader = v;
            break;
          }
        }
      }
    }
    return std::move(report_);
  }

  const Graph& g_;
  CsaOptions options_;
  AttachmentProfile profile_;
  SpectralDecomposition decomp_;
  std::mt19937_64 rng_;
  std::vector<VertexSet> catalog_;
  std::set<Vertex> per_set_leaders_;
  std::set<Vertex> fallback_;
  LeaderReport report_;
};

}  // namespace

LeaderReport run_csa(const Graph& g, const CsaOptions& options) {
  if (g.size() < 2) throw Error(ErrorCode::invalid_argument, "the algorithm needs at least two vertices");
  return CsaRun(g, options).run();
}

}  // namespace lobsterctl
