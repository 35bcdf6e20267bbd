#include "lobsterctl/lobsterctl.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "lobsterctl/control.hpp"
#include "lobsterctl/csa.hpp"
#include "lobsterctl/error.hpp"
#include "lobsterctl/experiments.hpp"
#include "lobsterctl/graph.hpp"
#include "lobsterctl/io.hpp"
#include "lobsterctl/lobster.hpp"
#include "lobsterctl/mpcs.hpp"
#include "lobsterctl/spectral.hpp"

struct lc_graph {
  lobsterctl::Graph graph;
};

namespace {

using lobsterctl::Error;
using lobsterctl::ErrorCode;
using nlohmann::json;

thread_local std::string g_last_error;

lc_status fail(lc_status status, const char* message) {
  g_last_error = message;
  return status;
}

template <typename F>
lc_status guarded(F&& body) {
  try {
    body();
    return LC_OK;
  } catch (const Error& e) {
    return fail(static_cast<lc_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(LC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LC_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void require(bool ok, const char* message) {
  if (!ok) throw Error(ErrorCode::invalid_argument, message);
}

lobsterctl::MpcsCatalog detected_catalog(const lobsterctl::Graph& g) {
  using namespace lobsterctl;
  const auto decomp = eigen_decompose(g);
  MpcsCatalog catalog;
  auto add = [&](std::vector<CriticalRecord> found) {
    for (auto& r : found) {
      if (!catalog.contains(r.vertices)) catalog.records.push_back(std::move(r));
    }
  };
  add(detect_twins(g));
  add(detect_quads(g, decomp));
  if (g.is_tree()) {
    try {
      const auto profile = analyze_lobster(g);
      add(detect_spine_patterns(g, decomp, profile));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::not_lobster) throw;
    }
  }
  return catalog;
}

json summary_json(const lobsterctl::SweepResult& result) {
  auto fit = [](const lobsterctl::LinearFit& f) {
    return json{{"slope", f.slope}, {"intercept", f.intercept}, {"points", f.points}, {"valid", f.valid}};
  };
  int audited = 0, passed = 0;
  for (const auto& r : result.rows) {
    audited += r.audited;
    passed += r.audit_passed;
  }
  return json{{"leaders_vs_spine", fit(result.leaders_vs_spine)},
              {"leaders_vs_total", fit(result.leaders_vs_total)},
              {"audited", audited},
              {"audit_passed", passed},
              {"flags", result.flags}};
}

}  // namespace

extern "C" {

const char* lc_version(void) { return "1.0.0"; }

const char* lc_status_name(lc_status status) {
  switch (status) {
    case LC_OK: return "ok";
    case LC_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case LC_ERR_PARSE: return "parse";
    case LC_ERR_IO: return "io";
    case LC_ERR_NOT_TREE: return "not_tree";
    case LC_ERR_NOT_LOBSTER: return "not_lobster";
    case LC_ERR_NOT_CONNECTED: return "not_connected";
    case LC_ERR_LIMIT: return "limit_exceeded";
    case LC_ERR_NUMERICAL: return "numerical";
    case LC_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* lc_last_error(void) { return g_last_error.c_str(); }

void lc_string_free(char* s) { std::free(s); }

lc_status lc_graph_parse(const char* text, lc_graph** out) {
  if (!text || !out) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new lc_graph{lobsterctl::parse_graph(text)}; });
}

lc_status lc_graph_load(const char* path, lc_graph** out) {
  if (!path || !out) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new lc_graph{lobsterctl::parse_graph(lobsterctl::read_file(path))}; });
}

lc_status lc_graph_from_edges(int n, const int* edges, size_t edge_count, lc_graph** out) {
  if (!out || (edge_count > 0 && !edges)) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<lobsterctl::Edge> list;
    list.reserve(edge_count);
    for (size_t i = 0; i < edge_count; ++i) list.emplace_back(edges[2 * i], edges[2 * i + 1]);
    *out = new lc_graph{lobsterctl::Graph(n, list)};
  });
}

void lc_graph_free(lc_graph* g) { delete g; }

int lc_graph_vertex_count(const lc_graph* g) { return g ? g->graph.size() : 0; }

size_t lc_graph_edge_count(const lc_graph* g) { return g ? g->graph.edges().size() : 0; }

lc_status lc_graph_to_json(const lc_graph* g, char** out_json) {
  if (!g || !out_json) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out_json = dup_string(lobsterctl::serialize_graph(g->graph)); });
}

lc_status lc_graph_laplacian(const lc_graph* g, int64_t* out, size_t capacity) {
  if (!g || !out) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto L = lobsterctl::laplacian(g->graph);
    const auto n = static_cast<size_t>(L.rows());
    require(capacity >= n * n, "buffer smaller than n*n");
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) out[i * n + j] = L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  });
}

lc_status lc_lobster_random(int spine_len, uint64_t seed, int max_load, char** out_spec_json) {
  if (!out_spec_json) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out_spec_json = dup_string(lobsterctl::serialize_lobster_spec(lobsterctl::random_lobster(spine_len, seed, max_load)));
  });
}

lc_status lc_lobster_build(const char* spec_json, lc_graph** out) {
  if (!spec_json || !out) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new lc_graph{lobsterctl::build_lobster(lobsterctl::parse_lobster_spec(spec_json))}; });
}

lc_status lc_analyze(const lc_graph* g, const int* leaders, size_t leader_count, lc_method method,
                     int* out_controllable, int* out_rank, char** out_json) {
  if (!g || (leader_count > 0 && !leaders)) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const int n = g->graph.size();
    std::vector<lobsterctl::Vertex> ids(leaders, leaders + leader_count);
    for (int v : ids) {
      if (v < 1 || v > n) {
        throw Error(ErrorCode::invalid_argument,
                    "leader " + std::to_string(v) + " outside 1.." + std::to_string(n));
      }
    }
    const lobsterctl::LeaderSet set(std::move(ids));
    lobsterctl::ControllabilityVerdict verdict;
    if (method == LC_METHOD_EXACT) {
      verdict = lobsterctl::kalman_controllable_exact(g->graph, set);
    } else {
      require(method == LC_METHOD_PBH, "unknown method");
      verdict = lobsterctl::pbh_controllable(g->graph, set);
    }
    if (out_controllable) *out_controllable = verdict.controllable ? 1 : 0;
    if (out_rank) *out_rank = verdict.rank ? *verdict.rank : -1;
    if (out_json) {
      auto doc = lobsterctl::to_json(verdict);
      doc["leaders"] = set.vertices();
      doc["n"] = n;
      *out_json = dup_string(doc.dump());
    }
  });
}

lc_status lc_mpcs_catalog(const lc_graph* g, lc_mpcs_source source, char** out_json, size_t* out_count) {
  if (!g) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    lobsterctl::MpcsCatalog catalog;
    if (source == LC_MPCS_BRUTE) {
      catalog = lobsterctl::enumerate_mpcs_bruteforce(lobsterctl::eigen_decompose(g->graph));
    } else {
      require(source == LC_MPCS_DETECT, "unknown catalog source");
      catalog = detected_catalog(g->graph);
    }
    if (out_count) *out_count = catalog.records.size();
    if (out_json) *out_json = dup_string(lobsterctl::to_json(catalog).dump());
  });
}

void lc_csa_options_init(lc_csa_options* options) {
  if (!options) return;
  const lobsterctl::CsaOptions defaults;
  options->mode = LC_CSA_HITTING_SET;
  options->has_seed = 0;
  options->seed = 0;
  options->strict_step6 = defaults.strict_step6 ? 1 : 0;
  options->enable_step6 = defaults.enable_step6 ? 1 : 0;
  options->certify_limit = defaults.certify_limit;
}

lc_status lc_csa_run(const lc_graph* g, const lc_csa_options* options, int* out_found, char** out_json) {
  if (!g) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    lobsterctl::CsaOptions opts;
    if (options) {
      require(options->mode == LC_CSA_HITTING_SET || options->mode == LC_CSA_PER_SET, "unknown CSA mode");
      opts.mode = options->mode == LC_CSA_PER_SET ? lobsterctl::CsaMode::per_set : lobsterctl::CsaMode::hitting_set;
      if (options->has_seed) opts.seed = options->seed;
      opts.strict_step6 = options->strict_step6 != 0;
      opts.enable_step6 = options->enable_step6 != 0;
      opts.certify_limit = options->certify_limit;
    }
    const auto report = lobsterctl::run_csa(g->graph, opts);
    if (out_found) *out_found = report.status == lobsterctl::CsaStatus::found ? 1 : 0;
    if (out_json) *out_json = dup_string(lobsterctl::to_json(report).dump());
  });
}

lc_status lc_min_leaders(const lc_graph* g, int k_max, char** out_json) {
  if (!g || !out_json) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto result = lobsterctl::min_leader_bruteforce(g->graph, k_max);
    auto doc = lobsterctl::to_json(result);
    if (result.k_min) {
      const auto p = lobsterctl::count_to_probability(result.count, g->graph.size(), *result.k_min);
      doc["probability"] = {{"numerator", p.numerator.get_str()},
                            {"denominator", p.denominator.get_str()},
                            {"value", p.value},
                            {"rendered", p.rendered}};
    }
    *out_json = dup_string(doc.dump());
  });
}

lc_status lc_count_to_probability(uint64_t count, int n, int k, double* out_value, char** out_rendered) {
  return guarded([&] {
    const auto p = lobsterctl::count_to_probability(count, n, k);
    if (out_value) *out_value = p.value;
    if (out_rendered) *out_rendered = dup_string(p.rendered);
  });
}

lc_status lc_experiment_run(const char* config_json, lc_sweep sweep, int ablate_step6, int jobs, char** out_csv,
                            char** out_summary_json, char** out_svg) {
  if (!config_json) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto cfg = lobsterctl::parse_sweep_config(config_json);
    if (jobs > 0) cfg.jobs = jobs;
    cfg.ablate_step6 = cfg.ablate_step6 || ablate_step6 != 0;
    lobsterctl::SweepResult result;
    lobsterctl::SweepMetric metric;
    switch (sweep) {
      case LC_SWEEP_SUCCESS:
        result = lobsterctl::run_success_probability(cfg);
        metric = lobsterctl::SweepMetric::success;
        break;
      case LC_SWEEP_SCALING:
        result = lobsterctl::run_leader_scaling(cfg);
        metric = lobsterctl::SweepMetric::scaling;
        break;
      case LC_SWEEP_PROPORTION:
        result = lobsterctl::run_proportion(cfg);
        metric = lobsterctl::SweepMetric::proportion;
        break;
      default:
        throw Error(ErrorCode::invalid_argument, "unknown sweep");
    }
    if (out_csv) *out_csv = dup_string(lobsterctl::to_csv(result));
    if (out_summary_json) *out_summary_json = dup_string(summary_json(result).dump());
    if (out_svg) *out_svg = dup_string(lobsterctl::to_svg(result, metric));
  });
}

}  // extern "C"
