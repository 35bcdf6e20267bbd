// lobster-ctrl: command-line front end over the lobsterctl C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lobsterctl/lobsterctl.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

struct Failure {
  lc_status status;
  std::string message;
};

void check(lc_status status) {
  if (status != LC_OK) throw Failure{status, lc_last_error()};
}

struct GraphDeleter {
  void operator()(lc_graph* g) const { lc_graph_free(g); }
};
using GraphPtr = std::unique_ptr<lc_graph, GraphDeleter>;

// Takes ownership of a string returned by the library.
std::string take(char* s) {
  if (!s) return {};
  std::string out(s);
  lc_string_free(s);
  return out;
}

GraphPtr load_graph(const std::string& path) {
  lc_graph* g = nullptr;
  check(lc_graph_load(path.c_str(), &g));
  return GraphPtr(g);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Failure{LC_ERR_IO, "cannot write " + path};
}

std::string format_set(const json& vertices) {
  std::string out = "{";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(vertices[i].get<int>());
  }
  return out + "}";
}

std::vector<int> parse_leader_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw Failure{LC_ERR_INVALID_ARGUMENT, "bad leader id '" + item + "'"};
    out.push_back(v);
  }
  if (out.empty()) throw Failure{LC_ERR_INVALID_ARGUMENT, "--leaders needs at least one vertex"};
  return out;
}

int default_jobs() {
  if (const char* env = std::getenv("LOBSTER_CTRL_JOBS")) {
    const int jobs = std::atoi(env);
    if (jobs > 0) return jobs;
  }
  return 1;
}

// gen -o accepts either a base name or a name ending in .lobster.json.
std::string output_base(std::string out) {
  const std::string suffix = ".lobster.json";
  if (out.size() > suffix.size() && out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0) {
    out.resize(out.size() - suffix.size());
  }
  return out;
}

struct GenArgs {
  int spine = 0;
  unsigned long long seed = 1;
  int max_load = 2;
  std::string out;
};

int run_gen(const GenArgs& a) {
  char* spec = nullptr;
  check(lc_lobster_random(a.spine, a.seed, a.max_load, &spec));
  const std::string spec_json = take(spec);
  lc_graph* raw = nullptr;
  check(lc_lobster_build(spec_json.c_str(), &raw));
  GraphPtr g(raw);
  char* graph_json = nullptr;
  check(lc_graph_to_json(g.get(), &graph_json));
  const std::string base = output_base(a.out);
  write_text(base + ".lobster.json", spec_json + "\n");
  write_text(base + ".graph.json", take(graph_json) + "\n");
  std::cout << base << ".lobster.json " << base << ".graph.json n=" << lc_graph_vertex_count(g.get()) << "\n";
  return kExitOk;
}

struct AnalyzeArgs {
  std::string graph;
  std::string leaders;
  bool exact = false;
  bool as_json = false;
};

int run_analyze(const AnalyzeArgs& a) {
  const auto g = load_graph(a.graph);
  const auto leaders = parse_leader_list(a.leaders);
  int controllable = 0, rank = -1;
  char* out = nullptr;
  check(lc_analyze(g.get(), leaders.data(), leaders.size(), a.exact ? LC_METHOD_EXACT : LC_METHOD_PBH,
                   &controllable, &rank, &out));
  const json doc = json::parse(take(out));
  if (a.as_json) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "leaders: " << format_set(doc["leaders"]) << "\n"
              << "method: " << doc["method"].get<std::string>() << "\n"
              << "controllable: " << (controllable ? "yes" : "no") << "\n";
    if (rank >= 0) std::cout << "rank: " << rank << " of " << doc["followers"].get<int>() << "\n";
    if (doc.contains("witness")) {
      std::cout << "witness eigenvalue: " << doc["witness"]["lambda"].get<double>() << "\n";
    }
  }
  return controllable ? kExitOk : kExitNegative;
}

struct MpcsArgs {
  std::string graph;
  bool brute = false;
  bool detect = false;
  std::string json_out;
};

int run_mpcs(const MpcsArgs& a) {
  const auto g = load_graph(a.graph);
  char* out = nullptr;
  size_t count = 0;
  check(lc_mpcs_catalog(g.get(), a.brute ? LC_MPCS_BRUTE : LC_MPCS_DETECT, &out, &count));
  const json doc = json::parse(take(out));
  for (const auto& r : doc) {
    std::printf("%s %s %s lambda=%.10g\n", format_set(r["vertices"]).c_str(), r["kind"].get<std::string>().c_str(),
                r["origin"].get<std::string>().c_str(), r["lambda"].get<double>());
  }
  std::cout << count << " set(s)\n";
  if (!a.json_out.empty()) write_text(a.json_out, doc.dump(2) + "\n");
  return kExitOk;
}

struct CsaArgs {
  std::string graph;
  std::string mode = "hitting-set";
  std::optional<unsigned long long> seed;
  bool strict_step6 = false;
  bool no_step6 = false;
};

int run_csa_cmd(const CsaArgs& a) {
  const auto g = load_graph(a.graph);
  lc_csa_options opts;
  lc_csa_options_init(&opts);
  opts.mode = a.mode == "per-set" ? LC_CSA_PER_SET : LC_CSA_HITTING_SET;
  if (a.seed) {
    opts.has_seed = 1;
    opts.seed = *a.seed;
  }
  opts.strict_step6 = a.strict_step6 ? 1 : 0;
  opts.enable_step6 = a.no_step6 ? 0 : 1;
  int found = 0;
  char* out = nullptr;
  check(lc_csa_run(g.get(), &opts, &found, &out));
  std::cout << json::parse(take(out)).dump(2) << "\n";
  return found ? kExitOk : kExitNegative;
}

struct LeadersArgs {
  std::string graph;
  int kmax = 0;
  bool as_json = false;
};

int run_leaders(const LeadersArgs& a) {
  const auto g = load_graph(a.graph);
  char* out = nullptr;
  check(lc_min_leaders(g.get(), a.kmax, &out));
  const json doc = json::parse(take(out));
  if (a.as_json) {
    std::cout << doc.dump(2) << "\n";
  } else if (doc["k_min"].is_null()) {
    std::cout << "no controllable leader set of size <= " << a.kmax << "\n";
  } else {
    const auto& p = doc["probability"];
    std::cout << "k_min: " << doc["k_min"].get<int>() << "\n"
              << "count: " << doc["count"].get<unsigned long long>() << "\n"
              << "probability: " << p["numerator"].get<std::string>() << "/"
              << p["denominator"].get<std::string>() << " = " << p["rendered"].get<std::string>() << "\n";
    if (doc.contains("sets")) {
      for (const auto& s : doc["sets"]) std::cout << format_set(s) << "\n";
    }
  }
  return doc["k_min"].is_null() ? kExitNegative : kExitOk;
}

struct ExperimentArgs {
  std::string sweep;
  std::string config;
  std::string out;
  std::string svg;
  bool ablate_step6 = false;
  int jobs = 0;
};

int run_experiment(const ExperimentArgs& a) {
  std::ifstream f(a.config, std::ios::binary);
  if (!f) throw Failure{LC_ERR_IO, "cannot open " + a.config};
  std::stringstream ss;
  ss << f.rdbuf();
  const lc_sweep sweep = a.sweep == "success" ? LC_SWEEP_SUCCESS
                         : a.sweep == "scaling" ? LC_SWEEP_SCALING
                                                : LC_SWEEP_PROPORTION;
  char* csv = nullptr;
  char* summary = nullptr;
  char* svg = nullptr;
  check(lc_experiment_run(ss.str().c_str(), sweep, a.ablate_step6 ? 1 : 0, a.jobs > 0 ? a.jobs : default_jobs(), &csv,
                          &summary, a.svg.empty() ? nullptr : &svg));
  write_text(a.out, take(csv));
  if (!a.svg.empty()) write_text(a.svg, take(svg));
  const json doc = json::parse(take(summary));
  const auto& fit = doc["leaders_vs_spine"];
  if (fit["valid"].get<bool>()) {
    std::printf("leaders ~ %.4f * n %+.4f\n", fit["slope"].get<double>(), fit["intercept"].get<double>());
  }
  std::printf("audit: %d/%d passed\n", doc["audit_passed"].get<int>(), doc["audited"].get<int>());
  for (const auto& flag : doc["flags"]) std::cout << "flag: " << flag.get<std::string>() << "\n";
  std::cout << "wrote " << a.out << "\n";
  return doc["audit_passed"].get<int>() == doc["audited"].get<int>() ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leader selection and controllability for lobster graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lc_version());

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random lobster");
  gen_cmd->add_option("--spine", gen.spine, "Spine length")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "RNG seed")->required();
  gen_cmd->add_option("--max-load", gen.max_load, "Max attachment load per spine vertex")
      ->capture_default_str()
      ->check(CLI::Range(0, 4));
  gen_cmd->add_option("-o,--out", gen.out, "Output base (writes .lobster.json and .graph.json)")->required();

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Decide controllability for a leader set");
  analyze_cmd->add_option("graph", analyze.graph, "Graph file (JSON or DOT)")->required();
  analyze_cmd->add_option("--leaders", analyze.leaders, "Comma-separated leader ids")->required();
  analyze_cmd->add_flag("--exact", analyze.exact, "Exact Kalman rank instead of floating-point PBH");
  analyze_cmd->add_flag("--json", analyze.as_json, "Print the verdict as JSON");

  MpcsArgs mpcs;
  auto* mpcs_cmd = app.add_subcommand("mpcs", "List minimal perfectly critical sets");
  mpcs_cmd->add_option("graph", mpcs.graph, "Graph file (JSON or DOT)")->required();
  auto* brute_flag = mpcs_cmd->add_flag("--brute", mpcs.brute, "Exhaustive enumeration (n <= 16)");
  auto* detect_flag = mpcs_cmd->add_flag("--detect", mpcs.detect, "Structural detectors (default)");
  brute_flag->excludes(detect_flag);
  mpcs_cmd->add_option("--json", mpcs.json_out, "Also write the catalog to this file");

  CsaArgs csa;
  auto* csa_cmd = app.add_subcommand("csa", "Run the critical set algorithm on a lobster");
  csa_cmd->add_option("graph", csa.graph, "Graph file (JSON or DOT)")->required();
  csa_cmd->add_option("--mode", csa.mode, "Leader choice")
      ->capture_default_str()
      ->check(CLI::IsMember({"hitting-set", "per-set"}));
  csa_cmd->add_option("--seed", csa.seed, "Random pick within each set (per-set mode)");
  csa_cmd->add_flag("--strict-step6", csa.strict_step6, "Add all fallback vertices before checking");
  csa_cmd->add_flag("--no-step6", csa.no_step6, "Disable the fallback step");

  LeadersArgs leaders;
  auto* leaders_cmd = app.add_subcommand("leaders", "Exhaustive minimum leader search (n <= 25)");
  leaders_cmd->add_option("graph", leaders.graph, "Graph file (JSON or DOT)")->required();
  leaders_cmd->add_option("--kmax", leaders.kmax, "Largest leader count to try")->required()->check(CLI::PositiveNumber);
  leaders_cmd->add_flag("--json", leaders.as_json, "Print the result as JSON");

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a randomized sweep");
  exp_cmd->add_option("--sweep", exp.sweep, "Sweep kind")
      ->required()
      ->check(CLI::IsMember({"success", "scaling", "proportion"}));
  exp_cmd->add_option("--config", exp.config, "Sweep config JSON")->required();
  exp_cmd->add_option("-o,--out", exp.out, "CSV output")->required();
  exp_cmd->add_option("--svg", exp.svg, "Also write an SVG plot");
  exp_cmd->add_flag("--ablate-step6", exp.ablate_step6, "Also run each trial with the fallback step off");
  exp_cmd->add_option("--jobs", exp.jobs, "Worker threads (default $LOBSTER_CTRL_JOBS or 1)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*analyze_cmd) return run_analyze(analyze);
    if (*mpcs_cmd) return run_mpcs(mpcs);
    if (*csa_cmd) return run_csa_cmd(csa);
    if (*leaders_cmd) return run_leaders(leaders);
    if (*exp_cmd) return run_experiment(exp);
  } catch (const Failure& f) {
    std::cerr << "error (" << lc_status_name(f.status) << "): " << f.message << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
