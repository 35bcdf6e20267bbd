#include "lobsterctl/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

#include "lobsterctl/error.hpp"

namespace lobsterctl {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, std::string("malformed ") + what + " JSON: " + e.what());
  }
}

int to_id(const std::string& token) {
  if (token.empty() || !std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw Error(ErrorCode::parse, "DOT node ids must be positive integers, got '" + token + "'");
  }
  return std::stoi(token);
}

Graph parse_dot(std::string_view text) {
  std::string body(text);
  body = std::regex_replace(body, std::regex(R"(//[^\n]*|#[^\n]*)"), "");
  body = std::regex_replace(body, std::regex(R"(/\*[\s\S]*?\*/)"), "");
  const auto open = body.find('{');
  const auto close = body.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw Error(ErrorCode::parse, "DOT input needs a { ... } body");
  }
  std::istringstream head(body.substr(0, open));
  std::string keyword;
  head >> keyword;
  if (keyword == "strict") head >> keyword;
  if (keyword != "graph") throw Error(ErrorCode::parse, "only undirected DOT graphs are accepted");

  std::string stmts = body.substr(open + 1, close - open - 1);
  stmts = std::regex_replace(stmts, std::regex(R"(\[[^\]]*\])"), "");
  std::replace(stmts.begin(), stmts.end(), '\n', ';');
  std::vector<Edge> edges;
  int n = 0;
  std::stringstream ss(stmts);
  std::string stmt;
  while (std::getline(ss, stmt, ';')) {
    if (std::all_of(stmt.begin(), stmt.end(), [](unsigned char c) { return std::isspace(c); })) continue;
    if (stmt.find("->") != std::string::npos) throw Error(ErrorCode::parse, "directed edge in DOT input");
    std::vector<int> chain;
    std::size_t pos = 0;
    while (true) {
      const auto dash = stmt.find("--", pos);
      std::string token = stmt.substr(pos, dash == std::string::npos ? std::string::npos : dash - pos);
      token.erase(std::remove_if(token.begin(), token.end(), [](unsigned char c) { return std::isspace(c); }),
                  token.end());
      chain.push_back(to_id(token));
      if (dash == std::string::npos) break;
      pos = dash + 2;
    }
    for (int v : chain) n = std::max(n, v);
    for (std::size_t i = 1; i < chain.size(); ++i) edges.emplace_back(chain[i - 1], chain[i]);
  }
  return Graph(n, edges);
}

}  // namespace

Graph parse_graph(std::string_view text) {
  const auto first = std::find_if(text.begin(), text.end(), [](unsigned char c) { return !std::isspace(c); });
  if (first == text.end()) throw Error(ErrorCode::parse, "empty graph input");
  if (*first != '{') return parse_dot(text);

  const json doc = parse_json(text, "graph");
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges")) {
    throw Error(ErrorCode::parse, "graph JSON needs \"n\" and \"edges\"");
  }
  if (!doc["n"].is_number_integer()) throw Error(ErrorCode::parse, "\"n\" must be an integer");
  if (!doc["edges"].is_array()) throw Error(ErrorCode::parse, "\"edges\" must be an array");
  std::vector<Edge> edges;
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw Error(ErrorCode::parse, "edge entries must be [i, j] integer pairs, got " + e.dump());
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Graph(doc["n"].get<int>(), edges);
}

std::string serialize_graph(const Graph& g) {
  json edges = json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a, b});
  return json{{"n", g.size()}, {"edges", edges}}.dump();
}

LobsterSpec parse_lobster_spec(std::string_view text) {
  const json doc = parse_json(text, "lobster");
  LobsterSpec spec;
  try {
    spec.spine_len = doc.at("spine_len").get<int>();
    spec.attach = doc.at("attach").get<std::vector<std::vector<int>>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("lobster JSON needs spine_len and attach: ") + e.what());
  }
  validate(spec);
  return spec;
}

std::string serialize_lobster_spec(const LobsterSpec& spec) {
  return json{{"spine_len", spec.spine_len}, {"attach", spec.attach}}.dump();
}

SweepConfig parse_sweep_config(std::string_view text) {
  const json doc = parse_json(text, "sweep config");
  if (!doc.is_object()) throw Error(ErrorCode::parse, "sweep config must be a JSON object");
  SweepConfig cfg;
  try {
    if (doc.contains("n_values")) {
      cfg.n_values = doc["n_values"].get<std::vector<int>>();
    } else if (doc.contains("n_min")) {
      const int lo = doc.at("n_min").get<int>();
      const int hi = doc.at("n_max").get<int>();
      const int step = doc.value("n_step", 10);
      if (step < 1) throw Error(ErrorCode::parse, "n_step must be positive");
      for (int n = lo; n <= hi; n += step) cfg.n_values.push_back(n);
    } else {
      cfg.n_values = default_n_values();
    }
    cfg.trials = doc.value("trials", cfg.trials);
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.max_load = doc.value("max_load", cfg.max_load);
    cfg.strict_step6 = doc.value("strict_step6", cfg.strict_step6);
    cfg.audit_fraction = doc.value("audit_fraction", cfg.audit_fraction);
    const std::string mode = doc.value("mode", std::string("hitting-set"));
    if (mode == "hitting-set") {
      cfg.mode = CsaMode::hitting_set;
    } else if (mode == "per-set") {
      cfg.mode = CsaMode::per_set;
    } else {
      throw Error(ErrorCode::parse, "mode must be hitting-set or per-set, got " + mode);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("bad sweep config: ") + e.what());
  }
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::parse, std::string("bad sweep config: ") + e.what());
  }
  return cfg;
}

json to_json(const Witness& w) {
  std::vector<double> y(w.y.data(), w.y.data() + w.y.size());
  return json{{"lambda", w.lambda}, {"y", y}};
}

json to_json(const CriticalRecord& record) {
  return json{{"vertices", record.vertices},
              {"kind", to_string(record.kind)},
              {"origin", to_string(record.origin)},
              {"lambda", record.witness.lambda},
              {"verified_exact", record.verified_exact}};
}

json to_json(const MpcsCatalog& catalog) {
  json out = json::array();
  for (const auto& r : catalog.records) out.push_back(to_json(r));
  return out;
}

json to_json(const ControllabilityVerdict& verdict) {
  json out{{"controllable", verdict.controllable},
           {"method", verdict.method == VerdictMethod::pbh_float ? "pbh-float" : "kalman-exact"},
           {"followers", verdict.followers}};
  if (verdict.rank) out["rank"] = *verdict.rank;
  if (verdict.method == VerdictMethod::pbh_float) {
    out["min_singular"] = verdict.min_singular;
    out["near_threshold"] = verdict.near_threshold;
  }
  if (verdict.witness) out["witness"] = to_json(*verdict.witness);
  return out;
}

json to_json(const LeaderReport& report) {
  json steps = json::array();
  for (const auto& s : report.steps) {
    json e{{"step", s.step}, {"action", s.action}, {"set", s.set}};
    if (s.leader) e["leader"] = *s.leader;
    if (s.controllable) e["controllable"] = *s.controllable;
    steps.push_back(std::move(e));
  }
  json out{{"status", to_string(report.status)},
           {"mode", to_string(report.mode)},
           {"leaders", report.leaders},
           {"spine", report.spine},
           {"verdict_float", report.verdict_float},
           {"verdict_exact", report.verdict_exact ? json(*report.verdict_exact) : json(nullptr)},
           {"steps", steps},
           {"notes", report.notes}};
  if (report.exact_rank) out["exact_rank"] = *report.exact_rank;
  return out;
}

json to_json(const MinLeaderResult& result) {
  json out{{"k_max", result.k_max}};
  if (result.k_min) {
    out["k_min"] = *result.k_min;
    out["count"] = result.count;
    if (result.list_complete) out["sets"] = result.sets;
  } else {
    out["k_min"] = nullptr;
    out["k_min_at_least"] = result.k_max + 1;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::io, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::io, "cannot open " + path + " for writing");
  f << contents;
  if (!f) throw Error(ErrorCode::io, "write failed for " + path);
}

}  // namespace lobsterctl
