#include "lobsterctl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "lobsterctl/control.hpp"
#include "lobsterctl/error.hpp"
#include "lobsterctl/lobster.hpp"

namespace lobsterctl {

void SweepConfig::validate() const {
  if (n_values.empty()) throw Error(ErrorCode::invalid_argument, "sweep needs at least one spine length");
  for (int n : n_values)
    if (n < 2) throw Error(ErrorCode::invalid_argument, "spine lengths must be at least 2");
  if (trials < 1) throw Error(ErrorCode::invalid_argument, "trials must be at least 1");
  if (max_load < 0) throw Error(ErrorCode::invalid_argument, "max_load must be non-negative");
  if (!(audit_fraction >= 0.0 && audit_fraction <= 1.0))
    throw Error(ErrorCode::invalid_argument, "audit_fraction must lie in [0, 1]");
  if (jobs < 1) throw Error(ErrorCode::invalid_argument, "jobs must be at least 1");
}

std::vector<int> default_n_values() {
  std::vector<int> out;
  for (int n = 10; n <= 100; n += 10) out.push_back(n);
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct TrialOutcome {
  int total_vertices = 0;
  bool found = false;
  int leaders = 0;
  std::optional<bool> found_without_step6;
  bool audited = false;
  bool audit_passed = false;
};

TrialOutcome run_trial(const SweepConfig& cfg, int n, int trial) {
  const std::uint64_t seed = trial_seed(cfg.seed, n, trial);
  const Graph g = build_lobster(random_lobster(n, seed, cfg.max_load));
  TrialOutcome out;
  out.total_vertices = g.size();

  CsaOptions opts;
  opts.mode = cfg.mode;
  opts.strict_step6 = cfg.strict_step6;
  opts.certify_limit = -1;  // auditing below decides which runs go exact
  const LeaderReport report = run_csa(g, opts);
  out.found = report.status == CsaStatus::found;
  if (out.found) {
    out.leaders = static_cast<int>(report.leaders.size());
    const double draw = static_cast<double>(splitmix64(seed ^ 0xA0D17ull) >> 11) * 0x1.0p-53;
    if (draw < cfg.audit_fraction) {
      out.audited = true;
      out.audit_passed = kalman_controllable_exact(g, LeaderSet(report.leaders)).controllable;
    }
  }
  if (cfg.ablate_step6) {
    opts.enable_step6 = false;
    out.found_without_step6 = run_csa(g, opts).status == CsaStatus::found;
  }
  return out;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base, int n, int trial) {
  std::uint64_t h = splitmix64(base);
  h = splitmix64(h ^ static_cast<std::uint64_t>(n));
  return splitmix64(h ^ static_cast<std::uint64_t>(trial));
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  LinearFit fit;
  fit.points = static_cast<int>(x.size());
  if (x.size() < 2 || x.size() != y.size()) return fit;
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.valid = true;
  return fit;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const std::size_t per_n = static_cast<std::size_t>(cfg.trials);
  const std::size_t total = cfg.n_values.size() * per_n;
  std::vector<TrialOutcome> outcomes(total);

  auto worker = [&](std::size_t first, std::size_t stride) {
    for (std::size_t idx = first; idx < total; idx += stride) {
      const int n = cfg.n_values[idx / per_n];
      outcomes[idx] = run_trial(cfg, n, static_cast<int>(idx % per_n));
    }
  };
  const auto jobs = static_cast<std::size_t>(cfg.jobs);
  if (jobs <= 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (std::size_t j = 0; j < jobs; ++j) {
      pool.emplace_back([&, j] {
        try {
          worker(j, jobs);
        } catch (...) {
          errors[j] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  SweepResult result;
  std::vector<double> fit_n;
  std::vector<double> fit_total;
  std::vector<double> fit_l;
  for (std::size_t i = 0; i < cfg.n_values.size(); ++i) {
    SweepRow row;
    row.n = cfg.n_values[i];
    row.trials = cfg.trials;
    std::vector<double> leaders;
    std::vector<double> props;
    std::vector<double> sizes;
    int off_successes = 0;
    for (std::size_t t = 0; t < per_n; ++t) {
      const auto& o = outcomes[i * per_n + t];
      sizes.push_back(o.total_vertices);
      if (o.found) {
        ++row.successes;
        leaders.push_back(o.leaders);
        props.push_back(static_cast<double>(o.leaders) / o.total_vertices);
      }
      if (o.found_without_step6 && *o.found_without_step6) ++off_successes;
      if (o.audited) {
        ++row.audited;
        row.audit_passed += o.audit_passed ? 1 : 0;
      }
    }
    row.success_rate = static_cast<double>(row.successes) / row.trials;
    row.mean_leaders = mean(leaders);
    row.mean_N = mean(sizes);
    row.mean_proportion = mean(props);
    if (cfg.ablate_step6) row.step6_off_rate = static_cast<double>(off_successes) / row.trials;
    if (row.successes == 0) {
      result.flags.push_back("n=" + std::to_string(row.n) + ": no successes, excluded from the fit");
    } else {
      fit_n.push_back(row.n);
      fit_total.push_back(row.mean_N);
      fit_l.push_back(row.mean_leaders);
    }
    if (row.audit_passed != row.audited) {
      result.flags.push_back("n=" + std::to_string(row.n) + ": exact audit rejected a found leader set");
    }
    result.rows.push_back(row);
  }
  result.leaders_vs_spine = fit_line(fit_n, fit_l);
  result.leaders_vs_total = fit_line(fit_total, fit_l);
  if (cfg.trials == 1) result.flags.push_back("one trial per spine length: fit has high variance");
  if (!result.leaders_vs_spine.valid) result.flags.push_back("fewer than two usable points: no fit");
  return result;
}

SweepResult run_success_probability(SweepConfig cfg) {
  cfg.ablate_step6 = true;
  return run_sweep(cfg);
}

SweepResult run_leader_scaling(const SweepConfig& cfg) { return run_sweep(cfg); }

SweepResult run_proportion(const SweepConfig& cfg) { return run_sweep(cfg); }

std::string csv_header(bool with_ablation) {
  std::string h = "n,trials,successes,success_rate,mean_leaders,mean_N,mean_proportion";
  if (with_ablation) h += ",step6_off_rate";
  return h;
}

namespace {

std::string fixed6(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

std::string to_csv(const SweepResult& result) {
  const bool ablation = !result.rows.empty() && result.rows.front().step6_off_rate.has_value();
  std::string out = csv_header(ablation) + "\n";
  for (const auto& r : result.rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.trials) + "," + std::to_string(r.successes) + "," +
           fixed6(r.success_rate) + "," + fixed6(r.mean_leaders) + "," + fixed6(r.mean_N) + "," +
           fixed6(r.mean_proportion);
    if (ablation) out += "," + fixed6(*r.step6_off_rate);
    out += "\n";
  }
  return out;
}

void write_csv(const SweepResult& result, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::io, "cannot open " + path + " for writing");
  f << to_csv(result);
  if (!f) throw Error(ErrorCode::io, "write failed for " + path);
}

std::vector<SweepRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::parse, "empty CSV");
  bool ablation = false;
  if (line == csv_header(true)) {
    ablation = true;
  } else if (line != csv_header(false)) {
    throw Error(ErrorCode::parse, "unexpected CSV header: " + line);
  }
  auto number = [](const std::string& cell) {
    if (cell == "nan") return std::numeric_limits<double>::quiet_NaN();
    std::size_t used = 0;
    double v = std::stod(cell, &used);
    if (used != cell.size()) throw Error(ErrorCode::parse, "bad CSV number: " + cell);
    return v;
  };
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != (ablation ? 8u : 7u)) throw Error(ErrorCode::parse, "bad CSV row: " + line);
    try {
      SweepRow r;
      r.n = std::stoi(cells[0]);
      r.trials = std::stoi(cells[1]);
      r.successes = std::stoi(cells[2]);
      r.success_rate = number(cells[3]);
      r.mean_leaders = number(cells[4]);
      r.mean_N = number(cells[5]);
      r.mean_proportion = number(cells[6]);
      if (ablation) r.step6_off_rate = number(cells[7]);
      rows.push_back(r);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::parse, "bad CSV row: " + line);
    }
  }
  return rows;
}

std::string to_svg(const SweepResult& result, SweepMetric metric) {
  constexpr double W = 640, H = 400, M = 50;
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : result.rows) {
    double y = metric == SweepMetric::success   ? r.success_rate
               : metric == SweepMetric::scaling ? r.mean_leaders
                                                : r.mean_proportion;
    if (!std::isnan(y)) pts.emplace_back(r.n, y);
  }
  auto reference = [metric](double n) {
    return metric == SweepMetric::success ? 0.98 : metric == SweepMetric::scaling ? 0.3 * n + 2 : 0.2;
  };
  double xmin = 0, xmax = 1, ymax = metric == SweepMetric::scaling ? 1.0 : 1.05;
  if (!result.rows.empty()) {
    xmin = result.rows.front().n;
    xmax = std::max(xmin + 1, static_cast<double>(result.rows.back().n));
  }
  for (auto [x, y] : pts) ymax = std::max(ymax, y * 1.1);
  if (metric == SweepMetric::scaling) ymax = std::max(ymax, reference(xmax) * 1.1);
  auto sx = [&](double x) { return M + (x - xmin) / (xmax - xmin) * (W - 2 * M); };
  auto sy = [&](double y) { return H - M - y / ymax * (H - 2 * M); };

  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  const char* title = metric == SweepMetric::success   ? "success rate"
                      : metric == SweepMetric::scaling ? "mean leaders"
                                                       : "leader proportion";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << M / 2 << "\" text-anchor=\"middle\">" << title
     << " vs spine length</text>\n";
  os << "<line x1=\"" << sx(xmin) << "\" y1=\"" << sy(reference(xmin)) << "\" x2=\"" << sx(xmax) << "\" y2=\""
     << sy(reference(xmax)) << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
  if (!pts.empty()) {
    os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (auto [x, y] : pts) os << sx(x) << "," << sy(y) << " ";
    os << "\"/>\n";
    for (auto [x, y] : pts) os << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"3\" fill=\"steelblue\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace lobsterctl
