// Copyright 2026 The prophetcomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "prophetcomp/certificate.hpp"
#include "prophetcomp/complexity.hpp"
#include "prophetcomp/mc.hpp"
#include "prophetcomp/ratio.hpp"

namespace prophetcomp::cli {
namespace {

using nlohmann::json;

// Table 1, first row: upper bounds on the optimal multi-threshold ratio
// for k = 1..5 (Chawla, Devanur and Lykouris, 2020).
constexpr std::array<double, 5> kTable1Bounds = {0.7474, 0.8372, 0.8742,
                                                 0.8949, 0.9086};
constexpr std::int64_t kTable1N = 1000;
constexpr const char* kTable1Source = "Chawla, Devanur and Lykouris, 2020";

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round12(x);
}

std::string csv_num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string table_num(double x, int digits = 4) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

std::string timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json manifest(const std::string& command, json params,
              std::optional<std::uint64_t> seed) {
  json m;
  m["command"] = command;
  m["params"] = std::move(params);
  m["seed"] = seed ? json(*seed) : json(nullptr);
  m["version"] = PROPHETCOMP_VERSION;
  m["timestamp"] = timestamp();
  return m;
}

void setup_logging(std::ostream& err) {
  (void)err;
  auto logger = spdlog::get("prophetcomp");
  if (!logger) {
    logger = spdlog::stderr_color_mt("prophetcomp");
    spdlog::set_default_logger(logger);
  }
  spdlog::level::level_enum level = spdlog::level::err;
  if (const char* env = std::getenv("PROPHETCOMP_LOG")) {
    const std::string v = env;
    if (v == "info") level = spdlog::level::info;
    if (v == "debug") level = spdlog::level::debug;
  }
  spdlog::set_level(level);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw std::invalid_argument("bad number '" + s + "'");
  }
  return v;
}

std::string instance_label(const SelectionInstance& inst) {
  return inst.to_string();
}

json report_json(const CheckReport& r) {
  return json{{"instance",
               {{"m", r.instance.m()}, {"n", r.instance.n()},
                {"k", r.instance.k()}}},
              {"check", r.check},
              {"max_residual", num(r.max_residual)},
              {"passed", r.passed},
              {"witness", num(r.witness)},
              {"detail", r.detail}};
}

struct Common {
  std::string format = "json";
};

void add_format(CLI::App* sub, Common& common) {
  sub->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
}

void emit(std::ostream& out, const Common& c, const json& doc,
          const std::vector<std::string>& columns,
          const std::vector<std::vector<std::string>>& rows,
          const std::vector<std::string>& table) {
  if (c.format == "json") {
    out << doc.dump() << '\n';
    return;
  }
  if (c.format == "csv") {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "") << columns[i];
    }
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? "," : "") << row[i];
      }
      out << '\n';
    }
    return;
  }
  for (const auto& line : table) out << line << '\n';
}

// ---- ratio ------------------------------------------------------------

struct RatioArgs {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::int64_t k = 0;
};

int run_ratio(const RatioArgs& a, const Common& c, std::ostream& out) {
  const SelectionInstance inst(a.m, a.n, a.k);
  const RatioResult r = competitive_ratio(inst);
  const std::string rule =
      "accept the first " + std::to_string(a.k) +
      " values at or above T = F^{-1}(1 - " + std::to_string(a.k) + "/" +
      std::to_string(a.n) + ")";
  json doc;
  doc["manifest"] =
      manifest("ratio", {{"m", a.m}, {"n", a.n}, {"k", a.k}}, std::nullopt);
  doc["result"] = {{"m", a.m},
                   {"n", a.n},
                   {"k", a.k},
                   {"gamma", num(r.gamma)},
                   {"optimal_quantile", num(r.optimal_quantile)},
                   {"rule", rule}};
  emit(out, c, doc, {"m", "n", "k", "gamma", "optimal_quantile"},
       {{std::to_string(a.m), std::to_string(a.n), std::to_string(a.k),
         csv_num(r.gamma), csv_num(r.optimal_quantile)}},
       {instance_label(inst), "gamma            " + table_num(r.gamma),
        "optimal quantile " + table_num(r.optimal_quantile),
        "rule             " + rule});
  return kSuccess;
}

// ---- complexity -------------------------------------------------------

struct ComplexityArgs {
  std::int64_t k = 1;
  double epsilon = 0.1;
  std::optional<std::int64_t> n;
  std::vector<std::int64_t> n_grid;
};

int run_complexity(const ComplexityArgs& a, const Common& c,
                   std::ostream& out) {
  ComplexityQuery q;
  q.k = a.k;
  q.epsilon = a.epsilon;
  q.n = a.n;
  q.n_grid = a.n_grid;
  const ComplexityReport r = beta_bounds(q);
  spdlog::info("complexity k={} eps={} t*={}", r.k, r.epsilon, r.t_star);

  json params = {{"k", a.k}, {"epsilon", a.epsilon}};
  params["n"] = a.n ? json(*a.n) : json(nullptr);
  params["n_grid"] = a.n_grid;
  json res = {{"k", r.k},
              {"epsilon", num(r.epsilon)},
              {"infinite", r.infinite},
              {"lower", r.infinite ? json(nullptr) : num(r.lower)},
              {"upper", r.infinite ? json(nullptr) : num(r.upper)},
              {"upper_closed_form",
               r.infinite ? json(nullptr) : num(r.upper_closed_form)},
              {"t_star", num(r.t_star)},
              {"psi_at_t_star", r.infinite ? json(nullptr)
                                           : num(r.psi_at_t_star)},
              {"poisson_estimate",
               r.infinite ? json(nullptr) : num(r.poisson_estimate)}};
  res["finite_n"] = nullptr;
  if (r.finite_n) {
    res["finite_n"] = {{"n", r.finite_n->n},
                       {"m", r.finite_n->m},
                       {"ratio", num(r.finite_n->ratio)}};
  }
  res["n_grid"] = json::array();
  for (const auto& f : r.n_grid) {
    res["n_grid"].push_back(
        {{"n", f.n}, {"m", f.m}, {"ratio", num(f.ratio)}});
  }
  res["n_grid_sup"] = r.n_grid_sup ? num(*r.n_grid_sup) : json(nullptr);

  json doc;
  doc["manifest"] = manifest("complexity", params, std::nullopt);
  doc["result"] = res;

  auto field = [&](double x) { return r.infinite ? "inf" : csv_num(x); };
  std::vector<std::string> row = {
      std::to_string(r.k),
      csv_num(r.epsilon),
      field(r.lower),
      field(r.upper),
      field(r.upper_closed_form),
      csv_num(r.t_star),
      field(r.psi_at_t_star),
      field(r.poisson_estimate),
      r.finite_n ? std::to_string(r.finite_n->m) : "",
      r.finite_n ? csv_num(r.finite_n->ratio) : "",
      r.n_grid_sup ? csv_num(*r.n_grid_sup) : ""};
  std::vector<std::string> table = {
      "k=" + std::to_string(r.k) + " epsilon=" + table_num(r.epsilon)};
  if (r.infinite) {
    table.push_back("beta infinite");
  } else {
    table.push_back("lower            " + table_num(r.lower));
    table.push_back("poisson estimate " + table_num(r.poisson_estimate));
    table.push_back("psi(t*)          " + table_num(r.psi_at_t_star));
    table.push_back("closed-form upper " + table_num(r.upper_closed_form));
    if (r.finite_n) {
      table.push_back("n=" + std::to_string(r.finite_n->n) + "        " +
                      table_num(r.finite_n->ratio));
    }
  }
  emit(out, c, doc,
       {"k", "epsilon", "lower", "upper", "upper_closed_form", "t_star",
        "psi_at_t_star", "poisson_estimate", "finite_n_m", "finite_n_ratio",
        "n_grid_sup"},
       {row}, table);
  return kSuccess;
}

// ---- table1 -----------------------------------------------------------

int run_table1(const Common& c, std::ostream& out) {
  json rows = json::array();
  std::vector<std::vector<std::string>> csv_rows;
  std::string head = "k              ";
  std::string bounds = "upper bound    ";
  std::string betas = "beta (n=1000)  ";
  for (std::size_t i = 0; i < kTable1Bounds.size(); ++i) {
    const auto k = static_cast<std::int64_t>(i + 1);
    const double eps = 1.0 - kTable1Bounds[i];
    const FiniteNComplexity f = beta_finite_n(k, kTable1N, eps);
    char beta[16];
    std::snprintf(beta, sizeof(beta), "%.3f", f.ratio);
    rows.push_back({{"k", k},
                    {"bound", num(kTable1Bounds[i])},
                    {"epsilon", num(eps)},
                    {"m", f.m},
                    {"beta", num(f.ratio)}});
    csv_rows.push_back({std::to_string(k), csv_num(kTable1Bounds[i]),
                        csv_num(eps), std::to_string(f.m), beta});
    head += std::to_string(k) + "       ";
    bounds += table_num(kTable1Bounds[i]) + "  ";
    betas += std::string(beta) + "   ";
  }
  json doc;
  doc["manifest"] = manifest("table1", {{"n", kTable1N}}, std::nullopt);
  doc["result"] = {
      {"n", kTable1N}, {"bound_source", kTable1Source}, {"rows", rows}};
  emit(out, c, doc, {"k", "bound", "epsilon", "m", "beta"}, csv_rows,
       {head, bounds, betas});
  return kSuccess;
}

// ---- verify -----------------------------------------------------------

struct VerifyArgs {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::size_t grid = 10000;
  std::optional<std::size_t> lp_cells;
  std::size_t duality_trials = 1000;
  std::uint64_t seed = 0;
};

int run_verify(const VerifyArgs& a, const Common& c, std::ostream& out) {
  const SelectionInstance inst(a.m, a.n, a.k);
  const GridSpec grid = instance_grid(inst, a.grid);
  const auto [primal, dual] = build_certificates(inst);
  spdlog::info("verify {} d={} v={}", inst.to_string(), primal.value,
               dual.value());

  std::vector<CheckReport> reports;
  reports.push_back(check_primal_feasibility(primal, inst, grid));
  reports.push_back(check_dual_feasibility(dual, inst, grid));
  reports.push_back(
      weak_duality_battery(inst, grid, a.duality_trials, a.seed).report);
  reports.push_back(check_phi_argmax(inst, grid));
  if (inst.m() >= inst.k() + 2) {
    for (auto& r : check_quasiconcavity(inst, grid)) reports.push_back(r);
  }
  json lp = nullptr;
  if (a.lp_cells) {
    const LpResult r = solve_discretized_lp(inst, *a.lp_cells);
    CheckReport rep{"discretized_lp", inst, true, 0.0, inst.breakpoint(), {}};
    rep.max_residual = std::fabs(primal.value - r.value);
    if (r.value > primal.value + 1e-9) {
      rep.passed = false;
      rep.detail = "grid LP above certificate value";
    }
    if (rep.max_residual >= 5e-3) {
      rep.passed = false;
      rep.detail = "grid LP gap too large";
    }
    reports.push_back(rep);
    lp = {{"cells", r.cells},
          {"value", num(r.value)},
          {"gap", num(primal.value - r.value)},
          {"pivots", r.pivots}};
  }

  bool ok = true;
  json checks = json::array();
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> table = {instance_label(inst) +
                                    "  gamma=" + table_num(primal.value)};
  for (const auto& r : reports) {
    ok = ok && r.passed;
    checks.push_back(report_json(r));
    rows.push_back({std::to_string(a.m), std::to_string(a.n),
                    std::to_string(a.k), r.check, csv_num(r.max_residual),
                    r.passed ? "pass" : "fail", csv_num(r.witness)});
    std::string line = (r.passed ? "PASS " : "FAIL ") + r.check +
                       "  residual=" + table_num(r.max_residual) +
                       "  witness=" + table_num(r.witness);
    if (!r.detail.empty()) line += "  (" + r.detail + ")";
    table.push_back(line);
  }
  json params = {{"m", a.m},
                 {"n", a.n},
                 {"k", a.k},
                 {"grid", a.grid},
                 {"duality_trials", a.duality_trials}};
  params["lp_cells"] = a.lp_cells ? json(*a.lp_cells) : json(nullptr);
  json doc;
  doc["manifest"] = manifest("verify", params, a.seed);
  doc["result"] = {{"gamma", num(primal.value)},
                   {"A", num(primal.atom)},
                   {"B", num(primal.constant)},
                   {"d", num(primal.value)},
                   {"v", num(dual.value())},
                   {"passed", ok},
                   {"checks", checks},
                   {"lp", lp}};
  emit(out, c, doc,
       {"m", "n", "k", "check", "max_residual", "passed", "witness"}, rows,
       table);
  return ok ? kSuccess : kVerificationFailure;
}

// ---- simulate / scan --------------------------------------------------

struct McArgs {
  std::string dist;
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::string q = "auto";
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string tie_break = "noise";
  std::size_t q_grid = 21;
};

McConfig mc_config(const McArgs& a) {
  McConfig cfg;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.threads = a.threads;
  cfg.tie_break =
      a.tie_break == "none" ? TieBreak::kNone : TieBreak::kUniformNoise;
  return cfg;
}

json mc_params(const McArgs& a) {
  return {{"dist", a.dist},   {"m", a.m},
          {"n", a.n},         {"k", a.k},
          {"q", a.q},         {"trials", a.trials},
          {"threads", a.threads}, {"tie_break", a.tie_break}};
}

double z_score(double mc, double exact, double se) {
  if (se == 0.0) return mc == exact ? 0.0 : std::copysign(INFINITY, mc - exact);
  return (mc - exact) / se;
}

int run_simulate(const McArgs& a, const Common& c, std::ostream& out) {
  const SelectionInstance inst(a.m, a.n, a.k);
  const DistributionSpec dist = parse_distribution(a.dist, inst);
  const double qv = a.q == "auto" ? inst.breakpoint() : parse_real(a.q);
  const Quantile q(qv);
  const McConfig cfg = mc_config(a);

  const double alg = alg_value(dist, a.m, a.k, q);
  const double opt = opt_value(dist, a.n, a.k);
  spdlog::info("simulate {} {} q={}", dist.describe(), inst.to_string(), qv);
  const McEstimate alg_mc = simulate_threshold(dist, a.m, a.k, q, cfg);
  const McEstimate opt_mc = simulate_prophet(dist, a.n, a.k, cfg);
  const double z_alg = z_score(alg_mc.mean, alg, alg_mc.std_error);
  const double z_opt = z_score(opt_mc.mean, opt, opt_mc.std_error);
  const double gamma = competitive_ratio(inst).gamma;

  json params = mc_params(a);
  params["resolved_dist"] = dist.describe();
  params["resolved_q"] = num(qv);
  json doc;
  doc["manifest"] = manifest("simulate", params, a.seed);
  doc["result"] = {
      {"threshold",
       {{"closed_form", num(alg)},
        {"mc_mean", num(alg_mc.mean)},
        {"stderr", num(alg_mc.std_error)},
        {"z", num(z_alg)}}},
      {"prophet",
       {{"closed_form", num(opt)},
        {"mc_mean", num(opt_mc.mean)},
        {"stderr", num(opt_mc.std_error)},
        {"z", num(z_opt)}}},
      {"ratio_closed_form", num(alg / opt)},
      {"ratio_mc", num(alg_mc.mean / opt_mc.mean)},
      {"gamma", num(gamma)},
      {"trials", a.trials}};
  emit(out, c, doc,
       {"quantity", "closed_form", "mc_mean", "stderr", "z"},
       {{"threshold", csv_num(alg), csv_num(alg_mc.mean),
         csv_num(alg_mc.std_error), csv_num(z_alg)},
        {"prophet", csv_num(opt), csv_num(opt_mc.mean),
         csv_num(opt_mc.std_error), csv_num(z_opt)}},
       {dist.describe() + "  " + instance_label(inst) +
            "  q=" + table_num(qv),
        "threshold  exact " + table_num(alg) + "  mc " +
            table_num(alg_mc.mean) + " +- " + table_num(alg_mc.std_error) +
            "  z " + table_num(z_alg, 3),
        "prophet    exact " + table_num(opt) + "  mc " +
            table_num(opt_mc.mean) + " +- " + table_num(opt_mc.std_error) +
            "  z " + table_num(z_opt, 3),
        "ratio      exact " + table_num(alg / opt) + "  gamma " +
            table_num(gamma)});
  return kSuccess;
}

int run_scan(const McArgs& a, const Common& c, std::ostream& out) {
  const SelectionInstance inst(a.m, a.n, a.k);
  const DistributionSpec dist = parse_distribution(a.dist, inst);
  const auto points = empirical_ratio_scan(dist, inst, a.q_grid, mc_config(a));
  const double opt = opt_value(dist, a.n, a.k);
  json arr = json::array();
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> table = {dist.describe() + "  " +
                                    instance_label(inst)};
  for (const auto& p : points) {
    const double exact = alg_value(dist, a.m, a.k, Quantile(p.q)) / opt;
    arr.push_back({{"q", num(p.q)},
                   {"ratio", num(p.ratio)},
                   {"stderr", num(p.std_error)},
                   {"closed_form", num(exact)}});
    rows.push_back({csv_num(p.q), csv_num(p.ratio), csv_num(p.std_error),
                    csv_num(exact)});
    table.push_back(table_num(p.q) + "  " + table_num(p.ratio) + " +- " +
                    table_num(p.std_error) + "  exact " + table_num(exact));
  }
  json params = mc_params(a);
  params["q_grid"] = a.q_grid;
  params["resolved_dist"] = dist.describe();
  json doc;
  doc["manifest"] = manifest("scan", params, a.seed);
  doc["result"] = {{"gamma", num(competitive_ratio(inst).gamma)},
                   {"points", arr}};
  emit(out, c, doc, {"q", "ratio", "stderr", "closed_form"}, rows, table);
  return kSuccess;
}

void add_instance(CLI::App* sub, std::int64_t& m, std::int64_t& n,
                  std::int64_t& k) {
  sub->add_option("--m", m, "Draws seen by the threshold player")->required();
  sub->add_option("--n", n, "Draws seen by the prophet")->required();
  sub->add_option("--k", k, "Selections allowed")->required();
}

void add_mc(CLI::App* sub, McArgs& a) {
  sub->add_option("--dist", a.dist, kDistGrammar)->required();
  add_instance(sub, a.m, a.n, a.k);
  sub->add_option("--trials", a.trials, "Monte Carlo trials")
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", a.seed, "64-bit seed");
  sub->add_option("--threads", a.threads, "Worker threads (0 = all cores)");
  sub->add_option("--tie-break", a.tie_break, "Tie-breaking at the threshold")
      ->check(CLI::IsMember({"none", "noise"}));
}

}  // namespace

DistributionSpec parse_distribution(
    const std::string& text, const std::optional<SelectionInstance>& inst) {
  const auto bad = [&](const std::string& why) {
    return std::invalid_argument("cannot parse distribution '" + text +
                                 "': " + why + "; grammar: " + kDistGrammar);
  };
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw bad("missing ':'");
  const std::string name = text.substr(0, colon);
  const std::string body = text.substr(colon + 1);
  const std::vector<std::string> parts = split(body, ',');
  std::vector<double> p;
  auto reals = [&](std::size_t count) {
    if (parts.size() != count) {
      throw bad("expected " + std::to_string(count) + " parameters");
    }
    try {
      for (const auto& s : parts) p.push_back(parse_real(s));
    } catch (const std::invalid_argument& e) {
      throw bad(e.what());
    }
  };
  try {
    if (name == "uniform") {
      reals(2);
      return DistributionSpec(Uniform{p[0], p[1]});
    }
    if (name == "exp") {
      reals(1);
      return DistributionSpec(Exponential{p[0]});
    }
    if (name == "pareto") {
      reals(2);
      return DistributionSpec(Pareto{p[0], p[1]});
    }
    if (name == "table") {
      QuantileTable t;
      for (const auto& knot : parts) {
        const auto slash = knot.find('/');
        if (slash == std::string::npos) throw bad("table knot needs U/V");
        try {
          t.knots.emplace_back(parse_real(knot.substr(0, slash)),
                               parse_real(knot.substr(slash + 1)));
        } catch (const std::invalid_argument& e) {
          throw bad(e.what());
        }
      }
      return DistributionSpec(std::move(t));
    }
    if (name == "atomwc") {
      if (body == "auto") {
        if (!inst) throw bad("atomwc:auto needs an instance");
        const auto [primal, dual] = build_certificates(*inst);
        (void)dual;
        return DistributionSpec(
            AtomWorstCase{primal.atom, primal.constant, kAutoAtomMass});
      }
      reals(3);
      return DistributionSpec(AtomWorstCase{p[0], p[1], p[2]});
    }
  } catch (const std::domain_error& e) {
    throw bad(e.what());
  }
  throw bad("unknown family '" + name + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  setup_logging(err);
  CLI::App app{"Single-threshold prophet inequalities: ratios, competition "
               "complexity, certificates and Monte Carlo checks"};
  app.set_version_flag("--version", PROPHETCOMP_VERSION);
  app.require_subcommand(1);
  Common common;

  RatioArgs ratio;
  auto* ratio_cmd = app.add_subcommand("ratio", "Competitive ratio gamma");
  add_instance(ratio_cmd, ratio.m, ratio.n, ratio.k);
  add_format(ratio_cmd, common);

  ComplexityArgs cx;
  std::int64_t cx_n = 0;
  std::string cx_grid;
  auto* cx_cmd = app.add_subcommand("complexity", "Competition complexity");
  cx_cmd->add_option("--k", cx.k, "Selections allowed")->required();
  cx_cmd->add_option("--epsilon", cx.epsilon, "Target loss")->required();
  auto* cx_n_opt = cx_cmd->add_option("--n", cx_n, "Finite prophet size");
  cx_cmd->add_option("--n-grid", cx_grid, "Comma-separated prophet sizes");
  add_format(cx_cmd, common);

  auto* t1_cmd = app.add_subcommand("table1", "Reproduce Table 1");
  add_format(t1_cmd, common);

  VerifyArgs vf;
  auto* vf_cmd = app.add_subcommand("verify", "Check LP certificates");
  add_instance(vf_cmd, vf.m, vf.n, vf.k);
  vf_cmd->add_option("--grid", vf.grid, "Grid points")
      ->check(CLI::Range(2, 10'000'000));
  auto* lp_opt = vf_cmd->add_option("--lp-cells", vf.lp_cells,
                                    "Cells for the discretized LP");
  lp_opt->check(CLI::Range(10, 2000));
  vf_cmd->add_option("--duality-trials", vf.duality_trials,
                     "Random primal points for weak duality");
  vf_cmd->add_option("--seed", vf.seed, "64-bit seed");
  add_format(vf_cmd, common);

  McArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo vs closed form");
  add_mc(sim_cmd, sim);
  sim_cmd->add_option("--q", sim.q, "Threshold quantile or 'auto' (k/n)");
  add_format(sim_cmd, common);

  McArgs scan;
  auto* scan_cmd =
      app.add_subcommand("scan", "Empirical ALG/OPT across a quantile grid");
  add_mc(scan_cmd, scan);
  scan_cmd->add_option("--q-grid", scan.q_grid, "Quantile grid points")
      ->check(CLI::Range(2, 100000));
  add_format(scan_cmd, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << PROPHETCOMP_VERSION << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (auto* sub = app.get_subcommands().empty()
                        ? nullptr
                        : app.get_subcommands().front()) {
      err << sub->help();
    } else {
      err << app.help();
    }
    return kUsageError;
  }

  try {
    if (*ratio_cmd) return run_ratio(ratio, common, out);
    if (*cx_cmd) {
      if (*cx_n_opt) cx.n = cx_n;
      if (!cx_grid.empty()) {
        for (const auto& s : split(cx_grid, ',')) {
          const double v = parse_real(s);
          if (v != std::floor(v)) {
            throw std::invalid_argument("n-grid entries must be integers");
          }
          cx.n_grid.push_back(static_cast<std::int64_t>(v));
        }
      }
      return run_complexity(cx, common, out);
    }
    if (*t1_cmd) return run_table1(common, out);
    if (*vf_cmd) return run_verify(vf, common, out);
    if (*sim_cmd) return run_simulate(sim, common, out);
    if (*scan_cmd) return run_scan(scan, common, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    spdlog::error("internal error: {}", e.what());
    err << "internal error: " << e.what() << '\n';
    return kVerificationFailure;
  }
  return kUsageError;
}

}  // namespace prophetcomp::cli
