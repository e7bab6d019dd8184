// Command-line front end for the persuasion library.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "persuasion/approx.hpp"
#include "persuasion/arbitrary.hpp"
#include "persuasion/figures.hpp"
#include "persuasion/io.hpp"
#include "persuasion/monotone_regret.hpp"
#include "persuasion/multidim.hpp"
#include "persuasion/standard.hpp"
#include "persuasion/verify.hpp"

#ifndef PERSUASION_VERSION
#define PERSUASION_VERSION "0.0.0"
#endif

using nlohmann::ordered_json;
using namespace persuasion;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitFailed = 3;

struct Config {
  std::string command;
  std::string instance;
  std::string out;
  std::string format;
  std::string mode = "regret";
  std::string suite;
  std::string kind = "all";
  std::string dims = "3,3";
  std::uint64_t seed = 0;
  std::optional<int> grid;
  std::optional<double> eps;
  std::optional<double> alpha;
  int n = 16;
  long sample = 0;
  int priors = 20;
  double timeout = 600.0;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json manifest(const Config& c) {
  ordered_json cfg;
  if (!c.instance.empty()) cfg["instance"] = c.instance;
  cfg["seed"] = c.seed;
  if (c.grid) cfg["grid"] = *c.grid;
  if (c.eps) cfg["eps"] = *c.eps;
  if (c.alpha) cfg["alpha"] = *c.alpha;
  if (c.command == "robust" || c.command == "sample") cfg["mode"] = c.mode;
  if (c.command == "verify") {
    cfg["suite"] = c.suite;
    cfg["n"] = c.n;
  }
  if (c.command == "figures") {
    cfg["kind"] = c.kind;
    cfg["n"] = c.n;
  }
  if (c.command == "md-sweep") {
    cfg["dims"] = c.dims;
    cfg["priors"] = c.priors;
  }
  if (c.sample > 0) cfg["sample"] = c.sample;
  cfg["format"] = c.format;
  return {{"tool", "persuasion"},
          {"version", PERSUASION_VERSION},
          {"command", c.command},
          {"config", cfg}};
}

struct CsvTable {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

std::string render_csv(const Config& c, const std::vector<CsvTable>& tables) {
  std::ostringstream os;
  os << "# " << manifest(c).dump() << "\n";
  for (std::size_t t = 0; t < tables.size(); ++t) {
    if (t > 0) os << "\n";
    if (tables.size() > 1) os << "# table " << tables[t].name << "\n";
    for (std::size_t k = 0; k < tables[t].header.size(); ++k) {
      os << (k ? "," : "") << cell(tables[t].header[k]);
    }
    os << "\n";
    for (const auto& row : tables[t].rows) {
      for (std::size_t k = 0; k < row.size(); ++k) {
        os << (k ? "," : "") << cell(row[k]);
      }
      os << "\n";
    }
  }
  return os.str();
}

CsvTable to_csv(const std::string& name, const Table& t) {
  CsvTable out{name, t.columns, {}};
  for (const auto& r : t.rows) {
    std::vector<std::string> cells;
    for (double v : r) cells.push_back(num(v));
    out.rows.push_back(std::move(cells));
  }
  return out;
}

ordered_json to_json(const Table& t) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : t.rows) rows.push_back(r);
  return {{"columns", t.columns}, {"rows", rows}};
}

void emit(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw InstanceError("out: cannot write " + c.out);
  f << text;
}

void emit_json(const Config& c, ordered_json body) {
  ordered_json doc{{"manifest", manifest(c)}};
  for (auto& [k, v] : body.items()) doc[k] = v;
  emit(c, doc.dump(2) + "\n");
}

ordered_json scheme_json(const FiniteScheme& s) {
  ordered_json atoms = ordered_json::array();
  for (const auto& a : s.atoms()) {
    const auto p = a.posterior.probs();
    atoms.push_back({{"posterior", std::vector<double>(p.begin(), p.end())},
                     {"weight", a.weight}});
  }
  return {{"atoms", atoms}};
}

CsvTable scheme_csv(const FiniteScheme& s) {
  CsvTable t{"scheme", {"weight"}, {}};
  for (std::size_t i = 0; i < s.dimension(); ++i) {
    t.header.push_back("p" + std::to_string(i));
  }
  for (const auto& a : s.atoms()) {
    std::vector<std::string> row{num(a.weight)};
    for (double v : a.posterior.probs()) row.push_back(num(v));
    t.rows.push_back(std::move(row));
  }
  return t;
}

ordered_json strategy_json(const MixedThreshold& m) {
  ordered_json atoms = ordered_json::array(), density = ordered_json::array();
  for (const auto& a : m.atoms()) {
    atoms.push_back({{"location", a.location}, {"weight", a.weight}});
  }
  for (const auto& p : m.pieces()) {
    density.push_back(
        {{"lo", p.lo},
         {"hi", p.hi},
         {"form", p.form == DensityForm::kInverse ? "c/(1-y)" : "c/(1-y)^2"},
         {"coeff", p.coeff}});
  }
  return {{"atoms", atoms}, {"density", density}};
}

CsvTable strategy_csv(const MixedThreshold& m) {
  CsvTable t{"strategy", {"part", "lo", "hi", "form", "weight"}, {}};
  for (const auto& a : m.atoms()) {
    t.rows.push_back({"atom", num(a.location), num(a.location), "", num(a.weight)});
  }
  for (const auto& p : m.pieces()) {
    t.rows.push_back({"density", num(p.lo), num(p.hi),
                      p.form == DensityForm::kInverse ? "c/(1-y)" : "c/(1-y)^2",
                      num(p.coeff)});
  }
  return t;
}

// mu_n from --alpha, or from an instance file holding "mu_n" or "prior".
double top_mass(const Config& c) {
  if (c.alpha) return *c.alpha;
  if (c.instance.empty()) throw InstanceError("alpha: give --alpha or --instance");
  const auto j = nlohmann::json::parse(read_file(c.instance), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw InstanceError("instance: malformed JSON");
  }
  if (j.contains("mu_n")) {
    if (!j["mu_n"].is_number()) throw InstanceError("mu_n: must be a number");
    return j["mu_n"].get<double>();
  }
  if (j.contains("utility")) return parse_instance(read_file(c.instance)).prior.top();
  if (!j.contains("prior") || !j["prior"].is_array()) {
    throw InstanceError("prior: missing");
  }
  std::vector<double> p;
  for (const auto& x : j["prior"]) {
    if (!x.is_number()) throw InstanceError("prior: entries must be numbers");
    p.push_back(x.get<double>());
  }
  try {
    return Prior(std::move(p)).top();
  } catch (const InstanceError& e) {
    throw InstanceError(std::string("prior: ") + e.what());
  }
}

MixedThreshold robust_strategy(const Config& c, double mu_n, double& value) {
  if (c.mode == "regret") {
    value = reg_mon_value(mu_n);
    return sender_opt(mu_n);
  }
  value = apr_mon_value(mu_n);
  return approx_sender_opt(mu_n);
}

int cmd_solve(const Config& c) {
  if (c.instance.empty()) throw InstanceError("instance: required");
  const Instance inst = parse_instance(read_file(c.instance));
  const KnapsackSolution sol = optimal_knapsack(inst.prior, inst.utility);
  const FiniteScheme s = optimal_scheme(sol, inst.prior);
  const auto order = sol.ordering.order();
  if (c.format == "csv") {
    CsvTable k{"knapsack", {"threshold_x", "optimal_utility"},
               {{num(sol.threshold_x), num(sol.optimal_utility)}}};
    emit(c, render_csv(c, {k, scheme_csv(s)}));
  } else {
    emit_json(c, {{"knapsack",
                   {{"threshold_x", sol.threshold_x},
                    {"optimal_utility", sol.optimal_utility},
                    {"ordering", std::vector<std::size_t>(order.begin(), order.end())}}},
                  {"scheme", scheme_json(s)}});
  }
  return kExitOk;
}

int cmd_robust(const Config& c) {
  const double mu_n = top_mass(c);
  double value = 0.0;
  const MixedThreshold m = robust_strategy(c, mu_n, value);
  std::vector<double> samples;
  if (c.sample > 0) samples = sample_mixed(m, c.seed, c.sample);
  if (c.format == "csv") {
    std::vector<CsvTable> tables{
        {"value", {"mode", "mu_n", "value"}, {{c.mode, num(mu_n), num(value)}}},
        strategy_csv(m)};
    if (!samples.empty()) {
      CsvTable t{"samples", {"index", "threshold"}, {}};
      for (std::size_t i = 0; i < samples.size(); ++i) {
        t.rows.push_back({std::to_string(i), num(samples[i])});
      }
      tables.push_back(std::move(t));
    }
    emit(c, render_csv(c, tables));
  } else {
    ordered_json body{{"mode", c.mode}, {"mu_n", mu_n}, {"value", value},
                      {"strategy", strategy_json(m)}};
    if (!samples.empty()) body["samples"] = samples;
    emit_json(c, body);
  }
  return kExitOk;
}

int cmd_sample(const Config& c) {
  const long count = c.sample > 0 ? c.sample : 1;
  std::optional<Instance> inst;
  if (!c.instance.empty()) {
    const auto j = nlohmann::json::parse(read_file(c.instance), nullptr, false);
    if (j.is_object() && j.contains("utility")) {
      inst = parse_instance(read_file(c.instance));
    }
  }
  const double mu_n = inst ? inst->prior.top() : top_mass(c);
  double value = 0.0;
  const MixedThreshold m = robust_strategy(c, mu_n, value);
  const auto draws = sample_mixed(m, c.seed, count);

  CsvTable t{"samples", {"index", "threshold"}, {}};
  if (inst) t.header.push_back("sender_utility");
  ordered_json rows = ordered_json::array();
  double total = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    std::vector<std::string> row{std::to_string(i), num(draws[i])};
    ordered_json r{{"threshold", draws[i]}};
    if (inst) {
      // The sender only knows that utility increases with the state index.
      const FiniteScheme s = threshold_to_finite(
          {draws[i], StateOrdering::identity(inst->prior)}, inst->prior);
      const double su = sender_utility(s, inst->utility);
      total += su;
      row.push_back(num(su));
      r["sender_utility"] = su;
    }
    t.rows.push_back(std::move(row));
    rows.push_back(r);
  }
  if (c.format == "csv") {
    emit(c, render_csv(c, {t}));
    return kExitOk;
  }
  ordered_json body{{"mode", c.mode}, {"mu_n", mu_n}, {"samples", rows}};
  if (inst) {
    const auto id = StateOrdering::identity(inst->prior);
    body["mean_sender_utility"] = total / static_cast<double>(draws.size());
    body["expected_sender_utility"] =
        mixed_sender_utility(m, id, inst->prior, inst->utility);
    body["optimal_utility"] =
        optimal_knapsack(inst->prior, inst->utility).optimal_utility;
  }
  emit_json(c, body);
  return kExitOk;
}

int cmd_verify(const Config& c) {
  VerifyOptions o;
  o.seed = c.seed;
  o.n = c.n;
  if (c.alpha) o.alphas = {*c.alpha};
  if (c.eps) o.game_eps = *c.eps;
  std::vector<std::string> suites;
  if (c.suite == "all") {
    if (c.grid) throw InstanceError("grid: not accepted with suite all");
    suites = suite_names();
  } else {
    suites = {c.suite};
    if (c.grid) {
      if (c.suite == "prop2") o.sweep_grid = *c.grid;
      else o.game_size = static_cast<std::size_t>(*c.grid);
    }
  }
  std::vector<CheckRow> rows;
  for (const auto& s : suites) {
    auto r = run_suite(s, o);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  bool all = true;
  for (const auto& r : rows) all = all && r.pass;
  if (c.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      arr.push_back({{"suite", r.suite}, {"check", r.name},
                     {"measured", r.measured}, {"expected", r.expected},
                     {"tolerance", r.tolerance}, {"pass", r.pass}});
    }
    emit_json(c, {{"rows", arr}, {"pass", all}});
  } else {
    CsvTable t{"checks",
               {"suite", "check", "measured", "expected", "tolerance", "result"},
               {}};
    for (const auto& r : rows) {
      t.rows.push_back({r.suite, r.name, num(r.measured), num(r.expected),
                        num(r.tolerance), r.pass ? "pass" : "FAIL"});
    }
    emit(c, render_csv(c, {t}));
  }
  return all ? kExitOk : kExitFailed;
}

int cmd_figures(const Config& c) {
  const int points = c.grid.value_or(101);
  std::vector<std::pair<std::string, Table>> tables;
  const bool all = c.kind == "all";
  if (all || c.kind == "regret") tables.emplace_back("regret", regret_curve(points));
  if (all || c.kind == "density") {
    tables.emplace_back("density", density_curve(c.alpha.value_or(0.25), points));
  }
  if (all || c.kind == "apr") tables.emplace_back("apr", approx_curve(points));
  if (all || c.kind == "uprime") {
    tables.emplace_back("uprime", uprime_curve(c.alpha.value_or(0.5), points));
  }
  if (all || c.kind == "thm2") tables.emplace_back("thm2", thm2_bounds(c.n));
  if (c.format == "json") {
    ordered_json body;
    for (const auto& [name, t] : tables) body[name] = to_json(t);
    emit_json(c, body);
  } else {
    std::vector<CsvTable> out;
    for (const auto& [name, t] : tables) out.push_back(to_csv(name, t));
    emit(c, render_csv(c, out));
  }
  return kExitOk;
}

int cmd_ternary(const Config& c) {
  if (c.format == "csv") {
    // One row per line and side; the summary goes in the last comment.
    std::ostringstream os;
    os << "# " << manifest(c).dump() << "\n";
    os << "d,e,vertex_assignment,corner_side,regret\n";
    const TernarySweepResult r =
        ternary_sweep(c.grid.value_or(400), [&](const TernaryLineRegret& l) {
          os << num(l.d) << ',' << num(l.e) << ',' << l.rotation << ','
             << (l.corner_side ? 1 : 0) << ',' << num(l.regret) << '\n';
        });
    os << "# sup_regret " << num(r.sup_regret) << "\n";
    emit(c, os.str());
    return kExitOk;
  }
  const TernarySweepResult r = ternary_sweep(c.grid.value_or(400));
  emit_json(c, {{"sup_regret", r.sup_regret},
                {"argmax", {{"d", r.d}, {"e", r.e}, {"vertex_assignment", r.rotation},
                            {"corner_side", r.corner_side}}},
                {"lines", r.lines}});
  return kExitOk;
}

std::vector<std::size_t> parse_dims(const std::string& s) {
  std::vector<std::size_t> dims;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(tok, &used);
      if (used != tok.size() || v <= 0) throw std::invalid_argument(tok);
      dims.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw InstanceError("dims: expected comma-separated positive integers");
    }
  }
  if (dims.empty()) throw InstanceError("dims: must be non-empty");
  return dims;
}

int cmd_md_sweep(const Config& c) {
  if (!c.instance.empty()) {
    const GridInstance g = parse_grid_instance(read_file(c.instance));
    if (!is_monotone(g.dims(), g.utility().values())) {
      throw InstanceError("utility: must be monotone in every dimension");
    }
    const MdRegretCheck r = md_regret_bound_check(g);
    if (c.format == "csv") {
      emit(c, render_csv(c, {{"check", {"regret", "bound", "holds"},
                              {{num(r.regret), num(r.bound), r.holds ? "1" : "0"}}}}));
    } else {
      emit_json(c, {{"regret", r.regret}, {"bound", r.bound}, {"holds", r.holds},
                    {"scheme", scheme_json(median_knapsack_scheme(g))}});
    }
    return r.holds ? kExitOk : kExitFailed;
  }
  const auto dims = parse_dims(c.dims);
  const int utilities = c.sample > 0 ? static_cast<int>(c.sample) : 1000;
  const MdSweepResult r = md_sweep(dims, c.priors, utilities, c.seed);
  if (c.format == "csv") {
    emit(c, render_csv(c, {{"sweep", {"max_regret", "bound", "instances", "violations"},
                            {{num(r.max_regret), num(r.bound),
                              std::to_string(r.instances),
                              std::to_string(r.violations)}}}}));
  } else {
    emit_json(c, {{"max_regret", r.max_regret}, {"bound", r.bound},
                  {"instances", r.instances}, {"violations", r.violations}});
  }
  return r.violations == 0 ? kExitOk : kExitFailed;
}

int dispatch(const Config& c) {
  if (c.command == "solve") return cmd_solve(c);
  if (c.command == "robust") return cmd_robust(c);
  if (c.command == "sample") return cmd_sample(c);
  if (c.command == "verify") return cmd_verify(c);
  if (c.command == "figures") return cmd_figures(c);
  if (c.command == "ternary-sweep") return cmd_ternary(c);
  return cmd_md_sweep(c);
}

int guarded(const Config& c) {
  try {
    return dispatch(c);
  } catch (const InstanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust signaling for binary-action persuasion"};
  app.require_subcommand(1);
  Config c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
    sub->add_option("--out", c.out, "Write output to this file");
    sub->add_option("--format", c.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--timeout", c.timeout, "Seconds before giving up (exit 3)")
        ->capture_default_str();
  };
  auto alpha = [&](CLI::App* sub) {
    sub->add_option("--alpha", c.alpha, "Prior mass of the top state")
        ->check(CLI::Range(0.0, 1.0));
  };
  auto mode = [&](CLI::App* sub) {
    sub->add_option("--mode", c.mode, "regret or approx")
        ->check(CLI::IsMember({"regret", "approx"}))
        ->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "Optimal scheme for a known utility");
  solve->add_option("--instance", c.instance, "Instance JSON")->required();
  common(solve);

  auto* robust = app.add_subcommand("robust", "Optimal robust threshold strategy");
  robust->add_option("--instance", c.instance, "Instance JSON (prior or mu_n)");
  robust->add_option("--sample", c.sample, "Also draw this many thresholds");
  alpha(robust);
  mode(robust);
  common(robust);

  auto* sample = app.add_subcommand("sample", "Draw thresholds from the robust strategy");
  sample->add_option("--instance", c.instance, "Instance JSON");
  sample->add_option("--sample", c.sample, "Number of draws")->capture_default_str();
  alpha(sample);
  mode(sample);
  common(sample);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("suite", c.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(suites));
  verify->add_option("--grid", c.grid, "Game size (lemma4/5) or line grid (prop2)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--eps", c.eps, "Duality-gap target for the game suites")
      ->check(CLI::PositiveNumber);
  verify->add_option("--n", c.n, "States for the thm2 lower-bound witness")
      ->capture_default_str();
  alpha(verify);
  common(verify);

  auto* figures = app.add_subcommand("figures", "Emit curve data");
  figures->add_option("--kind", c.kind, "regret, density, apr, uprime, thm2 or all")
      ->check(CLI::IsMember({"regret", "density", "apr", "uprime", "thm2", "all"}))
      ->capture_default_str();
  figures->add_option("--n", c.n, "Largest n for the thm2 bounds")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  figures->add_option("--grid", c.grid, "Points per curve")->check(CLI::Range(2, 1000000));
  alpha(figures);
  common(figures);

  auto* ternary = app.add_subcommand("ternary-sweep", "Line sweep on the ternary simplex");
  ternary->add_option("--grid", c.grid, "Grid size per line parameter")
      ->check(CLI::Range(1, 100000));
  common(ternary);

  auto* md = app.add_subcommand("md-sweep", "Median scheme on grid instances");
  md->add_option("--instance", c.instance, "Grid instance JSON (single check)");
  md->add_option("--dims", c.dims, "Comma-separated grid shape")->capture_default_str();
  md->add_option("--priors", c.priors, "Random product priors")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  md->add_option("--sample", c.sample, "Utilities per prior (default 1000)");
  common(md);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }
  for (auto* sub : app.get_subcommands()) c.command = sub->get_name();
  if (c.format.empty()) {
    c.format = c.command == "verify" || c.command == "figures" ? "csv" : "json";
  }
  if (c.sample < 0) {
    std::cerr << "error: sample: must be nonnegative\n";
    return kExitBadInput;
  }

  // Run on a worker so a stuck suite can be abandoned at the deadline.
  std::promise<int> done;
  std::future<int> result = done.get_future();
  std::thread([&c, p = std::move(done)]() mutable { p.set_value(guarded(c)); })
      .detach();
  const auto limit = std::chrono::duration<double>(c.timeout);
  if (result.wait_for(limit) != std::future_status::ready) {
    std::cerr << "error: timed out after " << c.timeout << " s\n";
    std::cerr.flush();
    std::_Exit(kExitFailed);
  }
  return result.get();
}
