#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli.hpp"
#include "nisbound/code_io.hpp"
#include "nisbound/errors.hpp"

namespace nisbound::cli {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("config: bad value for " + key + ": '" + text + "'");
  }
  return v;
}

}  // namespace

// ---- config -------------------------------------------------------------------

HcOptimizerConfig parse_hc_config(std::string_view text, HcOptimizerConfig cfg) {
  std::map<std::string, int*> ints{{"grid_points", &cfg.grid_points},
                                   {"refine_iterations", &cfg.refine_iterations},
                                   {"refine_starts", &cfg.refine_starts}};
  std::map<std::string, double*> reals{{"exclusion", &cfg.exclusion}, {"tol", &cfg.tol},
                                       {"st_min", &cfg.st_min},       {"st_max", &cfg.st_max},
                                       {"kappa_min", &cfg.kappa_min}, {"kappa_max", &cfg.kappa_max}};
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (auto it = ints.find(key); it != ints.end()) {
      *it->second = parse_number<int>(key, value);
    } else if (auto jt = reals.find(key); jt != reals.end()) {
      *jt->second = parse_number<double>(key, value);
    } else {
      throw ParseError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  validate(cfg);
  return cfg;
}

HcOptimizerConfig load_hc_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_hc_config(ss.str());
}

// ---- bounds -------------------------------------------------------------------

nlohmann::ordered_json bounds_json(const BoundsReport& r) {
  using nlohmann::ordered_json;
  auto value = [](const BoundValue& v) {
    return ordered_json{{"value", v.value}, {"raw", v.raw}, {"source", v.source}};
  };
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["input"] = {{"a", r.a}, {"b", r.b}, {"rho", r.rho}};
  j["normalized"] = {{"a", r.normalized.a},
                     {"b", r.normalized.b},
                     {"rho", r.normalized.rho},
                     {"steps", r.normalized.record.steps()},
                     {"offset", r.normalized.record.offset},
                     {"sign", r.normalized.record.sign}};
  j["families"] = {{"upsilon1_lb", value(r.upsilon1_lb)}, {"upsilon2_lb", value(r.upsilon2_lb)},
                   {"upsilon1_ub", value(r.upsilon1_ub)}, {"upsilon2_ub", value(r.upsilon2_ub)},
                   {"mc_lb", value(r.mc_lb)},             {"mc_ub", value(r.mc_ub)},
                   {"hc_lb", value(r.hc_lb)},             {"hc_ub", value(r.hc_ub)}};
  j["upsilon_lb"] = std::max(r.upsilon1_lb.value, r.upsilon2_lb.value);
  j["upsilon_ub"] = std::min(r.upsilon1_ub.value, r.upsilon2_ub.value);
  j["combined_lb"] = value(r.combined_lb);
  j["combined_ub"] = value(r.combined_ub);
  j["interval"] = {r.combined_lb.value, r.combined_ub.value};
  j["hc"] = {{"converged", r.hc_converged}, {"wide_domain_warning", r.hc_wide_domain_warning}};
  return j;
}

void write_bounds_text(std::ostream& os, const BoundsReport& r) {
  os << "a=" << num(r.a) << " b=" << num(r.b) << " rho=" << num(r.rho)
     << " schema_version=" << kSchemaVersion << '\n';
  const struct {
    const char* name;
    const BoundValue& lb;
    const BoundValue& ub;
  } rows[] = {{"upsilon1", r.upsilon1_lb, r.upsilon1_ub},
              {"upsilon2", r.upsilon2_lb, r.upsilon2_ub},
              {"maximal_correlation", r.mc_lb, r.mc_ub},
              {"hypercontractivity", r.hc_lb, r.hc_ub},
              {"combined", r.combined_lb, r.combined_ub}};
  os << std::left << std::setw(22) << "family" << std::setw(24) << "lower" << std::setw(24)
     << "upper" << "sources\n";
  for (const auto& row : rows) {
    os << std::left << std::setw(22) << row.name << std::setw(24) << num(row.lb.value)
       << std::setw(24) << num(row.ub.value) << row.lb.source << " | " << row.ub.source << '\n';
  }
  if (!r.hc_converged) os << "warning: hypercontractivity optimizer did not converge\n";
  if (r.hc_wide_domain_warning) os << "warning: rho = 1, hypercontractivity domain not characterized\n";
}

// ---- curve --------------------------------------------------------------------

std::vector<double> default_curve_grid() {
  std::vector<double> grid;
  const double lo = std::log(0.02);
  const double hi = std::log(0.5);
  for (int i = 0; i < 50; ++i) grid.push_back(std::exp(lo + (hi - lo) * i / 49.0));
  grid.front() = 0.02;
  grid.back() = 0.5;
  for (int i = 1; i <= 5; ++i) grid.push_back(std::ldexp(1.0, -i));
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

CurveDataset build_curve(double rho, std::vector<double> grid, const HcOptimizerConfig& cfg) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("curve: rho must lie in (0, 1)");
  for (double a : grid) {
    if (!(a > 0.0 && a <= 0.5)) throw DomainError("curve: grid values must lie in (0, 1/2]");
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  CurveDataset data;
  data.rho = rho;
  for (double a : grid) {
    CurveRow row;
    row.a = a;
    const Interval mc = maximal_correlation_bounds(a, a, rho);
    row.mc_lb = mc.lb;
    row.mc_ub = mc.ub;
    const HcBounds hc = hc_bounds(a, a, rho, cfg);
    row.hc_lb = std::clamp(hc.lb, 0.0, a);
    row.hc_ub = std::clamp(hc.ub, 0.0, a);
    const Interval ours = symmetric_bounds(a, rho);
    row.ours_lb = ours.lb;
    row.ours_ub = ours.ub;
    int exponent = 0;
    if (std::frexp(a, &exponent) == 0.5) {
      const int i = 1 - exponent;  // a = 2^-i
      row.sym_subcube = construction_value(Construction::SymmetricSubcube, i, i, rho);
      row.antisym_subcube = construction_value(Construction::AntisymmetricSubcube, i, i, rho);
    }
    data.rows.push_back(row);
  }
  return data;
}

void write_curve_csv(std::ostream& os, const CurveDataset& data) {
  os << "# nisbound curve schema_version=" << kSchemaVersion << " rho=" << num(data.rho) << '\n';
  os << "a,mc_lb,mc_ub,hc_lb,hc_ub,ours_lb,ours_ub,sym_subcube,antisym_subcube\n";
  for (const CurveRow& r : data.rows) {
    os << num(r.a) << ',' << num(r.mc_lb) << ',' << num(r.mc_ub) << ',' << num(r.hc_lb) << ','
       << num(r.hc_ub) << ',' << num(r.ours_lb) << ',' << num(r.ours_ub) << ','
       << (r.sym_subcube ? num(*r.sym_subcube) : "") << ','
       << (r.antisym_subcube ? num(*r.antisym_subcube) : "") << '\n';
  }
}

// ---- oracle -------------------------------------------------------------------

nlohmann::ordered_json oracle_json(const OracleResult& r, bool with_timing) {
  using nlohmann::ordered_json;
  const bool distance = r.objective == Objective::Distance;
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = r.n;
  j["M"] = r.M;
  j["N"] = r.N;
  j["rho"] = r.rho ? ordered_json(*r.rho) : ordered_json(nullptr);
  j["objective"] = to_string(r.objective);
  j["exhaustive"] = r.exhaustive;
  const std::string suffix = distance ? "_D" : "_q";
  auto witness = [](const Witness& w) {
    return ordered_json{{"a", format_code(w.a)}, {"b", format_code(w.b)}};
  };
  if (r.max_value) {
    j["max" + suffix] = *r.max_value;
    j["max_witness"] = witness(*r.max_witness);
  }
  if (r.min_value) {
    j["min" + suffix] = *r.min_value;
    j["min_witness"] = witness(*r.min_witness);
  }
  ordered_json stats{{"pairs_evaluated", r.stats.pairs_evaluated}, {"orbits", r.stats.orbits}};
  if (with_timing) stats["wall_seconds"] = r.stats.wall_seconds;
  j["stats"] = stats;
  return j;
}

// ---- dispatcher -----------------------------------------------------------------

namespace {

struct BoundsArgs {
  double a = 0.0, b = 0.0, rho = 0.0;
  std::string format = "json";
  std::string config;
};

struct CurveArgs {
  double rho = 0.0;
  std::string grid = "default";
  std::string output;
  std::string config;
};

struct OracleArgs {
  int n = 0;
  std::uint64_t M = 0, N = 0;
  std::optional<double> rho;
  std::string objective = "collision";
  std::string mode = "exhaustive";
  std::string direction = "max";
  std::uint64_t seed = 1;
  int iters = 1000;
  int restarts = LocalSearchConfig{}.restarts;
  std::string output;
  std::string witness_prefix;
  bool timing = false;
};

struct VerifyArgs {
  std::uint64_t seed = 1;
  int trials = 100;
  std::string inject_fault;
};

HcOptimizerConfig config_from(const std::string& path) {
  return path.empty() ? HcOptimizerConfig{} : load_hc_config(path);
}

std::vector<double> parse_grid(const std::string& text) {
  if (text == "default") return default_curve_grid();
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
      throw DomainError("curve: bad grid value '" + t + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw DomainError("curve: empty grid");
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
  if (!f) throw Error("write failed: " + path);
}

int cmd_bounds(const BoundsArgs& args, std::ostream& out) {
  const BoundsReport r = combined_report(args.a, args.b, args.rho, config_from(args.config));
  if (args.format == "text") {
    write_bounds_text(out, r);
  } else {
    out << bounds_json(r).dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_curve(const CurveArgs& args, std::ostream& out) {
  const CurveDataset data = build_curve(args.rho, parse_grid(args.grid), config_from(args.config));
  std::ostringstream csv;
  write_curve_csv(csv, data);
  if (args.output.empty() || args.output == "-") {
    out << csv.str();
  } else {
    write_text_file(args.output, csv.str());
  }
  return kExitOk;
}

int cmd_oracle(const OracleArgs& args, std::ostream& out) {
  const Objective objective =
      args.objective == "distance" ? Objective::Distance : Objective::Collision;
  if (objective == Objective::Collision && !args.rho) {
    throw DomainError("oracle: --rho is required for the collision objective");
  }
  OracleResult r;
  if (args.mode == "exhaustive") {
    r = exhaustive_extremes(args.n, args.M, args.N, args.rho.value_or(0.0), objective);
  } else {
    if (objective == Objective::Distance) {
      throw DomainError("oracle: local mode supports the collision objective only");
    }
    const Direction dir = args.direction == "min" ? Direction::Min : Direction::Max;
    r = local_search(args.n, args.M, args.N, *args.rho, dir, args.seed, args.iters,
                     LocalSearchConfig{args.restarts});
  }

  const char* unit = objective == Objective::Distance ? "D" : "q";
  out << "objective=" << to_string(objective) << " mode=" << args.mode << " n=" << r.n
      << " M=" << r.M << " N=" << r.N;
  if (r.rho) out << " rho=" << num(*r.rho);
  out << '\n';
  if (r.max_value) out << "max_" << unit << ' ' << num(*r.max_value) << '\n';
  if (r.min_value) out << "min_" << unit << ' ' << num(*r.min_value) << '\n';
  out << "orbits " << r.stats.orbits << "\npairs_evaluated " << r.stats.pairs_evaluated << '\n';
  if (args.timing) out << "wall_seconds " << num(r.stats.wall_seconds) << '\n';

  if (!args.output.empty()) write_text_file(args.output, oracle_json(r, args.timing).dump(2) + "\n");
  if (!args.witness_prefix.empty()) {
    if (r.max_witness) {
      write_code_file(args.witness_prefix + "max_a.code", r.max_witness->a);
      write_code_file(args.witness_prefix + "max_b.code", r.max_witness->b);
    }
    if (r.min_witness) {
      write_code_file(args.witness_prefix + "min_a.code", r.min_witness->a);
      write_code_file(args.witness_prefix + "min_b.code", r.min_witness->b);
    }
  }
  return kExitOk;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  const VerifyReport r = run_verify(args.seed, args.trials, args.inject_fault);
  write_verify_report(out, r);
  return r.passed() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounds, exact values and extremal search for non-interactive simulation of "
               "binary sources",
               "nisbound"};
  app.require_subcommand(1);

  BoundsArgs bounds;
  auto* b = app.add_subcommand("bounds", "All bound families for one (a, b, rho)");
  b->add_option("--a", bounds.a, "P(f = 1)")->required();
  b->add_option("--b", bounds.b, "P(g = 1)")->required();
  b->add_option("--rho", bounds.rho, "source correlation")->required();
  b->add_option("--format", bounds.format)->check(CLI::IsMember({"json", "text"}));
  b->add_option("--config", bounds.config, "key=value optimizer settings");

  CurveArgs curve;
  auto* c = app.add_subcommand("curve", "Symmetric-case bound curves as CSV");
  c->add_option("--rho", curve.rho)->required();
  c->add_option("--grid", curve.grid, "'default' or comma-separated a values");
  c->add_option("--output", curve.output, "CSV path; stdout if omitted");
  c->add_option("--config", curve.config);

  OracleArgs oracle;
  double oracle_rho = 0.0;
  auto* o = app.add_subcommand("oracle", "Exhaustive or local extremal search");
  o->add_option("--n", oracle.n)->required();
  o->add_option("--M", oracle.M)->required();
  o->add_option("--N", oracle.N)->required();
  auto* rho_opt = o->add_option("--rho", oracle_rho);
  o->add_option("--objective", oracle.objective)->check(CLI::IsMember({"collision", "distance"}));
  o->add_option("--mode", oracle.mode)->check(CLI::IsMember({"exhaustive", "local"}));
  o->add_option("--direction", oracle.direction, "local mode only")
      ->check(CLI::IsMember({"max", "min"}));
  o->add_option("--seed", oracle.seed);
  o->add_option("--iters", oracle.iters);
  o->add_option("--restarts", oracle.restarts);
  o->add_option("--output", oracle.output, "JSON result path");
  o->add_option("--witness-prefix", oracle.witness_prefix, "write witness code files");
  o->add_flag("--timing", oracle.timing, "include wall time (non-deterministic)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Identity suite on random codes");
  v->add_option("--seed", verify.seed);
  v->add_option("--trials", verify.trials, "instances per blocklength");
  v->add_option("--inject-fault", verify.inject_fault, "perturb one identity family (testing)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*b) return cmd_bounds(bounds, out);
    if (*c) return cmd_curve(curve, out);
    if (*o) {
      if (rho_opt->count() > 0) oracle.rho = oracle_rho;
      return cmd_oracle(oracle, out);
    }
    return cmd_verify(verify, out);
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << " (try --mode local)\n";
    return kExitBudget;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace nisbound::cli
