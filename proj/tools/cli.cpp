#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "svfie/analysis.hpp"
#include "svfie/error.hpp"
#include "svfie/stochastic.hpp"

namespace svfie::cli {

namespace {

using Json = nlohmann::ordered_json;

// Empty cells render as "" in CSV and null in JSON.
using Cell = std::variant<std::monostate, double, std::uint64_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

const char* command_name(Command c) {
  switch (c) {
    case Command::Solve: return "solve";
    case Command::MonteCarlo: return "mc";
    case Command::Converge: return "converge";
    case Command::Compare: return "compare";
    case Command::Bound: return "bound";
  }
  return "?";
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* u = std::get_if<std::uint64_t>(&c)) return std::to_string(*u);
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  return "";
}

Json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return format_number(*d);
    // Round-trip through the fixed text form so JSON and CSV agree.
    return std::strtod(format_number(*d).c_str(), nullptr);
  }
  if (const auto* u = std::get_if<std::uint64_t>(&c)) return *u;
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  return nullptr;
}

Json config_json(const RunConfig& cfg) {
  Json j;
  j["command"] = command_name(cfg.command);
  j["problem"] = cfg.problem;
  j["m"] = cfg.m;
  j["seed"] = cfg.master_seed;
  j["paths"] = cfg.n_paths;
  Json probes = Json::array();
  for (double p : cfg.probes) probes.push_back(cell_json(p));
  j["probes"] = probes;
  j["method"] = to_string(cfg.method);
  return j;
}

void write_table(const Table& table, const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == Format::Csv) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_text(row[c]);
      out << '\n';
    }
    return;
  }
  Json doc;
  doc["meta"] = Json{{"version", kVersion}, {"config", config_json(cfg)}};
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json r = Json::object();
    for (std::size_t c = 0; c < row.size(); ++c) r[table.columns[c]] = cell_json(row[c]);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

const SvfieProblem& lookup(const ProblemRegistry& registry, const std::string& name) {
  if (!registry.contains(name)) {
    std::string known;
    for (const auto& n : registry.names()) known += (known.empty() ? "" : ", ") + n;
    throw UsageError("unknown problem '" + name + "' (known: " + known + ")");
  }
  return registry.get(name);
}

Resolution single_resolution(const RunConfig& cfg) {
  if (cfg.m.size() != 1) throw UsageError("this command takes a single --m value");
  if (!is_power_of_two(cfg.m.front())) {
    throw UsageError("--m " + std::to_string(cfg.m.front()) + " is not a power of two");
  }
  return Resolution(cfg.m.front());
}

void warn_conditioning(const SolveResult& r, std::ostream& err) {
  if (r.ill_conditioned) {
    err << "warning: condition estimate " << format_number(r.condition_estimate)
        << " exceeds " << format_number(SolveResult::kIllConditioned) << '\n';
  }
}

Table run_solve(const RunConfig& cfg, const ProblemRegistry& registry, std::ostream& err) {
  const SvfieProblem& problem = lookup(registry, cfg.problem);
  const Resolution res = single_resolution(cfg);
  const BrownianPath path = brownian_path(derive_seed(SeedPlan{cfg.master_seed}, 0), res);
  const SolveResult r = solve_path(discretize(problem, res), path, cfg.method);
  warn_conditioning(r, err);

  Table t{{"kind", "t", "x"}, {}};
  for (std::size_t j = 0; j < res.m(); ++j) {
    const double tj = res.midpoint(j);
    t.rows.push_back({std::string("grid"), tj, reconstruct_solution(r, tj)});
  }
  for (double p : cfg.probes) t.rows.push_back({std::string("probe"), p, reconstruct_solution(r, p)});
  return t;
}

Table run_mc(const RunConfig& cfg, const ProblemRegistry& registry) {
  const SvfieProblem& problem = lookup(registry, cfg.problem);
  const Resolution res = single_resolution(cfg);
  if (cfg.n_paths == 0) throw UsageError("--paths must be at least 1");
  const McSummary s =
      monte_carlo(problem, res, cfg.n_paths, SeedPlan{cfg.master_seed}, cfg.probes, cfg.method);

  Table t{{"t", "mean", "std", "stderr", "n_paths", "m", "seed"}, {}};
  for (std::size_t q = 0; q < s.probes.size(); ++q) {
    t.rows.push_back({s.probes[q], s.mean[q], s.stddev[q], s.std_error[q],
                      static_cast<std::uint64_t>(s.n_paths), static_cast<std::uint64_t>(s.m),
                      s.master_seed});
  }
  return t;
}

Table run_converge(const RunConfig& cfg, const ProblemRegistry& registry, std::ostream& err) {
  const SvfieProblem& problem = lookup(registry, cfg.problem);
  if (!problem.has_exact()) {
    throw UsageError("problem '" + problem.name + "' has no exact deterministic solution");
  }
  if (cfg.m.empty()) throw UsageError("--m is required");

  for (std::size_t i = 0; i < cfg.m.size(); ++i) {
    if (!is_power_of_two(cfg.m[i])) {
      throw UsageError("--m " + std::to_string(cfg.m[i]) + " is not a power of two");
    }
    if (i > 0 && cfg.m[i] != 2 * cfg.m[i - 1]) throw UsageError("--m values must double");
  }

  Table t{{"m", "l2_error", "rate"}, {}};
  std::vector<ConvergencePoint> points;
  for (std::size_t m : cfg.m) {
    const Resolution res(m);
    const SolveResult r = solve_path(discretize(problem, res), BrownianPath::zero(res), cfg.method);
    warn_conditioning(r, err);
    const ErrorReport e = l2_error(r, problem.exact_deterministic);
    points.push_back({m, e.l2_error});
    Cell rate;
    if (points.size() >= 3) rate = convergence_rate(points);
    t.rows.push_back({static_cast<std::uint64_t>(m), e.l2_error, rate});
  }
  return t;
}

Table run_compare(const RunConfig& cfg, const ProblemRegistry& registry, std::ostream& err) {
  const SvfieProblem& problem = lookup(registry, cfg.problem);
  const Resolution res = single_resolution(cfg);
  const Discretization disc = discretize(problem, res);
  const BrownianPath path = brownian_path(derive_seed(SeedPlan{cfg.master_seed}, 0), res);
  const SolveResult wfm = solve_path(disc, path, Method::Walsh);
  const SolveResult bpf = solve_path(disc, path, Method::BlockPulse);
  warn_conditioning(wfm, err);

  double worst = 0.0;
  for (std::size_t j = 0; j < res.m(); ++j) {
    const double tj = res.midpoint(j);
    worst = std::max(worst, std::abs(reconstruct_solution(wfm, tj) - reconstruct_solution(bpf, tj)));
  }

  Table t{{"kind", "t", "wfm", "bpf", "abs_diff"}, {}};
  for (double p : cfg.probes) {
    const double a = reconstruct_solution(wfm, p), b = reconstruct_solution(bpf, p);
    t.rows.push_back({std::string("probe"), p, a, b, std::abs(a - b)});
  }
  t.rows.push_back({std::string("max"), Cell{}, Cell{}, Cell{}, worst});
  return t;
}

Table run_bound(const RunConfig& cfg, const ProblemRegistry& registry) {
  RegularityConstants rc;
  double alpha = 0.0, beta = 1.0;
  if (registry.contains(cfg.problem)) {
    const SvfieProblem& p = registry.get(cfg.problem);
    if (p.regularity) rc = *p.regularity;
    alpha = p.alpha;
    beta = p.beta;
  }
  rc.C = cfg.C.value_or(rc.C);
  rc.L = cfg.L.value_or(rc.L);
  rc.L1 = cfg.L1.value_or(rc.L1);
  rc.L2 = cfg.L2.value_or(rc.L2);
  rc.rho = cfg.rho.value_or(rc.rho);
  rc.rho1 = cfg.rho1.value_or(rc.rho1);
  rc.rho2 = cfg.rho2.value_or(rc.rho2);
  rc.sigma = cfg.sigma.value_or(rc.sigma);
  alpha = cfg.alpha.value_or(alpha);
  beta = cfg.beta.value_or(beta);
  double h = 0.0;
  if (cfg.h) {
    h = *cfg.h;
  } else {
    h = single_resolution(cfg).h();
  }

  GronwallBound b;
  try {
    b = gronwall_bound(rc, alpha, beta, h);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return Table{{"R1", "R2", "bound", "h"}, {{b.R1, b.R2, b.bound, h}}};
}

// Flags for one subcommand, bound into a RunConfig.
struct FlagSet {
  std::string m_spec;
  std::string probes_spec;
  std::string format = "csv";
  std::string method = "wfm";
  std::string out;
};

void add_common(CLI::App* sub, RunConfig& cfg, FlagSet& flags, bool stochastic) {
  sub->add_option("--problem", cfg.problem, "Registered problem name");
  sub->add_option("--m", flags.m_spec, "Resolution m (power of two); converge accepts 8..128");
  if (stochastic) {
    sub->add_option("--seed", cfg.master_seed, "Master seed");
    sub->add_option("--probes", flags.probes_spec, "Comma-separated probe times in [0,1)");
  }
  sub->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", flags.out, "Write the report to this file instead of stdout");
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::vector<std::size_t> parse_m_spec(const std::string& spec) {
  const auto parse_one = [&](std::string_view s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw UsageError("cannot parse --m value '" + std::string(s) + "'");
    }
    if (!is_power_of_two(v)) throw UsageError("--m " + std::string(s) + " is not a power of two");
    return v;
  };

  std::vector<std::size_t> out;
  if (const auto dots = spec.find(".."); dots != std::string::npos) {
    const std::size_t lo = parse_one(std::string_view(spec).substr(0, dots));
    const std::size_t hi = parse_one(std::string_view(spec).substr(dots + 2));
    if (hi < lo) throw UsageError("--m range must be increasing");
    for (std::size_t m = lo; m <= hi; m *= 2) out.push_back(m);
    return out;
  }
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_one(item));
  if (out.empty()) throw UsageError("--m is empty");
  return out;
}

std::vector<double> parse_probes(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');) {
    char* end = nullptr;
    const double t = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size()) {
      throw UsageError("cannot parse probe '" + item + "'");
    }
    if (!(t >= 0.0 && t < 1.0)) throw UsageError("probe " + item + " outside [0, 1)");
    out.push_back(t);
  }
  if (out.empty()) throw UsageError("--probes is empty");
  return out;
}

int run(const RunConfig& config, const ProblemRegistry& registry, std::ostream& out,
        std::ostream& err) {
  try {
    for (double p : config.probes) {
      if (!(p >= 0.0 && p < 1.0)) throw UsageError("probe outside [0, 1)");
    }
    Table table;
    switch (config.command) {
      case Command::Solve: table = run_solve(config, registry, err); break;
      case Command::MonteCarlo: table = run_mc(config, registry); break;
      case Command::Converge: table = run_converge(config, registry, err); break;
      case Command::Compare: table = run_compare(config, registry, err); break;
      case Command::Bound: table = run_bound(config, registry); break;
    }
    write_table(table, config, out);
    return kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SingularSystemError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const PathSolveError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    // e.g. Fredholm limits not aligned with the requested m
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
               const ProblemRegistry& registry) {
  CLI::App app{"Walsh operational-matrix solver for linear stochastic Volterra-Fredholm equations",
               "svfie"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  RunConfig cfg;
  FlagSet flags;
  std::size_t paths = cfg.n_paths;

  auto* solve = app.add_subcommand("solve", "Solve on one seeded Brownian path");
  add_common(solve, cfg, flags, true);
  solve->add_option("--method", flags.method, "wfm or bpf")->check(CLI::IsMember({"wfm", "bpf"}));

  auto* mc = app.add_subcommand("mc", "Monte Carlo ensemble statistics at the probes");
  add_common(mc, cfg, flags, true);
  mc->add_option("--paths", paths, "Number of Brownian paths");
  mc->add_option("--method", flags.method, "wfm or bpf")->check(CLI::IsMember({"wfm", "bpf"}));

  auto* converge = app.add_subcommand("converge", "L2 error and rate against the exact solution");
  add_common(converge, cfg, flags, false);

  auto* compare = app.add_subcommand("compare", "Walsh vs block-pulse solutions on one path");
  add_common(compare, cfg, flags, true);

  auto* bound = app.add_subcommand("bound", "Gronwall mean-square error bound");
  add_common(bound, cfg, flags, false);
  struct BoundFlag {
    const char* name;
    std::optional<double>* slot;
    const char* help;
  };
  const BoundFlag bound_flags[] = {
      {"--C", &cfg.C, "Lipschitz constant of f"},
      {"--L", &cfg.L, "Lipschitz constant of k"},
      {"--L1", &cfg.L1, "Lipschitz constant of k1"},
      {"--L2", &cfg.L2, "Lipschitz constant of k2"},
      {"--rho", &cfg.rho, "Bound on |k|"},
      {"--rho1", &cfg.rho1, "Bound on |k1|"},
      {"--rho2", &cfg.rho2, "Bound on |k2|"},
      {"--sigma", &cfg.sigma, "Bound on the exact solution"},
      {"--alpha", &cfg.alpha, "Fredholm lower limit"},
      {"--beta", &cfg.beta, "Fredholm upper limit"},
      {"--cell-width", &cfg.h, "Cell width h (default 1/m)"},
  };
  for (const auto& f : bound_flags) bound->add_option(f.name, *f.slot, f.help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out, help_err;
    const int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code == 0 ? kOk : kUsage;
  }

  if (solve->parsed()) cfg.command = Command::Solve;
  if (mc->parsed()) cfg.command = Command::MonteCarlo;
  if (converge->parsed()) cfg.command = Command::Converge;
  if (compare->parsed()) cfg.command = Command::Compare;
  if (bound->parsed()) {
    cfg.command = Command::Bound;
    if (bound->count("--problem") == 0) cfg.problem.clear();
  }

  try {
    cfg.n_paths = paths;
    if (!flags.m_spec.empty()) cfg.m = parse_m_spec(flags.m_spec);
    if (!flags.probes_spec.empty()) cfg.probes = parse_probes(flags.probes_spec);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  cfg.format = flags.format == "json" ? Format::Json : Format::Csv;
  cfg.method = flags.method == "bpf" ? Method::BlockPulse : Method::Walsh;

  if (flags.out.empty()) return run(cfg, registry, out, err);

  cfg.out = flags.out;
  std::ostringstream buffer;
  const int code = run(cfg, registry, buffer, err);
  if (code == kOk) {
    std::ofstream file(flags.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open '" << flags.out << "' for writing\n";
      return kUsage;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace svfie::cli
