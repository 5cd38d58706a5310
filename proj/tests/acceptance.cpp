// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails, unless the set of failures is exactly the one named
// with --expect-fail (comma-separated ids). An expected failure that passes is
// also an error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "svfie/svfie.hpp"

using namespace svfie;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass;
  std::string detail;
};

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

Verdict walsh_identities() {
  for (std::size_t m = 1; m <= 256; m *= 2) {
    const Resolution res(m);
    const auto tw = walsh_matrix(res);
    const auto& T = tw.entries();
    if (T != T.transpose()) return {false, "T_W not symmetric at m=" + std::to_string(m)};
    const auto sq = T * T;
    if (sq != decltype(sq)::Identity(idx(m), idx(m)) * static_cast<int>(m))
      return {false, "T_W^2 != mI at m=" + std::to_string(m)};
    // Phi(t) = (1/m) T_W W(t) evaluated on every cell.
    const Eigen::MatrixXd Tr = tw.as_real();
    for (std::size_t j = 0; j < m; ++j) {
      Eigen::VectorXd w(idx(m));
      for (std::size_t n = 0; n < m; ++n) w[idx(n)] = walsh_eval(n, res.midpoint(j));
      const Eigen::VectorXd phi = Tr * w / static_cast<double>(m);
      if (phi != Eigen::VectorXd::Unit(idx(m), idx(j)))
        return {false, "Phi identity fails at m=" + std::to_string(m)};
    }
  }
  return {true, "m = 1..256"};
}

Verdict stochastic_oracle() {
  double worst = 0.0;
  for (std::size_t m : {8u, 32u}) {
    const Resolution res(m);
    const SeedPlan plan{2};
    for (std::size_t p = 0; p < 100; ++p) {
      const auto path = brownian_path(derive_seed(plan, p), res);
      const auto& PS = stochastic_matrix(path).PS;
      for (std::size_t i = 0; i < m; ++i) {
        std::vector<double> indicator(m, 0.0);
        indicator[i] = 1.0;
        for (std::size_t j = 0; j < m; ++j) {
          if (j == i) continue;
          worst = std::max(worst, std::abs(PS(idx(i), idx(j)) -
                                           ito_oracle(indicator, path, res.cell_start(j))));
        }
        if (PS(idx(i), idx(i)) != path.at_midpoint(i) - path.at_cell_start(i))
          return {false, "diagonal mismatch"};
      }
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max off-diagonal deviation %.3g", worst);
  return {worst <= 1e-12, buf};
}

Verdict constant_problem() {
  const auto& p = registry_get("const_fredholm");
  double worst = 0.0;
  for (std::size_t m : {2u, 16u, 64u}) {
    const Resolution res(m);
    const auto r = solve(assemble(p, res, BrownianPath::zero(res)));
    for (std::size_t j = 0; j < m; ++j) worst = std::max(worst, std::abs(r(res.midpoint(j)) - 2.0));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max error %.3g", worst);
  return {worst <= 1e-10, buf};
}

Verdict deterministic_convergence() {
  std::string detail;
  bool ok = true;
  for (const char* name : {"example1_det", "example2_det"}) {
    const auto& p = registry_get(name);
    std::vector<ConvergencePoint> pts;
    for (std::size_t m = 8; m <= 128; m *= 2) {
      const Resolution res(m);
      pts.push_back({m, l2_error(solve(assemble(p, res, BrownianPath::zero(res))), p.exact_deterministic).l2_error});
    }
    const double rate = convergence_rate(pts);
    ok = ok && rate >= 0.7 && rate <= 1.3;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s rate %.4f ", name, rate);
    detail += buf;
  }
  return {ok, detail};
}

Verdict method_equivalence() {
  double worst = 0.0;
  for (const auto& name : ProblemRegistry::builtin().names()) {
    for (std::size_t m : {8u, 32u}) {
      const Resolution res(m);
      const auto disc = discretize(registry_get(name), res);
      for (std::uint64_t s = 0; s < 10; ++s) {
        const auto path = brownian_path(derive_seed(SeedPlan{11}, s), res);
        const auto w = solve_path(disc, path, Method::Walsh);
        const auto b = solve_path(disc, path, Method::BlockPulse);
        for (std::size_t j = 0; j < m; ++j)
          worst = std::max(worst, std::abs(w(res.midpoint(j)) - b(res.midpoint(j))));
      }
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max |wfm - bpf| %.3g", worst);
  return {worst <= 1e-9, buf};
}

Verdict assembly_identity() {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (const auto& name : ProblemRegistry::builtin().names()) {
    for (std::size_t m : {4u, 16u}) {
      const Resolution res(m);
      const auto path = brownian_path(derive_seed(SeedPlan{6}, m), res);
      const auto disc = discretize(registry_get(name), res);
      const auto sys = assemble(disc, path);
      const Eigen::MatrixXd PS = stochastic_matrix(path).PS;
      for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd X(idx(m));
        for (auto& x : X) x = g(rng);
        const Eigen::VectorXd lit =
            oracle::literal_operator(disc.K.values, disc.K1.values, disc.K2.values, disc.P.P, PS, X);
        worst = std::max(worst, (sys.A * X - lit).lpNorm<Eigen::Infinity>());
      }
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max deviation %.3g", worst);
  return {worst <= 1e-12, buf};
}

Verdict ensemble() {
  const auto s = monte_carlo(registry_get("example2"), Resolution(64), 1000, SeedPlan{0});
  bool mean_ok = true, std_ok = true;
  double worst_mean = 0.0, worst_std = 0.0;
  for (std::size_t q = 0; q < s.probes.size(); ++q) {
    const double dm = std::abs(s.mean[q] - std::cos(s.probes[q]));
    worst_mean = std::max(worst_mean, dm);
    worst_std = std::max(worst_std, s.stddev[q]);
    mean_ok = mean_ok && dm <= 0.1;
    std_ok = std_ok && s.stddev[q] < 0.05;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "mean: max |mean - cos t| %.4f (%s); std: max %.4f (%s)", worst_mean,
                mean_ok ? "ok" : "FAIL", worst_std, std_ok ? "ok" : "FAIL");
  return {mean_ok && std_ok, buf};
}

Verdict brownian_generator() {
  const Resolution res(16);
  const SeedPlan plan{8};
  constexpr int n = 10000;
  auto run = [&] {
    std::vector<double> b1(n);
    for (int p = 0; p < n; ++p) b1[static_cast<std::size_t>(p)] = brownian_path(derive_seed(plan, p), res).values().back();
    return b1;
  };
  const auto a = run();
  const bool identical = a == run();
  double mean = 0.0;
  for (double x : a) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : a) var += (x - mean) * (x - mean);
  var /= n - 1;
  char buf[96];
  std::snprintf(buf, sizeof buf, "Var B(1) = %.4f, reruns %s", var, identical ? "identical" : "differ");
  return {identical && var >= 0.94 && var <= 1.06, buf};
}

Verdict gronwall() {
  bool ok = true;
  RegularityConstants only_c;
  only_c.C = 1.0;
  const auto a = gronwall_bound(only_c, 0.0, 1.0, 0.5);
  ok = ok && std::abs(a.R1 - 1.75) <= 1e-12 && a.R2 == 0.0 && std::abs(a.bound - 1.75) <= 1e-12;

  RegularityConstants kernels;
  kernels.rho = kernels.rho1 = kernels.rho2 = 1.0;
  const auto b = gronwall_bound(kernels, 0.0, 1.0, 0.25);
  ok = ok && b.R1 == 0.0 && std::abs(b.R2 - 42.0) <= 1e-12;

  const RegularityConstants ones{1, 1, 1, 1, 1, 1, 1, 1};
  const auto c = gronwall_bound(ones, 0.0, 1.0, 0.25);
  ok = ok && std::abs(c.R1 - 7.0 * (1.0 / 16 + 6.0 / 8)) <= 1e-12;

  for (double C : {1.0, 2.5, 0.3}) {
    RegularityConstants rc;
    rc.C = C;
    for (double h : {1.0, 0.5, 0.125, 1.0 / 64})
      ok = ok && gronwall_bound(rc, 0.0, 1.0, h / 2).R1 == gronwall_bound(rc, 0.0, 1.0, h).R1 / 4;
  }
  return {ok, "hand cases and h/2 scaling"};
}

Verdict cli_determinism() {
  auto invoke = [](std::vector<std::string> args) {
    args.insert(args.begin(), "svfie");
    std::vector<const char*> argv;
    for (const auto& s : args) argv.push_back(s.c_str());
    std::ostringstream out, err;
    const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::make_pair(code, out.str());
  };
  const std::vector<std::vector<std::string>> runs{
      {"compare", "--problem", "example1", "--m", "32", "--seed", "7"},
      {"compare", "--problem", "example2", "--m", "16", "--seed", "7", "--format", "json"},
      {"mc", "--problem", "example2", "--m", "32", "--paths", "200", "--seed", "7"},
      {"mc", "--problem", "example1", "--m", "16", "--paths", "100", "--seed", "7", "--format", "json"},
  };
  for (const auto& r : runs) {
    const auto a = invoke(r), b = invoke(r);
    if (a.first != 0 || a.second.empty() || a != b) return {false, r[0] + " output differs"};
  }
  return {true, "compare and mc byte-identical"};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0: no runtime requirement
  std::function<Verdict()> check;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expect-fail" && i + 1 < argc) {
      std::istringstream ids(argv[++i]);
      for (std::string id; std::getline(ids, id, ',');) expected.insert(std::stoi(id));
    } else {
      std::fprintf(stderr, "usage: %s [--expect-fail ID[,ID...]]\n", argv[0]);
      return 2;
    }
  }
  const std::vector<Criterion> criteria{
      {1, "algebraic identities", 1.0, walsh_identities},
      {2, "operational-matrix oracle", 5.0, stochastic_oracle},
      {3, "exact constant problem", 0.0, constant_problem},
      {4, "deterministic convergence", 30.0, deterministic_convergence},
      {5, "method equivalence", 0.0, method_equivalence},
      {6, "assembly identity", 0.0, assembly_identity},
      {7, "stochastic ensemble", 60.0, ensemble},
      {8, "brownian generator", 0.0, brownian_generator},
      {9, "gronwall calculator", 0.0, gronwall},
      {10, "cli determinism", 0.0, cli_determinism},
  };
  int failed = 0;
  std::set<int> failures;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::string timing;
    if (c.budget_s > 0) {
      char buf[64];
      std::snprintf(buf, sizeof buf, " [%.2fs / %.0fs]", secs, c.budget_s);
      timing = buf;
      if (secs >= c.budget_s) {
        v.pass = false;
        v.detail += "; over time budget";
      }
    }
    std::printf("%-4s %2d %-26s %s%s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
    if (!v.pass) {
      ++failed;
      failures.insert(c.id);
    }
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  if (!expected.empty()) {
    std::printf("expected failures:");
    for (int id : expected) std::printf(" %d", id);
    std::printf(" -> %s\n", failures == expected ? "matched" : "MISMATCH");
  }
  return failures == expected ? 0 : 1;
}
