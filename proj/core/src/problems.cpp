#include "svfie/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "svfie/quadrature.hpp"

namespace svfie {

void RegularityConstants::validate() const {
  for (double v : {C, L, L1, L2, rho, rho1, rho2, sigma}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("regularity constants must be finite and non-negative");
    }
  }
}

void SvfieProblem::validate() const {
  if (!f || !k || !k1 || !k2) {
    throw std::invalid_argument("problem '" + name + "': f, k, k1 and k2 must all be set");
  }
  if (!(alpha >= 0.0 && alpha < beta && beta <= 1.0)) {
    throw std::invalid_argument("problem '" + name + "': need 0 <= alpha < beta <= 1");
  }
  if (regularity) regularity->validate();
}

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

double zero2(double, double) { return 0.0; }

// Example 1 forcing. The printed source has "sin(s+t)" inside a function of
// t alone; sin(1+t) is the reading for which x(t) = t^2 solves the
// deterministic equation.
double example1_f(double t) {
  return t * t + std::sin(1.0 + t) - 2.0 * std::cos(1.0 + t) - 2.0 * std::sin(t) -
         7.0 * std::pow(t, 4) / 12.0;
}

double example2_f(double t) { return 2.0 - std::cos(1.0) - (1.0 + t) * std::sin(1.0); }

SvfieProblem example1(bool stochastic) {
  SvfieProblem p;
  p.name = stochastic ? "example1" : "example1_det";
  p.f = example1_f;
  p.k = [](double s, double t) { return std::cos(s + t); };
  p.k1 = [](double s, double t) { return s + t; };
  if (stochastic) {
    p.k2 = [](double s, double t) { return std::exp(-3.0 * (s + t)); };
    p.noise_term = [](double, double b) { return b / 40.0; };
  } else {
    p.k2 = zero2;
    p.exact_deterministic = [](double t) { return t * t; };
    // C bounds |f'| on [0,1] (max about 1.0272 near t = 0.546).
    p.regularity = RegularityConstants{1.03, kSqrt2, kSqrt2, 0.0, 1.0, 2.0, 0.0, 1.0};
  }
  return p;
}

SvfieProblem example2(bool stochastic) {
  SvfieProblem p;
  p.name = stochastic ? "example2" : "example2_det";
  p.f = example2_f;
  p.k = [](double s, double t) { return s + t; };
  p.k1 = [](double s, double t) { return s - t; };
  if (stochastic) {
    p.k2 = [](double s, double t) { return std::sin(s + t) / 125.0; };
    p.noise_term = [](double, double b) { return std::sin(b) / 250.0; };
  } else {
    p.k2 = zero2;
    p.exact_deterministic = [](double t) { return std::cos(t); };
    p.regularity = RegularityConstants{std::sin(1.0), kSqrt2, kSqrt2, 0.0, 2.0, 1.0, 0.0, 1.0};
  }
  return p;
}

SvfieProblem const_fredholm() {
  SvfieProblem p;
  p.name = "const_fredholm";
  p.f = [](double) { return 1.0; };
  p.k = [](double, double) { return 0.5; };
  p.k1 = zero2;
  p.k2 = zero2;
  p.exact_deterministic = [](double) { return 2.0; };
  p.regularity = RegularityConstants{0.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 2.0};
  return p;
}

}  // namespace

const ProblemRegistry& ProblemRegistry::builtin() {
  static const ProblemRegistry registry = [] {
    ProblemRegistry r;
    r.add(example1(true));
    r.add(example1(false));
    r.add(example2(true));
    r.add(example2(false));
    r.add(const_fredholm());
    return r;
  }();
  return registry;
}

void ProblemRegistry::add(SvfieProblem problem) {
  problem.validate();
  std::string key = problem.name;
  problems_.insert_or_assign(std::move(key), std::move(problem));
}

bool ProblemRegistry::contains(std::string_view name) const {
  return problems_.find(name) != problems_.end();
}

const SvfieProblem& ProblemRegistry::get(std::string_view name) const {
  const auto it = problems_.find(name);
  if (it == problems_.end()) {
    throw std::out_of_range("unknown problem '" + std::string(name) + "'");
  }
  return it->second;
}

std::vector<std::string> ProblemRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(problems_.size());
  for (const auto& [name, _] : problems_) out.push_back(name);
  return out;
}

const SvfieProblem& registry_get(std::string_view name) {
  return ProblemRegistry::builtin().get(name);
}

double deterministic_residual(const SvfieProblem& problem, const ScalarFn1& candidate,
                              std::size_t n_check, int quad_order) {
  problem.validate();
  if (n_check == 0) return 0.0;
  const GaussLegendre quad(quad_order);
  constexpr std::size_t kPanels = 16;
  double worst = 0.0;
  for (std::size_t c = 0; c < n_check; ++c) {
    const double t = (static_cast<double>(c) + 0.5) / static_cast<double>(n_check);
    const double fredholm = quad.integrate_composite(
        [&](double s) { return problem.k(s, t) * candidate(s); }, problem.alpha, problem.beta,
        kPanels);
    const double volterra = quad.integrate_composite(
        [&](double s) { return problem.k1(s, t) * candidate(s); }, 0.0, t, kPanels);
    worst = std::max(worst, std::abs(candidate(t) - problem.f(t) - fredholm - volterra));
  }
  return worst;
}

}  // namespace svfie
