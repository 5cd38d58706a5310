#include <stdexcept>
#include <cmath>

#include <doctest.h>

#include "svfie/problems.hpp"

using namespace svfie;

TEST_CASE("builtin registry contents") {
  const auto& reg = ProblemRegistry::builtin();
  const std::vector<std::string> expected{"const_fredholm", "example1", "example1_det", "example2",
                                          "example2_det"};
  CHECK(reg.names() == expected);
  CHECK_THROWS_AS(registry_get("example3"), std::out_of_range);

  const auto& e1 = registry_get("example1");
  CHECK(e1.has_noise());
  CHECK_FALSE(e1.has_exact());
  CHECK(e1.k2(0.0, 0.0) == 1.0);
  CHECK(e1.noise_term(0.3, 2.0) == doctest::Approx(0.05));

  const auto& e2 = registry_get("example2");
  CHECK(e2.k2(0.2, 0.3) == doctest::Approx(std::sin(0.5) / 125));
  CHECK(e2.noise_term(0.3, 1.0) == doctest::Approx(std::sin(1.0) / 250));

  const auto& d2 = registry_get("example2_det");
  CHECK(d2.k2(0.4, 0.9) == 0.0);
  CHECK_FALSE(d2.has_noise());
  CHECK(d2.regularity.has_value());
}

TEST_CASE("example forcing terms") {
  // f(0) = sin 1 - 2 cos 1 for Example 1 (with the sin(1+t) reading).
  CHECK(registry_get("example1_det").f(0.0) == doctest::Approx(std::sin(1.0) - 2 * std::cos(1.0)));
  CHECK(registry_get("example2").f(0.5) ==
        doctest::Approx(2 - std::cos(1.0) - 1.5 * std::sin(1.0)));
}

TEST_CASE("exact solutions satisfy the deterministic equations") {
  CHECK(registry_get("const_fredholm").exact_deterministic(0.4) == 2.0);
  CHECK(deterministic_residual(registry_get("const_fredholm"), [](double) { return 2.0; }) <= 1e-10);
  CHECK(deterministic_residual(registry_get("example2_det"), [](double t) { return std::cos(t); },
                               64, 20) <= 1e-8);
  CHECK(deterministic_residual(registry_get("example1_det"), [](double t) { return t * t; }, 64,
                               20) <= 1e-8);
}

TEST_CASE("a wrong candidate leaves a large residual") {
  CHECK(deterministic_residual(registry_get("example2_det"), [](double t) { return std::sin(t); }) >
        1e-3);
  CHECK(deterministic_residual(registry_get("const_fredholm"), [](double) { return 1.0; }) ==
        doctest::Approx(0.5));
}

TEST_CASE("every registered exact solution passes the self-check") {
  const auto& reg = ProblemRegistry::builtin();
  for (const auto& name : reg.names()) {
    const auto& p = reg.get(name);
    if (!p.has_exact()) continue;
    CAPTURE(name);
    CHECK(deterministic_residual(p, p.exact_deterministic, 64, 20) <= 1e-8);
  }
}

TEST_CASE("problem functions are pure") {
  const auto& reg = ProblemRegistry::builtin();
  for (const auto& name : reg.names()) {
    const auto& p = reg.get(name);
    for (double t : {0.0, 0.33, 0.9}) {
      CHECK(p.f(t) == p.f(t));
      CHECK(p.k(t, 0.5) == p.k(t, 0.5));
      CHECK(p.k1(0.2, t) == p.k1(0.2, t));
      CHECK(p.k2(t, t) == p.k2(t, t));
    }
  }
}

TEST_CASE("problem validation") {
  SvfieProblem p = registry_get("const_fredholm");
  p.alpha = 0.5;
  p.beta = 0.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.beta = 1.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.alpha = 0.25;
  p.beta = 0.75;
  CHECK_NOTHROW(p.validate());
  p.k1 = nullptr;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  RegularityConstants rc;
  CHECK_NOTHROW(rc.validate());
  rc.L1 = -1.0;
  CHECK_THROWS_AS(rc.validate(), std::invalid_argument);
}

TEST_CASE("custom registry add and replace") {
  ProblemRegistry reg;
  SvfieProblem p = registry_get("const_fredholm");
  p.name = "mine";
  reg.add(p);
  CHECK(reg.contains("mine"));
  p.f = [](double) { return 3.0; };
  reg.add(p);
  CHECK(reg.get("mine").f(0.1) == 3.0);
  CHECK(reg.names().size() == 1);
}
