#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>

#include "potentia/brownian.hpp"

using namespace potentia;

namespace {
const OccupationFunctional unit_f = [](ComplexPoint) { return 1.0; };
const OccupationFunctional half_disk_f = [](ComplexPoint p) {
  return p.re * p.re + p.im * p.im < 0.25 ? 1.0 : 0.0;
};
}  // namespace

TEST_CASE("MCConfig invariants") {
  REQUIRE_THROWS_AS(MCConfig(500, 1e-3, 1, DiskPoint(0.0, 0.0)),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(MCConfig(2000, 2e-3, 1, DiskPoint(0.0, 0.0)),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(MCConfig(2000, 0.0, 1, DiskPoint(0.0, 0.0)),
                    std::invalid_argument);
  REQUIRE_NOTHROW(MCConfig(1000, 1e-3, 1, DiskPoint(0.5, 0.0)));
}

TEST_CASE("single path simulation") {
  MCConfig cfg(1000, 1e-3, 424242, DiskPoint(0.0, 0.0));

  SECTION("occupation of the constant 1 is exactly the exit time") {
    for (long i : {0L, 7L, 99L}) {
      auto path = simulate_exit_path(cfg, i, {unit_f});
      REQUIRE(path.occupations[0] == path.exit_time);
      REQUIRE(path.exit_time == static_cast<double>(path.steps) * cfg.step_size);
    }
  }
  SECTION("same (seed, path_index) gives the identical path") {
    auto a = simulate_exit_path(cfg, 13, {unit_f, half_disk_f});
    auto b = simulate_exit_path(cfg, 13, {unit_f, half_disk_f});
    REQUIRE(a.exit_time == b.exit_time);
    REQUIRE(a.steps == b.steps);
    REQUIRE(a.occupations == b.occupations);
    auto c = simulate_exit_path(cfg, 14, {unit_f});
    REQUIRE(a.steps != c.steps);  // different index, different path
  }
  SECTION("starting almost on the boundary exits almost immediately") {
    MCConfig near_b(1000, 1e-4, 7, DiskPoint(0.999, 0.0));
    std::vector<double> exits;
    for (long i = 0; i < 201; ++i)
      exits.push_back(simulate_exit_path(near_b, i, {}).exit_time);
    std::sort(exits.begin(), exits.end());
    REQUIRE(exits[100] < 0.01);  // median
  }
  SECTION("step cap aborts with diagnostics") {
    MCConfig capped(1000, 1e-4, 11, DiskPoint(0.0, 0.0));
    capped.max_steps_per_path = 10;
    REQUIRE_THROWS_AS(simulate_exit_path(capped, 0, {unit_f}), step_cap_error);
    try {
      occupation_estimates(capped, {unit_f});
      FAIL("expected step_cap_error");
    } catch (const step_cap_error& e) {
      REQUIRE(e.steps == 10);
      REQUIRE(e.partial_estimates.size() == 1);
      REQUIRE(e.partial_estimates[0].path_count < capped.path_count);
    }
  }
}

TEST_CASE("occupation estimates") {
  SECTION("zero functional has zero mean and spread") {
    MCConfig cfg(1000, 1e-3, 5, DiskPoint(0.0, 0.0));
    auto est = occupation_estimate(cfg, [](ComplexPoint) { return 0.0; });
    REQUIRE(est.mean == 0.0);
    REQUIRE(est.std_error == 0.0);
    REQUIRE(est.path_count == 1000);
  }
  SECTION("mean exit time from the center approaches 1/2") {
    MCConfig cfg(4000, 1e-3, 20240814, DiskPoint(0.0, 0.0));
    auto est = occupation_estimate(cfg, unit_f);
    // discrete monitoring detects the exit late: expect a small upward bias
    REQUIRE(std::abs(est.mean - 0.5) < 0.05 * 0.5 + 3.0 * est.std_error);
    REQUIRE(est.mean > 0.49);
  }
  SECTION("bit-identical reruns, independent of the worker count") {
    MCConfig cfg(2000, 1e-3, 99, DiskPoint(0.3, 0.0));
    setenv("POTENTIA_THREADS", "1", 1);
    auto a = occupation_estimates(cfg, {unit_f, half_disk_f});
    setenv("POTENTIA_THREADS", "2", 1);
    auto b = occupation_estimates(cfg, {unit_f, half_disk_f});
    unsetenv("POTENTIA_THREADS");
    auto c = occupation_estimates(cfg, {unit_f, half_disk_f});
    for (std::size_t j = 0; j < 2; ++j) {
      REQUIRE(a[j].mean == b[j].mean);
      REQUIRE(a[j].std_error == b[j].std_error);
      REQUIRE(a[j].mean == c[j].mean);
    }
  }
  SECTION("doubling the path count shrinks the standard error like sqrt(2)") {
    MCConfig half(2000, 1e-3, 31, DiskPoint(0.0, 0.0));
    MCConfig full(4000, 1e-3, 31, DiskPoint(0.0, 0.0));
    auto a = occupation_estimate(half, unit_f);
    auto b = occupation_estimate(full, unit_f);
    double shrink = a.std_error / b.std_error;
    REQUIRE(shrink > std::sqrt(2.0) * 0.8);
    REQUIRE(shrink < std::sqrt(2.0) * 1.2);
  }
}

TEST_CASE("kernel area integrals against analytic values") {
  SECTION("int G(0, z) dA = pi/2") {
    double v = disk_greens_area_integral(DiskPoint(0.0, 0.0), unit_f);
    REQUIRE(std::abs(v - pi / 2.0) < 1e-6);
  }
  SECTION("int over |z| < 1/2 of G(0, z) dA = 2 pi (ln2/8 + 1/16)") {
    double truth = two_pi * (std::log(2.0) / 8.0 + 1.0 / 16.0);
    double v = disk_greens_area_integral(DiskPoint(0.0, 0.0), half_disk_f);
    REQUIRE(std::abs(v - truth) < 1e-6);
  }
  SECTION("int G(a, z) dA = pi (1 - |a|^2) / 2 off center") {
    for (double am : {0.3, 0.7}) {
      double truth = pi * (1.0 - am * am) / 2.0;
      double v = disk_greens_area_integral(DiskPoint(am, 0.0), unit_f, 512, 2048);
      REQUIRE(std::abs(v - truth) < 1e-5);
    }
  }
  SECTION("int G(0, z) |z|^2 dA = pi/8") {
    double v = disk_greens_area_integral(
        DiskPoint(0.0, 0.0),
        [](ComplexPoint p) { return p.re * p.re + p.im * p.im; });
    REQUIRE(std::abs(v - pi / 8.0) < 1e-6);
  }
}

TEST_CASE("normalization constant fit") {
  SECTION("kappa lands near 1/pi from the center") {
    MCConfig cfg(4000, 1e-3, 4242, DiskPoint(0.0, 0.0));
    auto fit = greens_constant_fit(cfg, default_test_functions());
    REQUIRE(std::abs(fit.kappa - 1.0 / pi) < 0.10 / pi);
    REQUIRE_FALSE(fit.conditioning_warning);
  }
  SECTION("kappa does not depend on the base point") {
    MCConfig cfg(4000, 1e-3, 4242, DiskPoint(0.3, 0.0));
    auto fit = greens_constant_fit(cfg, default_test_functions());
    REQUIRE(std::abs(fit.kappa - 1.0 / pi) < 0.10 / pi);
  }
  SECTION("scaling every test function leaves kappa unchanged") {
    MCConfig cfg(2000, 1e-3, 777, DiskPoint(0.0, 0.0));
    auto base = default_test_functions();
    std::vector<TestFunctionSpec> scaled;
    for (auto& t : base) {
      auto f = t.f;
      scaled.push_back({t.name + "x10", [f](ComplexPoint p) { return 10.0 * f(p); }});
    }
    auto a = greens_constant_fit(cfg, base);
    auto b = greens_constant_fit(cfg, scaled);
    REQUIRE(b.kappa == Catch::Approx(a.kappa).epsilon(1e-10));
  }
  SECTION("nearly dependent test functions raise the conditioning flag") {
    std::vector<TestFunctionSpec> bad{
        {"unit", unit_f},
        {"unit2", [](ComplexPoint p) { return 2.0 * unit_f(p); }},
        {"rsq", [](ComplexPoint p) { return p.re * p.re + p.im * p.im; }},
    };
    MCConfig cfg(1000, 1e-3, 3, DiskPoint(0.0, 0.0));
    auto fit = greens_constant_fit(cfg, bad);
    REQUIRE(fit.conditioning_warning);
  }
  SECTION("fewer than three test functions is an error") {
    MCConfig cfg(1000, 1e-3, 3, DiskPoint(0.0, 0.0));
    REQUIRE_THROWS_AS(greens_constant_fit(cfg, {{"unit", unit_f}}),
                      std::invalid_argument);
  }
}
