#pragma once

// Monte Carlo occupation times of planar Brownian motion killed at the exit
// from the unit disk.  The generator convention is (1/2) Laplacian, i.e.
// increments are centered Gaussians with variance step_size per coordinate.
//
// Expected occupation of a functional f is an area integral of f against
// the disk kernel up to a normalization constant; the constant is measured
// by least squares over a family of test functions rather than asserted
// (it is 1/pi for this generator convention).
//
// Reproducibility: every path derives its own engine from
// (master seed, path_index), results are stored per path and reduced in
// path order, so outputs are identical for any thread count.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "complex_plane.hpp"
#include "greens.hpp"
#include "parallel.hpp"

namespace potentia {

/// Euler discretization parameters of the killed Brownian motion.
struct MCConfig {
  long path_count;
  double step_size;
  std::uint64_t seed;
  DiskPoint start;
  long max_steps_per_path = 100000000;  // hard cap; exceeding it aborts

  MCConfig(long paths, double dt, std::uint64_t seed_, DiskPoint start_)
      : path_count(paths), step_size(dt), seed(seed_), start(start_) {
    if (path_count < 1000)
      throw std::invalid_argument("MCConfig: path_count must be >= 1000");
    if (!(dt > 0.0 && dt <= 1e-3))
      throw std::invalid_argument("MCConfig: step_size must lie in (0, 1e-3]");
  }
};

/// Sample mean and standard error of an occupation functional.
struct OccupationEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(path_count)
  long path_count = 0;
  double step_size = 0.0;
};

using OccupationFunctional = std::function<double(ComplexPoint)>;

struct TestFunctionSpec {
  std::string name;
  OccupationFunctional f;
};

/// A path hit the step cap before exiting; carries whatever statistics were
/// complete (in path order) when the abort was detected.
class step_cap_error : public std::runtime_error {
 public:
  step_cap_error(long path_index, long steps,
                 std::vector<OccupationEstimate> partial)
      : std::runtime_error("simulate_exit_path: path " + std::to_string(path_index) +
                           " exceeded the step cap (" + std::to_string(steps) +
                           " steps) before exiting"),
        path_index(path_index),
        steps(steps),
        partial_estimates(std::move(partial)) {}

  long path_index;
  long steps;
  std::vector<OccupationEstimate> partial_estimates;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t path_seed(std::uint64_t master, long path_index) {
  std::uint64_t s = master ^ (0x9E3779B97F4A7C15ull *
                              static_cast<std::uint64_t>(path_index + 1));
  splitmix64(s);
  return splitmix64(s);
}

/// Box-Muller pairs from explicit 53-bit uniforms; identical across standard
/// libraries for a given engine stream.
struct GaussianPairSource {
  std::mt19937_64 engine;

  explicit GaussianPairSource(std::uint64_t seed) : engine(seed) {}

  std::pair<double, double> next() {
    double u1 = (static_cast<double>(engine() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
    double u2 = static_cast<double>(engine() >> 11) * 0x1.0p-53;          // [0,1)
    double rad = std::sqrt(-2.0 * std::log(u1));
    return {rad * std::cos(two_pi * u2), rad * std::sin(two_pi * u2)};
  }
};

}  // namespace detail

/// One Euler path: independent Gaussian increments with variance step_size
/// per coordinate, killed at the first step with |B| >= 1.  Occupation
/// accumulates f at the position occupied during each step (so f = 1 yields
/// exactly the exit time).  Deterministic in (config.seed, path_index).
struct PathResult {
  double exit_time = 0.0;
  std::vector<double> occupations;
  long steps = 0;
};

inline PathResult simulate_exit_path(const MCConfig& config, long path_index,
                                     const std::vector<OccupationFunctional>& fs) {
  detail::GaussianPairSource rng(detail::path_seed(config.seed, path_index));
  double x = config.start.value.re, y = config.start.value.im;
  const double sq = std::sqrt(config.step_size);
  std::vector<double> acc(fs.size(), 0.0);
  long steps = 0;
  for (;;) {
    if (steps >= config.max_steps_per_path)
      throw step_cap_error(path_index, steps, {});
    for (std::size_t j = 0; j < fs.size(); ++j)
      acc[j] += fs[j](ComplexPoint(x, y));
    auto [g1, g2] = rng.next();
    x += sq * g1;
    y += sq * g2;
    ++steps;
    if (x * x + y * y >= 1.0) break;
  }
  PathResult res;
  res.steps = steps;
  res.exit_time = static_cast<double>(steps) * config.step_size;
  res.occupations.resize(fs.size());
  for (std::size_t j = 0; j < fs.size(); ++j)
    res.occupations[j] = acc[j] * config.step_size;
  return res;
}

/// Means and standard errors of several occupation functionals over one
/// shared path ensemble.
inline std::vector<OccupationEstimate> occupation_estimates(
    const MCConfig& config, const std::vector<OccupationFunctional>& fs) {
  const std::size_t n = static_cast<std::size_t>(config.path_count);
  const std::size_t k = fs.size();
  std::vector<double> samples(n * k, 0.0);
  std::vector<long> capped(n, -1);

  parallel_chunks(n, 256, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      try {
        auto path = simulate_exit_path(config, static_cast<long>(i), fs);
        for (std::size_t j = 0; j < k; ++j) samples[i * k + j] = path.occupations[j];
      } catch (const step_cap_error& err) {
        capped[i] = err.steps;
      }
    }
  });

  auto reduce = [&](std::size_t upto) {
    std::vector<OccupationEstimate> out(k);
    for (std::size_t j = 0; j < k; ++j) {
      KahanSum sum;
      for (std::size_t i = 0; i < upto; ++i) sum.add(samples[i * k + j]);
      double mean = upto > 0 ? sum.total() / static_cast<double>(upto) : 0.0;
      KahanSum sq;
      for (std::size_t i = 0; i < upto; ++i) {
        double d = samples[i * k + j] - mean;
        sq.add(d * d);
      }
      double sd = upto > 1 ? std::sqrt(sq.total() / static_cast<double>(upto - 1))
                           : 0.0;
      out[j] = {mean, sd / std::sqrt(static_cast<double>(upto > 0 ? upto : 1)),
                static_cast<long>(upto), config.step_size};
    }
    return out;
  };

  for (std::size_t i = 0; i < n; ++i)
    if (capped[i] >= 0) throw step_cap_error(static_cast<long>(i), capped[i], reduce(i));
  return reduce(n);
}

inline OccupationEstimate occupation_estimate(const MCConfig& config,
                                              const OccupationFunctional& f) {
  return occupation_estimates(config, {f})[0];
}

// ---------------------------------------------------------------------------
// Area integrals against the disk kernel and the normalization fit
// ---------------------------------------------------------------------------

/// int_D f(z) dA(z) by composite Gauss-Legendre (radial) x trapezoid
/// (angular) in polar coordinates.
inline double disk_area_integral(const OccupationFunctional& f,
                                 int radial_panels = 256, int angular_nodes = 1024) {
  static const double gl_x[4] = {-0.8611363115940526, -0.3399810435848563,
                                 0.3399810435848563, 0.8611363115940526};
  static const double gl_w[4] = {0.3478548451374538, 0.6521451548625461,
                                 0.6521451548625461, 0.3478548451374538};
  KahanSum total;
  for (int p = 0; p < radial_panels; ++p) {
    double r0 = static_cast<double>(p) / radial_panels;
    double r1 = static_cast<double>(p + 1) / radial_panels;
    double mid = 0.5 * (r0 + r1), half = 0.5 * (r1 - r0);
    for (int g = 0; g < 4; ++g) {
      double r = mid + half * gl_x[g];
      KahanSum ring;
      for (int a = 0; a < angular_nodes; ++a) {
        double theta = two_pi * static_cast<double>(a) / angular_nodes;
        ring.add(f(ComplexPoint(r * std::cos(theta), r * std::sin(theta))));
      }
      total.add(gl_w[g] * half * r * ring.total() * (two_pi / angular_nodes));
    }
  }
  return total.total();
}

/// int_D G(a, z) f(z) dA(z) with the closed-form disk kernel.
inline double disk_greens_area_integral(DiskPoint a, const OccupationFunctional& f,
                                        int radial_panels = 256,
                                        int angular_nodes = 1024) {
  Complex av = a.c();
  auto weighted = [&](ComplexPoint p) {
    Complex z = p.value();
    if (std::abs(z - av) < 1e-13) return 0.0;  // measure-zero collision
    return std::log(std::abs((1.0 - std::conj(av) * z) / (av - z))) * f(p);
  };
  return disk_area_integral(weighted, radial_panels, angular_nodes);
}

/// Occupation-vs-kernel normalization fit.  kappa minimizes
/// sum_f (mc_mean_f - kappa * I_f)^2 with I_f the kernel area integrals;
/// the expected value is 1/pi for the (1/2) Laplacian convention.
struct GreensFit {
  double kappa = 0.0;
  double residual_norm = 0.0;
  bool conditioning_warning = false;
  std::vector<std::string> names;
  std::vector<OccupationEstimate> estimates;
  std::vector<double> area_integrals;
};

/// Bounded, pairwise independent defaults: the constant 1, the indicator of
/// the half-radius disk, and the radial moment |z|^2.
inline std::vector<TestFunctionSpec> default_test_functions() {
  return {
      {"unit", [](ComplexPoint) { return 1.0; }},
      {"disk:0.5",
       [](ComplexPoint p) { return p.re * p.re + p.im * p.im < 0.25 ? 1.0 : 0.0; }},
      {"rsq", [](ComplexPoint p) { return p.re * p.re + p.im * p.im; }},
  };
}

inline GreensFit greens_constant_fit(const MCConfig& config,
                                     const std::vector<TestFunctionSpec>& fns) {
  if (fns.size() < 3)
    throw std::invalid_argument(
        "greens_constant_fit: need at least 3 test functions");
  std::vector<OccupationFunctional> fs;
  for (const auto& t : fns) fs.push_back(t.f);

  GreensFit fit;
  fit.estimates = occupation_estimates(config, fs);
  for (const auto& t : fns) {
    fit.names.push_back(t.name);
    fit.area_integrals.push_back(disk_greens_area_integral(config.start, t.f));
  }

  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < fns.size(); ++j) {
    num += fit.estimates[j].mean * fit.area_integrals[j];
    den += fit.area_integrals[j] * fit.area_integrals[j];
  }
  if (den == 0.0)
    throw std::domain_error("greens_constant_fit: degenerate test functions");
  fit.kappa = num / den;

  double ss = 0.0;
  for (std::size_t j = 0; j < fns.size(); ++j) {
    double d = fit.estimates[j].mean - fit.kappa * fit.area_integrals[j];
    ss += d * d;
  }
  fit.residual_norm = std::sqrt(ss);

  // Near-dependence warning from the normalized Gram determinant of the
  // test functions under plain area measure: det(G)/prod(G_ii) is 1 for an
  // orthogonal family and 0 for a dependent one.
  std::size_t m = fns.size();
  std::vector<double> gram(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      double v = disk_area_integral(
          [&](ComplexPoint p) { return fns[i].f(p) * fns[j].f(p); }, 64, 256);
      gram[i * m + j] = gram[j * m + i] = v;
    }
  double diag_product = 1.0;
  for (std::size_t i = 0; i < m; ++i) diag_product *= gram[i * m + i];
  std::vector<double> lu = gram;
  double det = 1.0;
  for (std::size_t c = 0; c < m && det != 0.0; ++c) {
    double piv = lu[c * m + c];
    if (std::abs(piv) < 1e-300) {
      det = 0.0;
      break;
    }
    det *= piv;
    for (std::size_t rr = c + 1; rr < m; ++rr) {
      double fac = lu[rr * m + c] / piv;
      for (std::size_t cc = c; cc < m; ++cc) lu[rr * m + cc] -= fac * lu[c * m + cc];
    }
  }
  fit.conditioning_warning =
      !(diag_product > 0.0) || !(std::abs(det) / diag_product > 1e-6);
  return fit;
}

}  // namespace potentia
