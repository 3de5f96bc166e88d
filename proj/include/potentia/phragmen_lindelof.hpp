#pragma once

// Executable demonstrations around the maximum principle on unbounded
// domains: boundary sup estimation on truncated boundaries, growth-order
// fitting of ln ln+|f| along rays, a three-valued verdict engine, and
// sub-mean-value residuals of log+|f|.
//
// The verdict is a demonstrator, not a proof: boundedness follows only when
// the boundary bound is finite, the fitted growth order clears the domain
// threshold with a safety margin, and interior spot samples corroborate it.

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "complex_plane.hpp"
#include "hardy.hpp"

namespace potentia {

/// max(ln x, 0) for x >= 0; the subharmonic envelope used throughout.
inline double log_plus(double x) {
  if (std::isnan(x) || x < 0.0)
    throw std::domain_error("log_plus: x must be >= 0");
  return x > 1.0 ? std::log(x) : 0.0;
}

/// The open wedge of opening alpha, symmetric about the positive real axis,
/// vertex at 0.
struct WedgeDomain {
  double alpha = pi;

  explicit WedgeDomain(double a) : alpha(a) {
    if (!(a > 0.0 && a <= two_pi))
      throw std::invalid_argument("WedgeDomain: need 0 < alpha <= 2 pi");
  }
  bool contains(Complex z) const {
    return z != Complex(0.0, 0.0) && std::abs(std::arg(z)) < 0.5 * alpha;
  }
};

using PLDomain = std::variant<WedgeDomain, StarDomainSpec>;

/// An analytic function together with the domain its demonstration runs on.
struct AnalyticFunctionSpec {
  std::string name;
  std::function<Complex(Complex)> evaluate;
  PLDomain domain;
};

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

namespace detail {

/// Principal power z^e extended by 0 at z = 0 (e > 0).
inline Complex principal_power(Complex z, double e) {
  if (z == Complex(0.0, 0.0)) return Complex(0.0, 0.0);
  return std::exp(e * std::log(z));
}

}  // namespace detail

/// exp(z^{pi/alpha}) on the wedge of opening alpha: modulus 1 on the edges,
/// unbounded along the axis.  The sharpness witness of the wedge principle.
inline AnalyticFunctionSpec exp_power_function(double alpha) {
  double e = pi / alpha;
  return {"exp_power(" + std::to_string(alpha) + ")",
          [e](Complex z) { return std::exp(detail::principal_power(z, e)); },
          WedgeDomain(alpha)};
}

inline AnalyticFunctionSpec exp_function(double alpha = pi / 2.0) {
  return {"exp_z", [](Complex z) { return std::exp(z); }, WedgeDomain(alpha)};
}

inline AnalyticFunctionSpec exp_square_function() {
  auto spec = exp_power_function(pi / 2.0);
  spec.name = "exp_z2";
  return spec;
}

inline AnalyticFunctionSpec reciprocal_shift_function(double alpha = pi / 2.0) {
  return {"one_over_1pz", [](Complex z) { return 1.0 / (1.0 + z); },
          WedgeDomain(alpha)};
}

inline AnalyticFunctionSpec coordinate_function(double alpha = pi / 2.0) {
  return {"z", [](Complex z) { return z; }, WedgeDomain(alpha)};
}

inline AnalyticFunctionSpec constant_function(Complex c, double alpha = pi / 2.0) {
  return {"const", [c](Complex) { return c; }, WedgeDomain(alpha)};
}

// ---------------------------------------------------------------------------
// Boundary sampling
// ---------------------------------------------------------------------------

namespace detail {

template <class Visit>
void visit_boundary(const PLDomain& domain, int samples, double radius_cap,
                    Visit&& visit) {
  if (std::holds_alternative<WedgeDomain>(domain)) {
    double alpha = std::get<WedgeDomain>(domain).alpha;
    visit(Complex(0.0, 0.0));  // the vertex
    int per_edge = std::max(8, samples / 2);
    for (int sgn : {-1, 1}) {
      double edge = 0.5 * alpha * sgn;
      for (int i = 1; i <= per_edge; ++i) {
        double t = radius_cap * static_cast<double>(i) / per_edge;
        visit(std::polar(t, edge));
      }
    }
  } else {
    const auto& star = std::get<StarDomainSpec>(domain);
    int n = std::max(16, samples);
    for (int i = 0; i < n; ++i) {
      double theta = two_pi * static_cast<double>(i) / n;
      double rho = star.rho(theta);
      visit(std::polar(std::min(rho, radius_cap), theta));
    }
  }
}

}  // namespace detail

/// max |f| over a dense sampling of the domain boundary truncated at
/// radius_cap.  Returns +inf if a sample overflows; NaN samples are errors.
inline double boundary_sup(const AnalyticFunctionSpec& f, int samples,
                           double radius_cap) {
  if (!(radius_cap > 0.0) || samples < 2)
    throw std::invalid_argument("boundary_sup: need radius_cap > 0, samples >= 2");
  double sup = -inf;
  detail::visit_boundary(f.domain, samples, radius_cap, [&](Complex z) {
    double m = std::abs(f.evaluate(z));
    if (std::isnan(m))
      throw std::domain_error("boundary_sup: evaluation failed at z = (" +
                              std::to_string(z.real()) + ", " +
                              std::to_string(z.imag()) + ")");
    sup = std::max(sup, m);
  });
  return sup;
}

/// Boundary bound across growing truncation radii.  The limsup hypothesis is
/// declared failed (K = +inf) when the truncated sup keeps growing by more
/// than growth_factor across the scan.
struct BoundaryBound {
  double K = inf;
  std::vector<double> caps;
  std::vector<double> sups;
  bool unbounded = false;
};

inline BoundaryBound boundary_bound_scan(const AnalyticFunctionSpec& f,
                                         int samples, double radius_cap,
                                         double growth_factor = 10.0) {
  BoundaryBound out;
  for (double cap : {radius_cap / 4.0, radius_cap / 2.0, radius_cap}) {
    out.caps.push_back(cap);
    out.sups.push_back(boundary_sup(f, samples, cap));
  }
  double first = out.sups.front(), last = out.sups.back();
  out.unbounded = !std::isfinite(last) ||
                  (last > growth_factor * std::max(first, 1e-300));
  out.K = out.unbounded ? inf : last;
  return out;
}

// ---------------------------------------------------------------------------
// Growth fitting
// ---------------------------------------------------------------------------

/// Least-squares fit of ln ln+|f| = p ln r + ln C along a ray.  `bounded` is
/// set (with p = 0) when |f| never exceeds 1 on the ray.
struct GrowthFit {
  double C = 1.0;
  double p = 0.0;
  double residual = 0.0;
  bool bounded = false;
};

inline std::vector<double> geometric_ladder(double r_lo, double r_hi, int count) {
  if (!(r_lo > 0.0 && r_hi > r_lo) || count < 2)
    throw std::invalid_argument("geometric_ladder: need 0 < r_lo < r_hi, count >= 2");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  double step = std::pow(r_hi / r_lo, 1.0 / (count - 1));
  double r = r_lo;
  for (int i = 0; i < count; ++i, r *= step) out.push_back(r);
  return out;
}

inline GrowthFit growth_fit(const AnalyticFunctionSpec& f, double ray_angle,
                            const std::vector<double>& radii) {
  if (radii.size() < 5)
    throw insufficient_data("growth_fit: need at least 5 radii");
  std::vector<double> xs, ys;
  double sup = 0.0;
  for (double r : radii) {
    if (!(r > 0.0))
      throw std::invalid_argument("growth_fit: radii must be positive");
    double m = std::abs(f.evaluate(std::polar(r, ray_angle)));
    if (std::isnan(m))
      throw std::domain_error("growth_fit: evaluation failed at r = " +
                              std::to_string(r));
    if (!std::isfinite(m))
      throw std::domain_error(
          "growth_fit: |f| overflowed at r = " + std::to_string(r) +
          "; shrink the radius ladder");
    sup = std::max(sup, m);
    double u = log_plus(m);
    if (u > 0.0) {
      xs.push_back(std::log(r));
      ys.push_back(std::log(u));
    }
  }
  if (xs.empty()) {
    GrowthFit fit;
    fit.bounded = true;
    fit.C = std::max(sup, 1.0);
    return fit;
  }
  if (xs.size() < 5)
    throw insufficient_data(
        "growth_fit: fewer than 5 radii with ln+|f| > 0; extend the ladder");

  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw insufficient_data("growth_fit: degenerate ladder");
  GrowthFit fit;
  fit.p = (n * sxy - sx * sy) / denom;
  double intercept = (sy - fit.p * sx) / n;
  fit.C = std::exp(intercept);
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double e = ys[i] - (fit.p * xs[i] + intercept);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

// ---------------------------------------------------------------------------
// Verdict engine
// ---------------------------------------------------------------------------

enum class PLConclusion { BoundedByK, HypothesisViolated, Inconclusive };

inline const char* to_string(PLConclusion c) {
  switch (c) {
    case PLConclusion::BoundedByK: return "bounded-by-K";
    case PLConclusion::HypothesisViolated: return "hypothesis-violated";
    default: return "inconclusive";
  }
}

struct PLVerdict {
  double K = inf;
  double p_fit = 0.0;
  double p_star = 0.0;
  PLConclusion conclusion = PLConclusion::Inconclusive;
  double interior_max = 0.0;
  ComplexPoint witness;
};

struct VerdictOptions {
  double margin = 0.05;        // relative safety margin on p_fit < p_star
  double interior_cap = 20.0;  // radius of the interior sampling region
  int radial_samples = 48;
  int angular_samples = 15;
  double tolerance = 1e-9;     // slack on interior corroboration vs K
};

/// Three-valued conclusion:
///  - the boundary bound K must be finite, otherwise inconclusive;
///  - interior samples exceeding K + tol are a direct witness against the
///    growth hypothesis (hypothesis-violated);
///  - bounded-by-K needs p_fit below p_star by the safety margin (or a
///    bounded fit) together with corroborating interior samples;
///  - ties inside the margin stay inconclusive.
inline PLVerdict pl_verdict(const AnalyticFunctionSpec& f, double K,
                            const GrowthFit& fit, double p_star,
                            VerdictOptions opt = {}) {
  if (!(p_star > 0.0))
    throw std::invalid_argument("pl_verdict: p_star must be positive");
  PLVerdict v;
  v.K = K;
  v.p_fit = fit.bounded ? 0.0 : fit.p;
  v.p_star = p_star;

  // Interior spot samples over a deterministic polar grid.
  double max_seen = -inf;
  Complex witness(0.0, 0.0);
  auto consider = [&](Complex z) {
    double m = std::abs(f.evaluate(z));
    if (std::isnan(m)) return;
    if (m > max_seen) {
      max_seen = m;
      witness = z;
    }
  };
  auto radii = geometric_ladder(1e-3, opt.interior_cap, opt.radial_samples);
  if (std::holds_alternative<WedgeDomain>(f.domain)) {
    double alpha = std::get<WedgeDomain>(f.domain).alpha;
    for (double r : radii)
      for (int j = 0; j < opt.angular_samples; ++j) {
        double frac = (static_cast<double>(j) + 0.5) / opt.angular_samples - 0.5;
        consider(std::polar(r, 0.9 * alpha * frac));
      }
  } else {
    const auto& star = std::get<StarDomainSpec>(f.domain);
    for (int j = 0; j < 64; ++j) {
      double theta = two_pi * j / 64.0;
      double reach = std::min(star.rho(theta), opt.interior_cap);
      for (double fr : {0.1, 0.3, 0.5, 0.7, 0.9})
        if (reach > 0.0) consider(std::polar(fr * reach, theta));
    }
  }
  v.interior_max = max_seen;
  v.witness = ComplexPoint(witness);

  if (!(K < inf)) {
    v.conclusion = PLConclusion::Inconclusive;  // boundary hypothesis failed
  } else if (max_seen > K + std::max(opt.tolerance, opt.tolerance * std::abs(K))) {
    v.conclusion = PLConclusion::HypothesisViolated;
  } else if (fit.bounded || v.p_fit < p_star * (1.0 - opt.margin)) {
    v.conclusion = PLConclusion::BoundedByK;
  } else {
    v.conclusion = PLConclusion::Inconclusive;
  }
  return v;
}

/// Default domain threshold when no geometry is supplied: every simply
/// connected proper subdomain of the plane admits exponents below 1/2.
inline constexpr double default_p_star = 0.5;

// ---------------------------------------------------------------------------
// Subharmonicity residual
// ---------------------------------------------------------------------------

/// u(center) - (mean of u on the circle) for u = log+|f|.  Subharmonicity
/// makes the exact value nonpositive; quadrature can push it up by no more
/// than its own error.
inline double subharmonic_residual(const AnalyticFunctionSpec& f,
                                   ComplexPoint center, double radius,
                                   const CircleQuadrature& q) {
  auto u = [&](ComplexPoint p) { return log_plus(std::abs(f.evaluate(p.value()))); };
  double at_center = u(center);
  double mean = circle_mean(
      [&](double theta) {
        return u(ComplexPoint(center.re + radius * std::cos(theta),
                              center.im + radius * std::sin(theta)));
      },
      q);
  return at_center - mean;
}

// ---------------------------------------------------------------------------
// Sharpness demonstration
// ---------------------------------------------------------------------------

/// The full pipeline for exp(z^{pi/alpha}) on its wedge: boundary sup 1,
/// fitted growth order pi/alpha tying the threshold, interior blow-up.
struct SharpnessReport {
  double alpha = 0.0;
  double boundary_sup_value = 0.0;
  GrowthFit fit;
  PLVerdict verdict;
  double witness_radius = 0.0;   // where |f| passes 1e6 along the axis
  double witness_value = 0.0;
};

inline SharpnessReport sharpness_demo(double alpha, int boundary_samples = 4000,
                                      double boundary_cap = 10.0) {
  auto f = exp_power_function(alpha);
  SharpnessReport rep;
  rep.alpha = alpha;
  rep.boundary_sup_value = boundary_sup(f, boundary_samples, boundary_cap);
  rep.witness_radius = std::pow(std::log(1e6), alpha / pi);
  rep.fit = growth_fit(f, 0.0, geometric_ladder(2.0, 1.5 * rep.witness_radius, 12));
  VerdictOptions opt;
  opt.interior_cap = 1.5 * rep.witness_radius;
  rep.verdict = pl_verdict(f, rep.boundary_sup_value, rep.fit, pi / alpha, opt);
  rep.witness_value = std::abs(f.evaluate(Complex(rep.witness_radius, 0.0)));
  return rep;
}

}  // namespace potentia
