#pragma once

// Branch-aware complex primitives and periodic circle quadrature shared by
// everything else in the library.  Double precision throughout; all
// operations are pure functions of their arguments.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace potentia {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double inf = std::numeric_limits<double>::infinity();
inline constexpr double eps = std::numeric_limits<double>::epsilon();

/// Evaluation at (or numerically indistinguishable from) a singular point.
class singularity_error : public std::domain_error {
  using std::domain_error::domain_error;
};

/// The requested truncation index is below the smallest one for which the
/// rigorous tail machinery applies; refusing beats reporting a fake bound.
class truncation_too_small : public std::domain_error {
  using std::domain_error::domain_error;
};

/// A quantity required to be monotone by a precondition failed to be so.
class monotonicity_error : public std::domain_error {
  using std::domain_error::domain_error;
};

/// Too few usable samples to perform the requested fit.
class insufficient_data : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Points of the plane and its standard subdomains
// ---------------------------------------------------------------------------

/// A finite point of the plane.  Constructors reject NaN/inf so that any
/// non-finite number appearing downstream is attributable to a computation,
/// never to an input.
struct ComplexPoint {
  double re = 0.0;
  double im = 0.0;

  ComplexPoint() = default;
  ComplexPoint(double real, double imag) : re(real), im(imag) {
    if (!std::isfinite(real) || !std::isfinite(imag))
      throw std::invalid_argument("ComplexPoint: components must be finite");
  }
  explicit ComplexPoint(Complex z) : ComplexPoint(z.real(), z.imag()) {}

  Complex value() const { return Complex(re, im); }
  double abs() const { return std::hypot(re, im); }
};

/// Point of the open unit disk, |z| < 1.
struct DiskPoint {
  ComplexPoint value;

  explicit DiskPoint(ComplexPoint p) : value(p) {
    if (!(p.abs() < 1.0))
      throw std::domain_error("DiskPoint: |z| must be < 1");
  }
  DiskPoint(double re, double im) : DiskPoint(ComplexPoint(re, im)) {}
  explicit DiskPoint(Complex z) : DiskPoint(ComplexPoint(z)) {}

  Complex c() const { return value.value(); }
};

/// Point of the punctured disk, 0 < |z| < 1.
struct PuncturedDiskPoint {
  ComplexPoint value;

  explicit PuncturedDiskPoint(ComplexPoint p) : value(p) {
    double m = p.abs();
    if (!(m > 0.0 && m < 1.0))
      throw std::domain_error("PuncturedDiskPoint: need 0 < |z| < 1");
  }
  PuncturedDiskPoint(double re, double im)
      : PuncturedDiskPoint(ComplexPoint(re, im)) {}
  explicit PuncturedDiskPoint(Complex z)
      : PuncturedDiskPoint(ComplexPoint(z)) {}

  Complex c() const { return value.value(); }
  DiskPoint as_disk() const { return DiskPoint(value); }
};

// ---------------------------------------------------------------------------
// Compensated summation
// ---------------------------------------------------------------------------

/// Kahan compensated accumulator.  Summation error is bounded by
/// 2*eps*(sum of |terms|) independent of the term count, which the series
/// tail bounds rely on.
class KahanSum {
 public:
  void add(double x) {
    double y = x - carry_;
    double t = total_ + y;
    carry_ = (t - total_) - y;
    total_ = t;
  }
  double total() const { return total_; }

 private:
  double total_ = 0.0;
  double carry_ = 0.0;
};

// ---------------------------------------------------------------------------
// Principal logarithm
// ---------------------------------------------------------------------------

/// log z with Im in (-pi, pi].  The lower edge of the cut maps up, so the
/// value at -1 is +i pi even when the imaginary part arrives as -0.0.
inline ComplexPoint principal_log(ComplexPoint z) {
  if (z.re == 0.0 && z.im == 0.0)
    throw std::domain_error("principal_log: z = 0");
  double arg = std::atan2(z.im, z.re);
  if (arg == -pi) arg = pi;
  return ComplexPoint(std::log(z.abs()), arg);
}

// ---------------------------------------------------------------------------
// Circle quadrature
// ---------------------------------------------------------------------------

/// Equally spaced nodes on [0, 2pi): the periodic trapezoidal rule.  Exact
/// for trigonometric polynomials of degree < node_count and spectrally
/// accurate for smooth periodic integrands.
class CircleQuadrature {
 public:
  explicit CircleQuadrature(int node_count = 1024) {
    if (node_count < 16)
      throw std::invalid_argument("CircleQuadrature: node_count must be >= 16");
    nodes_.reserve(static_cast<std::size_t>(node_count));
    for (int i = 0; i < node_count; ++i)
      nodes_.push_back(two_pi * static_cast<double>(i) /
                       static_cast<double>(node_count));
  }

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }

 private:
  std::vector<double> nodes_;
};

/// Equal-weight average of f over the quadrature nodes.
template <class F>
double circle_mean(F&& f, const CircleQuadrature& q) {
  KahanSum acc;
  for (double theta : q.nodes()) {
    double v = f(theta);
    if (!std::isfinite(v))
      throw std::domain_error("circle_mean: integrand non-finite at theta = " +
                              std::to_string(theta));
    acc.add(v);
  }
  return acc.total() / static_cast<double>(q.node_count());
}

/// |h(center) - mean of h on the circle of given radius about center|.
/// Vanishes (to quadrature accuracy) exactly when h is harmonic across the
/// closed disk bounded by the circle.
template <class H>
double mean_value_residual(H&& h, ComplexPoint center, double radius,
                           const CircleQuadrature& q) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("mean_value_residual: radius must be positive");
  double at_center = h(center);
  if (!std::isfinite(at_center))
    throw std::domain_error("mean_value_residual: h non-finite at center");
  double mean = circle_mean(
      [&](double theta) {
        return h(ComplexPoint(center.re + radius * std::cos(theta),
                              center.im + radius * std::sin(theta)));
      },
      q);
  return std::abs(at_center - mean);
}

}  // namespace potentia
