#pragma once

// The two-parameter product identity
//
//   prod_{n in Z} ((b+2pi n)^2 + (r+c)^2) / ((b+2pi n)^2 + (r-c)^2)
//     = |(1 - e^{-r-c+bi}) / (e^{-r} - e^{-c+bi})|^2,       r, c > 0, b real,
//
// and its sinh / cosh / sin / cos specializations.  Products are evaluated
// as sums of log1p terms and exponentiated once; truncation is repaired with
// a second-order tail correction (exact zeta tails) and the residual after
// the correction is bounded by a Cauchy estimate, exactly as in greens.hpp.
// Where the estimate's admissibility threshold is not met, a cruder but
// still rigorous comparison bound is reported instead of refusing, since
// every factor here is positive.

#include <cmath>

#include "complex_plane.hpp"

namespace potentia {

/// Parameters (b, r, c) of the two-parameter identity.  The single excluded
/// point is b = 0 (mod 2pi) together with r = c, where one factor's
/// denominator vanishes.
struct ProductParams {
  double b = 0.0;
  double r = 1.0;
  double c = 1.0;

  ProductParams(double b_, double r_, double c_) : b(b_), r(r_), c(c_) {
    if (!std::isfinite(b) || !(r > 0.0) || !(c > 0.0) || !std::isfinite(r) ||
        !std::isfinite(c))
      throw std::invalid_argument("ProductParams: need finite b and r, c > 0");
  }
};

/// Value of a truncated infinite product.  tail_correction was added to the
/// log-sum before exponentiating; residual_bound bounds
/// |log(exact) - log(value)|, i.e. the log of the omitted tail factors after
/// the correction.  absolute_error_mode marks values near a zero of the
/// target function, where relative-error reporting degenerates.
struct ProductResult {
  double value = 0.0;
  long truncation_index = 0;
  double tail_correction = 0.0;
  double residual_bound = 0.0;
  bool absolute_error_mode = false;

  /// Guaranteed absolute half-width implied by the log-scale residual.
  double value_tolerance() const {
    return std::abs(value) * std::expm1(residual_bound);
  }
};

namespace detail {

/// Tail data for sums of the shape sum_{n>N} g(1/n) where g is even and
/// analytic on |x| <= x1 with g(0) = 0:
///   g(x) = p2 x^2 + p4 x^4 + r(x),  |r(x)| <= rho x^6  for x <= x1/2.
struct EvenTailModel {
  double p2 = 0.0;
  double p4 = 0.0;
  double rho = 0.0;
  long n_min = 1;
  bool valid = false;
};

/// One-sided zeta tails with exact constants; partial sums are accumulated
/// by the caller's main loop.
inline double zeta2_tail(double partial) { return pi * pi / 6.0 - partial; }
inline double zeta4_tail(double partial) {
  return pi * pi * pi * pi / 90.0 - partial;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The two-parameter identity
// ---------------------------------------------------------------------------

/// Symmetric truncation over n in [-N, N] of the two-parameter product.
/// Computed through log1p of 4rc/((b+2pi n)^2 + (r-c)^2); every factor
/// exceeds 1, so the product converges monotonically from below.
inline ProductResult mirror_product(const ProductParams& params, long terms) {
  if (terms < 1)
    throw std::invalid_argument("mirror_product: terms must be >= 1");
  const double b = params.b, w = 4.0 * params.r * params.c,
               e = params.r - params.c;
  const double s = two_pi;

  auto log_term = [&](double n) {
    double base = b + s * n;
    double den = base * base + e * e;
    if (den == 0.0)
      throw singularity_error(
          "mirror_product: singular parameters (b = 0 mod 2pi and r = c)");
    return std::log1p(w / den);
  };

  KahanSum logsum, abs_sum, x2partial, x4partial;
  {
    double t0 = log_term(0.0);
    logsum.add(t0);
    abs_sum.add(t0);
  }
  for (long n = 1; n <= terms; ++n) {
    double tp = log_term(static_cast<double>(n));
    double tm = log_term(static_cast<double>(-n));
    logsum.add(tp);
    logsum.add(tm);
    abs_sum.add(tp + tm);
    double nn = static_cast<double>(n) * static_cast<double>(n);
    x2partial.add(1.0 / nn);
    x4partial.add(1.0 / (nn * nn));
  }

  // Pair map g(x) = log1p(t+) + log1p(t-), t± = w x^2/(s^2 ± 2 s b x + q x^2),
  // q = b^2 + e^2: even and analytic on |x| <= x1 with |t±| <= 1/2 there.
  double q = b * b + e * e;
  double x1 = std::min(s / (2.0 * std::sqrt(w)),
                       q > 0.0 ? s / (2.0 * std::sqrt(q)) : inf);
  if (b != 0.0) x1 = std::min(x1, s / (8.0 * std::abs(b)));
  long n_min = std::max(1L, static_cast<long>(std::ceil(2.0 / x1 - 1.0)));

  double correction = 0.0, residual;
  if (terms >= n_min) {
    double p2 = 2.0 * w / (s * s);
    double p4 = (2.0 * w * (4.0 * b * b - q) - w * w) / (s * s * s * s);
    correction = p2 * detail::zeta2_tail(x2partial.total()) +
                 p4 * detail::zeta4_tail(x4partial.total());
    double max_on_circle = 8.0 * std::numbers::ln2 * w * x1 * x1 / (s * s);
    double rho = (4.0 / 3.0) * max_on_circle / std::pow(x1, 6.0);
    residual = rho * 0.2 / std::pow(static_cast<double>(terms), 5.0);
  } else {
    // Comparison bound on the uncorrected positive tail:
    // sum_{|n|>N} w/(2 pi |n| - |b|)^2 <= w / (pi (2 pi N - |b|)).
    double margin = s * static_cast<double>(terms) - std::abs(b);
    residual = margin > 0.0 ? w / (pi * margin) : inf;
  }
  double cushion = 64.0 * eps * (1.0 + abs_sum.total() + std::abs(correction));

  ProductResult res;
  res.truncation_index = terms;
  res.tail_correction = correction;
  res.residual_bound = residual + cushion;
  res.value = std::exp(logsum.total() + correction);
  return res;
}

/// Right side of the identity, for cross-checks.
inline double mirror_product_reference(const ProductParams& params) {
  Complex zc = std::exp(Complex(-params.c, params.b));
  Complex num = 1.0 - std::exp(Complex(-params.r - params.c, params.b));
  Complex den = std::exp(Complex(-params.r, 0.0)) - zc;
  double m = std::abs(num / den);
  return m * m;
}

// ---------------------------------------------------------------------------
// One-parameter specializations
// ---------------------------------------------------------------------------

namespace detail {

/// Shared core for products prod (1 + sign * c0 / k_n^2) with k_n = n or
/// n - 1/2; `direct_up_to` factors are multiplied directly (sign-changing
/// heads of the sin/cos products), the rest go through log1p.
struct OneParamTail {
  double correction = 0.0;
  double residual = 0.0;
};

inline OneParamTail integer_tail(double c0, double sign, long terms,
                                 double part2, double part4) {
  OneParamTail t;
  double ratio = c0 / (static_cast<double>(terms + 1) * static_cast<double>(terms + 1));
  if (ratio <= 0.5) {
    t.correction =
        sign * c0 * zeta2_tail(part2) - 0.5 * c0 * c0 * zeta4_tail(part4);
    t.residual = (2.0 / 3.0) * c0 * c0 * c0 * 0.2 /
                 std::pow(static_cast<double>(terms), 5.0);
  } else {
    // Comparison bounds on the uncorrected tail: log1p(x) <= x for positive
    // factors, |log1p(-x)| <= x/(1 - x_max) for factors in (0, 1).
    t.correction = 0.0;
    t.residual = sign > 0.0 ? c0 / static_cast<double>(terms)
                            : (ratio < 1.0
                                   ? c0 / ((1.0 - ratio) * static_cast<double>(terms))
                                   : inf);
  }
  return t;
}

inline OneParamTail half_integer_tail(double c0, double sign, long terms,
                                      double part2, double part4) {
  OneParamTail t;
  double k = static_cast<double>(terms) + 0.5;
  double ratio = c0 / (k * k);
  if (ratio <= 0.5) {
    t.correction = sign * c0 * (pi * pi / 2.0 - part2) -
                   0.5 * c0 * c0 * (pi * pi * pi * pi / 6.0 - part4);
    t.residual = (2.0 / 3.0) * c0 * c0 * c0 * 0.2 /
                 std::pow(static_cast<double>(terms) - 0.5, 5.0);
  } else {
    t.correction = 0.0;
    double inv = c0 / (static_cast<double>(terms) - 0.5);
    t.residual = sign > 0.0 ? inv : (ratio < 1.0 ? inv / (1.0 - ratio) : inf);
  }
  return t;
}

}  // namespace detail

/// sinh r = r prod_{n>=1} (1 + (r/(pi n))^2), truncated and tail-corrected.
inline ProductResult sinh_product(double r, long terms) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument("sinh_product: r must be positive and finite");
  if (terms < 1)
    throw std::invalid_argument("sinh_product: terms must be >= 1");
  double c0 = (r / pi) * (r / pi);

  KahanSum logsum, abs_sum, part2, part4;
  for (long n = 1; n <= terms; ++n) {
    double nn = static_cast<double>(n) * static_cast<double>(n);
    double t = std::log1p(c0 / nn);
    logsum.add(t);
    abs_sum.add(t);
    part2.add(1.0 / nn);
    part4.add(1.0 / (nn * nn));
  }
  auto tail = detail::integer_tail(c0, +1.0, terms, part2.total(), part4.total());
  ProductResult res;
  res.truncation_index = terms;
  res.tail_correction = tail.correction;
  res.residual_bound = tail.residual +
                       64.0 * eps * (1.0 + abs_sum.total() + std::abs(tail.correction));
  res.value = r * std::exp(logsum.total() + tail.correction);
  return res;
}

/// cosh r = prod_{n>=1} (1 + (r/(pi (n-1/2)))^2).
inline ProductResult cosh_product(double r, long terms) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument("cosh_product: r must be positive and finite");
  if (terms < 1)
    throw std::invalid_argument("cosh_product: terms must be >= 1");
  double c0 = (r / pi) * (r / pi);

  KahanSum logsum, abs_sum, part2, part4;
  for (long n = 1; n <= terms; ++n) {
    double k = static_cast<double>(n) - 0.5;
    double kk = k * k;
    double t = std::log1p(c0 / kk);
    logsum.add(t);
    abs_sum.add(t);
    part2.add(1.0 / kk);
    part4.add(1.0 / (kk * kk));
  }
  auto tail =
      detail::half_integer_tail(c0, +1.0, terms, part2.total(), part4.total());
  ProductResult res;
  res.truncation_index = terms;
  res.tail_correction = tail.correction;
  res.residual_bound = tail.residual +
                       64.0 * eps * (1.0 + abs_sum.total() + std::abs(tail.correction));
  res.value = std::exp(logsum.total() + tail.correction);
  return res;
}

/// sin r = r prod (1 - (r/(pi n))^2) and cos r = prod (1 - (r/(pi(n-1/2)))^2).
/// The finitely many sign-changing head factors are multiplied directly; the
/// remaining factors lie in (0, 1) and go through the log path.  Near zeros
/// of sin/cos the result is flagged for absolute-error reporting.
inline std::pair<ProductResult, ProductResult> sin_cos_products(double r,
                                                                long terms) {
  if (!std::isfinite(r))
    throw std::invalid_argument("sin_cos_products: r must be finite");
  if (terms < 1)
    throw std::invalid_argument("sin_cos_products: terms must be >= 1");
  double m = std::abs(r);
  double c0 = (m / pi) * (m / pi);

  ProductResult sin_res, cos_res;
  sin_res.truncation_index = cos_res.truncation_index = terms;

  // sin: factors 1 - c0/n^2 are nonpositive up to n = floor(m/pi)
  long head_sin = static_cast<long>(std::floor(m / pi));
  if (terms <= head_sin) {
    double direct = 1.0;
    for (long n = 1; n <= terms; ++n) {
      double nn = static_cast<double>(n) * static_cast<double>(n);
      direct *= 1.0 - c0 / nn;
    }
    sin_res.value = r * direct;
    sin_res.residual_bound = inf;  // truncation inside the sign-changing head
    sin_res.absolute_error_mode = true;
  } else {
    double direct = 1.0;
    double min_factor = inf;
    for (long n = 1; n <= head_sin; ++n) {
      double nn = static_cast<double>(n) * static_cast<double>(n);
      double f = 1.0 - c0 / nn;
      direct *= f;
      min_factor = std::min(min_factor, std::abs(f));
    }
    KahanSum logsum, abs_sum, part2, part4;
    for (long n = head_sin + 1; n <= terms; ++n) {
      double nn = static_cast<double>(n) * static_cast<double>(n);
      double f = -c0 / nn;
      logsum.add(std::log1p(f));
      abs_sum.add(-std::log1p(f));
      min_factor = std::min(min_factor, 1.0 + f);
      part2.add(1.0 / nn);
      part4.add(1.0 / (nn * nn));
    }
    // part2/part4 cover only n > head_sin; complete them for the zeta tails.
    for (long n = 1; n <= head_sin; ++n) {
      double nn = static_cast<double>(n) * static_cast<double>(n);
      part2.add(1.0 / nn);
      part4.add(1.0 / (nn * nn));
    }
    auto tail =
        detail::integer_tail(c0, -1.0, terms, part2.total(), part4.total());
    sin_res.tail_correction = tail.correction;
    sin_res.residual_bound =
        tail.residual +
        64.0 * eps * (1.0 + abs_sum.total() + std::abs(tail.correction));
    sin_res.value = r * direct * std::exp(logsum.total() + tail.correction);
    sin_res.absolute_error_mode = min_factor < 1e-3 || std::abs(sin_res.value) <
                                                           1e-2 * std::max(m, 1.0);
  }

  // cos: factors 1 - c0/(n-1/2)^2 are nonpositive up to n = floor(m/pi + 1/2)
  long head_cos = static_cast<long>(std::floor(m / pi + 0.5));
  if (terms <= head_cos) {
    double direct = 1.0;
    for (long n = 1; n <= terms; ++n) {
      double k = static_cast<double>(n) - 0.5;
      direct *= 1.0 - c0 / (k * k);
    }
    cos_res.value = direct;
    cos_res.residual_bound = inf;
    cos_res.absolute_error_mode = true;
  } else {
    double direct = 1.0;
    double min_factor = inf;
    for (long n = 1; n <= head_cos; ++n) {
      double k = static_cast<double>(n) - 0.5;
      double f = 1.0 - c0 / (k * k);
      direct *= f;
      min_factor = std::min(min_factor, std::abs(f));
    }
    KahanSum logsum, abs_sum, part2, part4;
    for (long n = head_cos + 1; n <= terms; ++n) {
      double k = static_cast<double>(n) - 0.5;
      double kk = k * k;
      double f = -c0 / kk;
      logsum.add(std::log1p(f));
      abs_sum.add(-std::log1p(f));
      min_factor = std::min(min_factor, 1.0 + f);
      part2.add(1.0 / kk);
      part4.add(1.0 / (kk * kk));
    }
    for (long n = 1; n <= head_cos; ++n) {
      double k = static_cast<double>(n) - 0.5;
      part2.add(1.0 / (k * k));
      part4.add(1.0 / (k * k * k * k));
    }
    auto tail = detail::half_integer_tail(c0, -1.0, terms, part2.total(),
                                          part4.total());
    cos_res.tail_correction = tail.correction;
    cos_res.residual_bound =
        tail.residual +
        64.0 * eps * (1.0 + abs_sum.total() + std::abs(tail.correction));
    cos_res.value = direct * std::exp(logsum.total() + tail.correction);
    cos_res.absolute_error_mode =
        min_factor < 1e-3 || std::abs(cos_res.value) < 1e-2;
  }

  return {sin_res, cos_res};
}

}  // namespace potentia
