#pragma once

// Green's functions of the unit disk and the upper half-plane, the covering
// series expansion of the disk kernel
//
//   G(a, z) = ln|(1 - conj(a) z)/(a - z)|
//           = sum_{k in Z} ln|((log z + 2 pi i k) + conj(log a)) /
//                            ((log z + 2 pi i k) -      log a )|
//
// for 0 < |a|, |z| < 1, and the generic preimage-summation operator that the
// expansion is an instance of (project the half-plane kernel through
// w -> exp(i w) and sum over the fiber).
//
// The series is always evaluated with a rotated to the positive real axis
// and the +/-k terms paired,
//
//   pair_k = ln|1 + D/(B + 4 pi^2 k^2)|,   B = (log z - log a)^2,
//                                          D = (log z + conj(log a))^2 - B,
//
// which avoids the cancellation the raw two-sided form suffers for large k.
// Each pair is a function of v = 1/k^2 that is analytic on a disk of known
// radius, so the omitted tail is corrected to second order with exact zeta
// tails and what remains is bounded by a Cauchy estimate.

#include <functional>
#include <optional>
#include <vector>

#include "complex_plane.hpp"

namespace potentia {

/// Value of a symmetric partial sum over k in [-N, N] (tail-corrected) plus
/// a rigorous bound on |exact sum - value| for the inputs it was computed
/// for.
struct TruncatedSeriesResult {
  double value = 0.0;
  long truncation_index = 0;
  double tail_bound = 0.0;
};

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

/// Green's function of the unit disk, ln|(1 - conj(a) z)/(a - z)|.
/// Positive for distinct interior points and vanishing on the boundary.
inline double greens_disk_closed(DiskPoint a, DiskPoint z) {
  Complex av = a.c(), zv = z.c();
  if (std::abs(zv - av) < 1e-15)
    throw singularity_error("greens_disk_closed: z = a");
  return std::log(std::abs((1.0 - std::conj(av) * zv) / (av - zv)));
}

/// Green's function of the upper half-plane, ln|(v - conj(u))/(v - u)|.
inline double greens_halfplane(ComplexPoint u, ComplexPoint v) {
  if (!(u.im > 0.0) || !(v.im > 0.0))
    throw std::domain_error("greens_halfplane: points must have Im > 0");
  Complex uv = u.value(), vv = v.value();
  if (std::abs(vv - uv) < 1e-15)
    throw singularity_error("greens_halfplane: u = v");
  return std::log(std::abs((vv - std::conj(uv)) / (vv - uv)));
}

// ---------------------------------------------------------------------------
// Tail model for the paired series
// ---------------------------------------------------------------------------

namespace detail {

/// Tail data for sum_{k>N} Re log(1 + D/(B + s k^2)), s = 4 pi^2.
///
/// With v = 1/k^2 the per-pair map phi(v) = log(1 + D v/(s + B v)) is
/// analytic on |v| <= v1 = min(s/(2|B|), s/(4|D|)): there |s + B v| >= s/2,
/// hence |D v/(s + B v)| <= 2|D|v1/s <= 1/2 and |phi| <= (2 ln 2) * that.
/// Taylor about v = 0 gives
///   Re phi(v) = g1 v + g2 v^2 + r(v),
///   g1 = Re(D)/s,  g2 = -(2 Re(DB) + Re(D^2)) / (2 s^2),
/// and the Cauchy estimate gives |r(v)| <= rho v^3 once v <= v1/2, i.e. for
/// every k > n_min.
struct PairTailModel {
  double g1 = 0.0;
  double g2 = 0.0;
  double rho = 0.0;
  long n_min = 1;
};

inline PairTailModel pair_tail_model(Complex D, Complex B) {
  const double s = 4.0 * pi * pi;
  double aD = std::abs(D);
  if (aD == 0.0) return {};
  double v1 = s / (4.0 * aD);
  double aB = std::abs(B);
  if (aB > 0.0) v1 = std::min(v1, s / (2.0 * aB));
  PairTailModel m;
  m.g1 = D.real() / s;
  m.g2 = -(2.0 * (D * B).real() + (D * D).real()) / (2.0 * s * s);
  double max_on_circle = 2.0 * std::numbers::ln2 * (2.0 * aD * v1 / s);
  m.rho = 2.0 * max_on_circle / (v1 * v1 * v1);
  double need = std::sqrt(2.0 / v1) - 1.0;  // (N+1)^2 >= 2/v1
  m.n_min = need > 1.0 ? static_cast<long>(std::ceil(need)) : 1;
  return m;
}

/// One paired term ln|1 + D/(B + 4 pi^2 k^2)| evaluated through log1p.
inline double pair_term_value(Complex D, Complex B, long k) {
  const double s = 4.0 * pi * pi;
  double kk = static_cast<double>(k) * static_cast<double>(k);
  Complex t = D / (B + Complex(s * kk, 0.0));
  double arg = 2.0 * t.real() + std::norm(t);  // |1 + t|^2 - 1
  if (!(arg > -1.0))
    throw singularity_error("series pair term: vanishing factor at k = " +
                            std::to_string(k));
  return 0.5 * std::log1p(arg);
}

/// Rotated logarithms for the disk series: a is carried to the positive real
/// axis and z by the same rotation; log a is then real.
struct DiskSeriesFrame {
  double la = 0.0;   // log |a|, real and negative
  Complex lz;        // principal log of the rotated z (+ branch shift)
  Complex num0, den0;
  Complex A, B, D;
};

inline DiskSeriesFrame disk_series_frame(Complex a, Complex z,
                                         int branch_shift) {
  DiskSeriesFrame f;
  f.la = std::log(std::abs(a));
  Complex zr = z * std::polar(1.0, -std::arg(a));
  f.lz = Complex(std::log(std::abs(zr)), std::arg(zr)) +
         Complex(0.0, two_pi * static_cast<double>(branch_shift));
  f.num0 = f.lz + f.la;
  f.den0 = f.lz - f.la;
  f.A = f.num0 * f.num0;
  f.B = f.den0 * f.den0;
  f.D = f.A - f.B;  // equals 4 la log z
  return f;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The covering series of the disk kernel
// ---------------------------------------------------------------------------

/// Single term of the disk series in rearranged form: the k = 0 term for
/// k = 0, otherwise the (k, -k) pair.  Defined for 0 < |a| < 1 and
/// 0 < |z| <= 1 (the boundary is admitted so the term-wise vanishing at
/// |z| = 1 can be observed directly).
inline double greens_series_pair_term(Complex a, Complex z, long k) {
  double am = std::abs(a), zm = std::abs(z);
  if (!(am > 0.0 && am < 1.0) || !(zm > 0.0 && zm <= 1.0))
    throw std::domain_error(
        "greens_series_pair_term: need 0 < |a| < 1 and 0 < |z| <= 1");
  auto f = detail::disk_series_frame(a, z, 0);
  if (k == 0) {
    if (std::abs(f.den0) == 0.0)
      throw singularity_error("greens_series_pair_term: z = a");
    return std::log(std::abs(f.num0)) - std::log(std::abs(f.den0));
  }
  return detail::pair_term_value(f.D, f.B, k < 0 ? -k : k);
}

/// Symmetric partial sum over k in [-N, N] of the covering series, evaluated
/// in the rotated, paired form, tail-corrected with exact zeta tails.  The
/// reported tail_bound covers the post-correction truncation residual plus a
/// compensated-summation cushion.
///
/// branch_shift adds 2 pi i * shift to log z; the limit of the series does
/// not depend on it, which downstream tests check rather than assume.
inline TruncatedSeriesResult greens_disk_series(PuncturedDiskPoint a,
                                                PuncturedDiskPoint z,
                                                long terms,
                                                int branch_shift = 0) {
  if (terms < 1)
    throw std::invalid_argument("greens_disk_series: terms must be >= 1");
  Complex av = a.c(), zv = z.c();
  if (std::abs(zv - av) < 1e-15)
    throw singularity_error("greens_disk_series: z = a");

  auto f = detail::disk_series_frame(av, zv, branch_shift);
  if (std::abs(f.den0) < 1e-15)
    throw singularity_error("greens_disk_series: log z = log a");

  auto tail = detail::pair_tail_model(f.D, f.B);
  if (terms < tail.n_min)
    throw truncation_too_small(
        "greens_disk_series: terms = " + std::to_string(terms) +
        " is below the smallest index with a valid tail bound (" +
        std::to_string(tail.n_min) + ")");

  KahanSum sum, abs_sum, zeta2, zeta4;
  for (long k = 1; k <= terms; ++k) {
    double term = detail::pair_term_value(f.D, f.B, k);
    sum.add(term);
    abs_sum.add(std::abs(term));
    double kk = static_cast<double>(k) * static_cast<double>(k);
    zeta2.add(1.0 / kk);
    zeta4.add(1.0 / (kk * kk));
  }
  double k0 = std::log(std::abs(f.num0)) - std::log(std::abs(f.den0));
  double s2 = pi * pi / 6.0 - zeta2.total();
  double s4 = pi * pi * pi * pi / 90.0 - zeta4.total();
  double correction = tail.g1 * s2 + tail.g2 * s4;

  double n5 = std::pow(static_cast<double>(terms), 5.0);
  double residual = tail.rho * 0.2 / n5;  // sum_{k>N} k^-6 < 1/(5 N^5)
  double value = k0 + sum.total() + correction;
  double cushion =
      128.0 * eps *
      (1.0 + std::abs(k0) + abs_sum.total() + std::abs(correction) +
       std::abs(value));
  return {value, terms, residual + cushion};
}

/// Series values along a sequence of positive radii shrinking toward the
/// puncture; boundedness of the result is the numerical face of the
/// removable singularity at z = 0.
inline std::vector<double> removable_singularity_probe(
    PuncturedDiskPoint a, const std::vector<double>& radii, long terms) {
  if (radii.empty())
    throw std::invalid_argument("removable_singularity_probe: no radii");
  double half = 0.5 * a.value.abs();
  double prev = inf;
  for (double r : radii) {
    if (!(r > 0.0 && r < half))
      throw std::invalid_argument(
          "removable_singularity_probe: radii must lie in (0, |a|/2)");
    if (!(r < prev))
      throw std::invalid_argument(
          "removable_singularity_probe: radii must be strictly decreasing");
    prev = r;
  }
  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii)
    out.push_back(greens_disk_series(a, PuncturedDiskPoint(r, 0.0), terms).value);
  return out;
}

// ---------------------------------------------------------------------------
// Generic preimage summation
// ---------------------------------------------------------------------------

/// A covering map f together with an enumerator of the fiber over a target
/// point: preimage(t, k) is the k-th sheet's preimage of t, or nullopt when
/// the fiber has no k-th element (finite covers).  The optional tail model
/// supplies the correction added to the symmetric partial fiber sum and a
/// rigorous bound on what remains; covers with infinite fibers and no model
/// report an infinite tail bound rather than a fake one.
struct CoveringMapSpec {
  std::function<Complex(Complex)> forward;
  std::function<std::optional<Complex>(Complex, long)> preimage;
  std::function<double(Complex base, Complex target, long terms)> tail_correction;
  std::function<double(Complex base, Complex target, long terms)> tail_residual;
};

/// Projects a base-domain Green's function through a covering map:
/// sums base_greens(b, w') over the enumerated fiber indices k in [-N, N]
/// above f(w), in ascending |k| order.
template <class G>
TruncatedSeriesResult covering_projection(const CoveringMapSpec& spec,
                                          G&& base_greens, ComplexPoint b,
                                          ComplexPoint w, long terms) {
  if (terms < 1)
    throw std::invalid_argument("covering_projection: terms must be >= 1");
  Complex target = spec.forward(w.value());

  // Cheap consistency probe of the enumerator against the forward map.
  for (long k = -1; k <= 1; ++k) {
    auto pre = spec.preimage(target, k);
    if (pre && std::abs(spec.forward(*pre) - target) >
                   1e-12 * std::max(1.0, std::abs(target)))
      throw std::logic_error(
          "covering_projection: preimage enumerator inconsistent with forward "
          "map at k = " + std::to_string(k));
  }

  KahanSum sum;
  bool fiber_exhausted = false;
  auto accumulate = [&](long k) {
    auto pre = spec.preimage(target, k);
    if (!pre) {
      fiber_exhausted = true;
      return;
    }
    sum.add(base_greens(b.value(), *pre));
  };
  accumulate(0);
  for (long k = 1; k <= terms; ++k) {
    accumulate(k);
    accumulate(-k);
  }

  double correction =
      spec.tail_correction ? spec.tail_correction(b.value(), target, terms) : 0.0;
  double residual;
  if (spec.tail_residual)
    residual = spec.tail_residual(b.value(), target, terms);
  else
    residual = fiber_exhausted ? 0.0 : inf;
  return {sum.total() + correction, terms, residual};
}

/// The universal cover w -> exp(i w) of the punctured disk by the upper
/// half-plane.  Preimages of t are -i Log t + 2 pi k; projecting the
/// half-plane kernel through this cover reproduces the disk series term by
/// term, and the attached tail model is the paired one above.
inline CoveringMapSpec exp_i_covering() {
  CoveringMapSpec spec;
  spec.forward = [](Complex w) { return std::exp(Complex(0.0, 1.0) * w); };
  spec.preimage = [](Complex t, long k) -> std::optional<Complex> {
    if (t == Complex(0.0, 0.0))
      throw std::domain_error("exp_i_covering: target 0 has empty fiber");
    Complex l = std::log(t);
    return Complex(l.imag() + two_pi * static_cast<double>(k), -l.real());
  };
  auto model = [](Complex base, Complex target) {
    // log a = i * base (a = exp(i base)); log z = Log target.
    Complex la = Complex(0.0, 1.0) * base;
    Complex lz = std::log(target);
    Complex m0 = lz + std::conj(la), p0 = lz - la;
    return detail::pair_tail_model(m0 * m0 - p0 * p0, p0 * p0);
  };
  spec.tail_correction = [model](Complex base, Complex target, long terms) {
    auto tail = model(base, target);
    if (terms < tail.n_min)
      throw truncation_too_small(
          "exp_i_covering: terms below the tail model threshold (" +
          std::to_string(tail.n_min) + ")");
    KahanSum zeta2, zeta4;
    for (long k = 1; k <= terms; ++k) {
      double kk = static_cast<double>(k) * static_cast<double>(k);
      zeta2.add(1.0 / kk);
      zeta4.add(1.0 / (kk * kk));
    }
    return tail.g1 * (pi * pi / 6.0 - zeta2.total()) +
           tail.g2 * (pi * pi * pi * pi / 90.0 - zeta4.total());
  };
  spec.tail_residual = [model](Complex base, Complex target, long terms) {
    auto tail = model(base, target);
    double n5 = std::pow(static_cast<double>(terms), 5.0);
    double scale = std::abs(tail.g1) + std::abs(tail.g2) + 1.0;
    return tail.rho * 0.2 / n5 + 128.0 * eps * scale;
  };
  return spec;
}

/// One-sheeted cover: the identity map.  The fiber sum collapses to a single
/// base kernel evaluation and the tail is exactly zero.
inline CoveringMapSpec identity_covering() {
  CoveringMapSpec spec;
  spec.forward = [](Complex w) { return w; };
  spec.preimage = [](Complex t, long k) -> std::optional<Complex> {
    if (k == 0) return t;
    return std::nullopt;
  };
  return spec;
}

}  // namespace potentia
