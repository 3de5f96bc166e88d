// Acceptance suite: one check block per criterion, each printing a PASS/FAIL
// line with its measured numbers and wall time.  Criterion 9 reruns criteria
// 1-8 and byte-compares their serialized reports.
//
// Criterion 2's removability clause is implemented literally and is
// unattainable for any correct implementation: the exact disk kernel obeys
// G(a, z) - ln(1/a) = ln(1 - a z) - ln(1 - z/a) = z (1/a - a) + O(z^2), which
// at (a, z) = (0.3, 1e-2) is 3.09e-2, two orders above the stated 1e-4.  The
// literal sub-checks are reported FAIL (with the exact-math deviation shown)
// and a supplementary intent check (series == closed form at every probe,
// deepest probe at the limit) is reported alongside.  Attainable checks
// failing is a build error (exit 1); documented-unattainable literal checks
// do not affect the exit code.

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "potentia/potentia.hpp"

using namespace potentia;

namespace {

struct Check {
  std::string label;
  bool pass;
  bool unattainable = false;
};

struct Criterion {
  std::string name;
  std::vector<Check> checks;
  double seconds = 0.0;
  RunReport report;

  bool attainable_pass() const {
    for (const auto& c : checks)
      if (!c.pass && !c.unattainable) return false;
    return true;
  }
  bool literal_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

std::string fmt(double v) { return potentia::detail::format_double(v, 17); }

void add_row(RunReport& rep, const std::string& k, double v) {
  rep.rows.push_back({Cell::text(k), Cell::num(v)});
}

// ---------------------------------------------------------------------------

Criterion criterion1() {
  Criterion cr;
  cr.name = "criterion-1 series-identity";
  cr.report.command = cr.name;
  cr.report.include_wall_time = false;
  cr.report.columns = {"quantity", "value"};

  std::mt19937_64 rng(20250810);
  std::uniform_real_distribution<double> ang(0.0, two_pi);
  double max_diff = 0.0, max_tail = 0.0;
  bool ok = true;
  int pairs = 0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      double ma = 0.05 + 0.1 * i, mz = 0.05 + 0.1 * j;
      PuncturedDiskPoint a(std::polar(ma, ang(rng)));
      PuncturedDiskPoint z(std::polar(mz, ang(rng)));
      auto res = greens_disk_series(a, z, 10000);
      double closed = greens_disk_closed(a.as_disk(), z.as_disk());
      double diff = std::abs(res.value - closed);
      ok = ok && diff <= res.tail_bound && diff <= 1e-6;
      max_diff = std::max(max_diff, diff);
      max_tail = std::max(max_tail, res.tail_bound);
      ++pairs;
    }
  }
  add_row(cr.report, "pairs", pairs);
  add_row(cr.report, "max_abs_diff", max_diff);
  add_row(cr.report, "max_tail_bound", max_tail);
  cr.checks.push_back({"|series - closed| <= tail_bound and <= 1e-6 on the 10x10 grid "
                       "(max diff " + fmt(max_diff) + ")",
                       ok});
  return cr;
}

Criterion criterion2() {
  Criterion cr;
  cr.name = "criterion-2 boundary-vanishing-and-removability";
  cr.report.command = cr.name;
  cr.report.include_wall_time = false;
  cr.report.columns = {"quantity", "value"};

  // Boundary vanishing at |z| = 1 - 1e-6.
  bool boundary_ok = true;
  for (double am : {0.3, 0.9}) {
    auto res = greens_disk_series(PuncturedDiskPoint(am, 0.0),
                                  PuncturedDiskPoint(std::polar(1.0 - 1e-6, 1.1)),
                                  10000);
    add_row(cr.report, "series_at_boundary_a=" + fmt(am), res.value);
    boundary_ok = boundary_ok && std::abs(res.value) <= 1e-4;
  }
  cr.checks.push_back({"series value at |z| = 1 - 1e-6 is <= 1e-4", boundary_ok});

  // Removability, literal form per the stated tolerance.
  std::vector<double> radii{1e-2, 1e-4, 1e-6};
  bool intent_ok = true;
  for (double am : {0.3, 0.9}) {
    PuncturedDiskPoint a(am, 0.0);
    auto values = removable_singularity_probe(a, radii, 100000);
    double limit = std::log(1.0 / am);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      double dev = std::abs(values[i] - limit);
      double exact_dev = std::abs(
          greens_disk_closed(a.as_disk(), DiskPoint(radii[i], 0.0)) - limit);
      add_row(cr.report, "probe_dev_a=" + fmt(am) + "_z=" + fmt(radii[i]), dev);
      bool point_ok = dev <= 1e-4;
      Check c;
      c.label = "probe(a=" + fmt(am) + ", z=" + fmt(radii[i]) +
                ") within 1e-4 of ln(1/|a|) [literal; exact-math deviation " +
                fmt(exact_dev) + "]";
      c.pass = point_ok;
      // The exact kernel itself violates the stated tolerance here; no
      // implementation can pass.  See the analysis in the file header.
      c.unattainable = !point_ok && exact_dev > 1e-4;
      cr.checks.push_back(c);
      intent_ok = intent_ok &&
                  std::abs(values[i] - greens_disk_closed(a.as_disk(),
                                                          DiskPoint(radii[i], 0.0))) <=
                      1e-9;
    }
    intent_ok = intent_ok && std::abs(values.back() - limit) <= 1e-4;
  }
  cr.checks.push_back({"[intent] every probe equals the same-z closed form to 1e-9 "
                       "and the deepest probe is within 1e-4 of ln(1/|a|)",
                       intent_ok});
  return cr;
}

Criterion criterion3() {
  Criterion cr;
  cr.name = "criterion-3 harmonicity";
  cr.report.command = cr.name;
  cr.report.include_wall_time = false;
  cr.report.columns = {"quantity", "value"};

  const Complex a(0.3, 0.2);
  std::mt19937_64 rng(20250813);
  std::uniform_real_distribution<double> box(-0.85, 0.85), rad(0.02, 0.1);
  struct Circle {
    Complex c;
    double r;
  };
  std::vector<Circle> circles;
  while (circles.size() < 100) {
    Complex c(box(rng), box(rng));
    double r = rad(rng);
    if (std::abs(c) + r > 0.95) continue;       // stay inside the disk
    if (std::abs(c - a) < r + 0.05) continue;   // away from the pole
    if (std::abs(c) < r + 0.05) continue;       // away from the puncture
    circles.push_back({c, r});
  }

  std::vector<double> res_closed(circles.size()), res_series(circles.size());
  parallel_chunks(circles.size(), 4, [&](std::size_t, std::size_t b, std::size_t e) {
    CircleQuadrature q(256);
    for (std::size_t i = b; i < e; ++i) {
      auto closed_fn = [&](ComplexPoint p) {
        return greens_disk_closed(DiskPoint(a), DiskPoint(p));
      };
      auto series_fn = [&](ComplexPoint p) {
        return greens_disk_series(PuncturedDiskPoint(a), PuncturedDiskPoint(p), 10000)
            .value;
      };
      res_closed[i] = mean_value_residual(closed_fn, ComplexPoint(circles[i].c),
                                          circles[i].r, q);
      res_series[i] = mean_value_residual(series_fn, ComplexPoint(circles[i].c),
                                          circles[i].r, q);
    }
  });
  double worst_closed = 0.0, worst_series = 0.0;
  for (std::size_t i = 0; i < circles.size(); ++i) {
    worst_closed = std::max(worst_closed, res_closed[i]);
    worst_series = std::max(worst_series, res_series[i]);
  }
  add_row(cr.report, "worst_closed_residual", worst_closed);
  add_row(cr.report, "worst_series_residual", worst_series);
  cr.checks.push_back({"closed-form mean-value residual <= 1e-8 on 100 circles (worst " +
                       fmt(worst_closed) + ")",
                       worst_closed <= 1e-8});
  cr.checks.push_back({"series (N = 1e4) mean-value residual <= 1e-8 on 100 circles (worst " +
                       fmt(worst_series) + ")",
                       worst_series <= 1e-8});
  return cr;
}

Criterion criterion4() {
  Criterion cr;
  cr.name = "criterion-4 product-identities";
  cr.report.command = cr.name;
  cr.report.include_wall_time = false;
  cr.report.columns = {"quantity", "value"};

  auto sh = sinh_product(1.0, 100000);
  auto ch = cosh_product(1.0, 100000);
  auto [si, _co_half] = sin_cos_products(pi / 2.0, 100000);
  auto [_si1, co] = sin_cos_products(1.0, 100000);
  double e_sh = std::abs(sh.value - std::sinh(1.0));
  double e_ch = std::abs(ch.value - std::cosh(1.0));
  double e_si = std::abs(si.value - 1.0);
  double e_co = std::abs(co.value - std::cos(1.0));
  add_row(cr.report, "sinh1_abs_error", e_sh);
  add_row(cr.report, "cosh1_abs_error", e_ch);
  add_row(cr.report, "sin_pi_half_abs_error", e_si);
  add_row(cr.report, "cos1_abs_error", e_co);
  cr.checks.push_back({"sinh(1) within 1e-5 at N = 1e5", e_sh <= 1e-5});
  cr.checks.push_back({"cosh(1) within 1e-5 at N = 1e5", e_ch <= 1e-5});
  cr.checks.push_back({"sin(pi/2) within 1e-5 at N = 1e5", e_si <= 1e-5});
  cr.checks.push_back({"cos(1) within 1e-4 at N = 1e5", e_co <= 1e-4});

  auto mi = mirror_product(ProductParams(pi, 1.0, 1.0), 100000);
  double cosh_sq = std::cosh(1.0) * std::cosh(1.0);
  double e_mi = std::abs(mi.value - cosh_sq);
  add_row(cr.report, "mirror_pi_1_1_abs_error", e_mi);
  cr.checks.push_back({"mirror(pi, 1, 1) matches cosh^2(1) within its residual bound",
                       e_mi <= mi.value_tolerance() + 1e-12});

  std::mt19937_64 rng(20250814);
  std::uniform_real_distribution<double> bs(-3.0, 3.0), rs(0.3, 2.5);
  bool chain = true;
  int tested = 0;
  double worst_gap = 0.0;
  while (tested < 5) {
    double b = bs(rng), r = rs(rng), c = rs(rng);
    if (std::abs(r - c) < 0.05) continue;
    ++tested;
    auto prod = mirror_product(ProductParams(b, r, c), 10000);
    auto series = greens_disk_series(PuncturedDiskPoint(std::exp(-r), 0.0),
                                     PuncturedDiskPoint(std::polar(std::exp(-c), b)),
                                     10000);
    double via = std::exp(2.0 * series.value);
    double combined = std::abs(via) * std::expm1(2.0 * series.tail_bound +
                                                 prod.residual_bound) +
                      1e-11 * std::abs(via);
    double gap = std::abs(via - prod.value);
    worst_gap = std::max(worst_gap, gap / std::abs(via));
    chain = chain && gap <= combined;
  }
  add_row(cr.report, "chain_worst_relative_gap", worst_gap);
  cr.checks.push_back({"disk-series <-> mirror-product chain holds on 5 random triples",
                       chain});
  return cr;
}

Criterion criterion5() {
  Criterion cr;
  cr.name = "criterion-5 hardy-thresholds";
  cr.report.command = cr.name;
  cr.report.include_wall_time = false;
  cr.report.columns = {"quantity", "value"};

  auto kp = finiteness_probes(koebe_map(), {0.4, 0.6});
  auto wp = finiteness_probes(wedge_map(pi / 2.0), {1.6, 2.4});
  add_row(cr.report, "koebe_p0.4_last_ratio", kp[0].ratios.back());
  add_row(cr.report, "koebe_p0.6_last_ratio", kp[1].ratios.back());
  add_row(cr.report, "wedge_p1.6_last_ratio", wp[0].ratios.back());
  add_row(cr.report, "wedge_p2.4_last_ratio", wp[1].ratios.back());
  cr.checks.push_back({"Koebe converging verdict at p = 0.4",
                       kp[0].verdict == MeanGrowth::Converging});
  cr.checks.push_back({"Koebe diverging verdict at p = 0.6",
                       kp[1].verdict == MeanGrowth::Diverging});
  cr.checks.push_back({"wedge(pi/2) converging verdict at p = 1.6",
                       wp[0].verdict == MeanGrowth::Converging});
  cr.checks.push_back({"wedge(pi/2) diverging verdict at p = 2.4",
                       wp[1].verdict == MeanGrowth::Diverging});

  bool hansen_ok = true;
  double worst = 0.0;
  for (double alpha : {pi / 3.0, pi / 2.0, pi, 1.5 * pi}) {
    double t = hansen_threshold(wedge_domain(alpha), 50.0, 65536);
    double dev = std::abs(t - pi / alpha);
    worst = std::max(worst, dev);
    hansen_ok = hansen_ok && dev <= 1e-3;
  }
  add_row(cr.report, "hansen_worst_dev", worst);
  cr.checks.push_back({"hansen threshold reproduces pi/alpha within 1e-3 (worst " +
                       fmt(worst) + ")",
                       hansen_ok});
  return cr;
}

Criterion criterion6() {
  Criterion cr;
  cr.name = "criterion-6 pl-sharpness";
  cr.report.command = cr.name;
  cr.report.include_wall_time = false;
  cr.report.columns = {"quantity", "value"};

  for (double alpha : {pi / 2.0, pi}) {
    auto rep = sharpness_demo(alpha);
    std::string tag = "alpha=" + fmt(alpha);
    add_row(cr.report, "boundary_sup_" + tag, rep.boundary_sup_value);
    add_row(cr.report, "p_fit_" + tag, rep.fit.p);
    add_row(cr.report, "witness_value_" + tag, rep.witness_value);
    cr.checks.push_back({"boundary sup of exp(z^{pi/alpha}) = 1 within 1e-9 (" + tag + ")",
                         std::abs(rep.boundary_sup_value - 1.0) <= 1e-9});
    double target = pi / alpha;
    cr.checks.push_back({"growth fit within 5% of pi/alpha (" + tag + ")",
                         std::abs(rep.fit.p - target) <= 0.05 * target});
    cr.checks.push_back({"verdict reports hypothesis-violated (" + tag + ")",
                         rep.verdict.conclusion == PLConclusion::HypothesisViolated});
    cr.checks.push_back({"interior samples exceed 1e6 at radius (ln 1e6)^{alpha/pi} (" +
                         tag + ")",
                         rep.witness_value > 1e6 * (1.0 - 1e-10)});
  }
  return cr;
}

Criterion criterion7() {
  Criterion cr;
  cr.name = "criterion-7 subharmonicity";
  cr.report.command = cr.name;
  cr.report.include_wall_time = false;
  cr.report.columns = {"quantity", "value"};

  std::vector<AnalyticFunctionSpec> catalog{
      exp_function(pi / 2.0), exp_square_function(), reciprocal_shift_function(),
      coordinate_function(), constant_function(Complex(2.5, 0.0))};
  std::mt19937_64 rng(20250817);
  std::uniform_real_distribution<double> rad(0.5, 3.0), frac(-0.4, 0.4),
      rho_d(0.05, 0.25);
  CircleQuadrature q(16384);
  double worst = -inf;
  int used = 0;
  while (used < 100) {
    double alpha = pi / 2.0;
    double r0 = rad(rng), th = frac(rng) * alpha, rho = rho_d(rng);
    if (r0 * std::sin(0.5 * alpha - std::abs(th)) < rho) continue;
    ++used;
    ComplexPoint center(std::polar(r0, th));
    for (const auto& f : catalog)
      worst = std::max(worst, subharmonic_residual(f, center, rho, q));
  }
  add_row(cr.report, "worst_residual", worst);
  cr.checks.push_back({"log+|f| sub-mean-value residual <= 1e-8 over 100 random "
                       "circles x catalog (worst " + fmt(worst) + ")",
                       worst <= 1e-8});
  return cr;
}

Criterion criterion8() {
  Criterion cr;
  cr.name = "criterion-8 monte-carlo-oracle";
  cr.report.command = cr.name;
  cr.report.include_wall_time = false;
  cr.report.columns = {"quantity", "value"};

  MCConfig cfg(20000, 1e-4, 42, DiskPoint(0.0, 0.0));
  auto fns = default_test_functions();
  std::vector<OccupationFunctional> fs;
  for (auto& t : fns) fs.push_back(t.f);
  auto ests = occupation_estimates(cfg, fs);

  double exit_dev = std::abs(ests[0].mean - 0.5);
  double exit_tol = 0.02 * 0.5 + 3.0 * ests[0].std_error;
  add_row(cr.report, "mean_exit_time", ests[0].mean);
  add_row(cr.report, "mean_exit_std_error", ests[0].std_error);
  cr.checks.push_back({"mean exit time within 2% + 3 sigma of 0.5 (dev " +
                       fmt(exit_dev) + ", tol " + fmt(exit_tol) + ")",
                       exit_dev <= exit_tol});

  const double occ_target = 0.2982871;
  double occ_dev = std::abs(ests[1].mean - occ_target);
  double occ_tol = 0.03 * occ_target + 3.0 * ests[1].std_error;
  add_row(cr.report, "occupation_half_disk", ests[1].mean);
  cr.checks.push_back({"occupation of |z| < 1/2 within 3% + 3 sigma of 0.2982871 (dev " +
                       fmt(occ_dev) + ")",
                       occ_dev <= occ_tol});

  auto fit = greens_constant_fit(cfg, fns);
  double kappa_dev = std::abs(fit.kappa - 1.0 / pi) * pi;
  add_row(cr.report, "kappa", fit.kappa);
  cr.checks.push_back({"greens_constant_fit kappa within 5% of 1/pi (rel dev " +
                       fmt(kappa_dev) + ")",
                       kappa_dev <= 0.05 && !fit.conditioning_warning});

  // Module invariant: discrete monitoring detects the exit late, and the
  // finer step is closer to the exact value 1/2.
  MCConfig coarse(20000, 1e-3, 42, DiskPoint(0.0, 0.0));
  auto coarse_est = occupation_estimates(coarse, {fs[0]})[0];
  add_row(cr.report, "mean_exit_time_dt_1e-3", coarse_est.mean);
  cr.checks.push_back({"exit-time bias shrinks with the step (dt 1e-3: " +
                       fmt(coarse_est.mean) + ", dt 1e-4: " + fmt(ests[0].mean) + ")",
                       coarse_est.mean > 0.5 &&
                           std::abs(ests[0].mean - 0.5) <
                               std::abs(coarse_est.mean - 0.5)});
  return cr;
}

using CriterionFn = Criterion (*)();

std::string serialize_all(const std::vector<Criterion>& cs) {
  std::ostringstream os;
  for (const auto& c : cs) write_json(c.report, os);
  return os.str();
}

}  // namespace

int main() {
  std::vector<CriterionFn> fns{criterion1, criterion2, criterion3, criterion4,
                               criterion5, criterion6, criterion7, criterion8};

  auto run_all = [&] {
    std::vector<Criterion> out;
    for (auto fn : fns) {
      auto t0 = std::chrono::steady_clock::now();
      Criterion c = fn();
      c.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      out.push_back(std::move(c));
    }
    return out;
  };

  auto t0 = std::chrono::steady_clock::now();
  auto first = run_all();

  bool attainable_all = true;
  bool literal_all = true;
  for (const auto& c : first) {
    bool lit = c.literal_pass();
    bool att = c.attainable_pass();
    attainable_all = attainable_all && att;
    literal_all = literal_all && lit;
    std::printf("%s %s (%.2f s)\n",
                lit ? "PASS" : (att ? "FAIL*" : "FAIL"), c.name.c_str(), c.seconds);
    for (const auto& ch : c.checks) {
      const char* mark = ch.pass ? "  pass " : (ch.unattainable ? "  FAIL* " : "  FAIL ");
      std::printf("%s- %s\n", mark, ch.label.c_str());
    }
  }

  // Criterion 9: identical seeds and flags must reproduce identical bytes.
  auto t9 = std::chrono::steady_clock::now();
  std::string s1 = serialize_all(first);
  auto second = run_all();
  std::string s2 = serialize_all(second);
  bool deterministic = s1 == s2;
  double sec9 =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t9).count();
  std::printf("%s criterion-9 determinism (byte-identical reports across reruns) (%.2f s)\n",
              deterministic ? "PASS" : "FAIL", sec9);

  double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int literal_green = 0;
  for (const auto& c : first) literal_green += c.literal_pass() ? 1 : 0;
  literal_green += deterministic ? 1 : 0;
  std::printf("---\n%d/9 criteria green in literal form; total %.1f s\n", literal_green,
              total);
  if (!literal_all)
    std::printf("FAIL* marks literal sub-checks that exact mathematics puts beyond the "
                "stated tolerance (the same-z closed form already violates them); the "
                "[intent] checks demonstrate the underlying property. The derivation is "
                "in the header comment of tests/acceptance/acceptance_main.cpp.\n");

  if (!attainable_all || !deterministic) return 1;
  return 0;
}
