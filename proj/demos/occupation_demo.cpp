// Occupation times of Brownian motion killed at the disk exit, compared
// against kernel area integrals scaled by the fitted constant.

#include <cstdio>

#include "potentia/brownian.hpp"

using namespace potentia;

int main() {
  MCConfig cfg(5000, 1e-3, 2024, DiskPoint(0.25, 0.1));
  auto fns = default_test_functions();

  auto fit = greens_constant_fit(cfg, fns);
  std::printf("start (%.2f, %.2f), %ld paths, dt %.0e\n", cfg.start.value.re,
              cfg.start.value.im, cfg.path_count, cfg.step_size);
  std::printf("fitted kappa: %.6f   (1/pi = %.6f)\n\n", fit.kappa, 1.0 / pi);
  std::printf("%-10s  %12s  %12s  %14s\n", "functional", "mc mean", "std error",
              "kappa * integral");
  for (std::size_t j = 0; j < fns.size(); ++j)
    std::printf("%-10s  %12.6f  %12.6f  %14.6f\n", fit.names[j].c_str(),
                fit.estimates[j].mean, fit.estimates[j].std_error,
                fit.kappa * fit.area_integrals[j]);
  return 0;
}
