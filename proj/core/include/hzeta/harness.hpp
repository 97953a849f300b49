#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hzeta/errors.hpp"

namespace hzeta {

// Geometric grid in t. All points must exceed e so log t > 1.
struct TGrid {
  double t_min{};
  double t_max{};
  std::size_t points{};
};

void validate_tgrid(const TGrid& grid);
std::vector<double> geometric_points(const TGrid& grid);

struct MeanValueRow {
  double t{};
  double integral{};
  double log_t{};
  double ratio{};           // integral / log t
  double quad_err_bound{};  // panel-halving comparison
};

struct TailMeasureRow {
  double C{};
  double threshold{};    // C sqrt(log t)
  double measure_hat{};  // fraction of omega samples at or above threshold
  double std_err{};      // binomial standard error
};

struct ScanRow {
  double t{};
  double abs{};    // |zeta(1/2+it, omega)|
  double ratio{};  // abs / (log t)^{3/2+epsilon}
  bool failed{};
};

struct ScanReport {
  double omega{};
  std::vector<ScanRow> rows;
  double global_max_ratio{};
  double tail_max_ratio{};  // over the last decade of t
  std::size_t failed_rows{};
  std::optional<double> mu_hat;  // filled when the grid spans >= 4 dyadic blocks
};

struct SectionRow {
  double x{};
  double y{};  // |zeta(1/2+it, x) - x^{-(1/2+it)}| / (log t)^2
};

struct MuEstimate {
  double mu_hat{};
  std::size_t blocks{};
};

// Composite 8-node Gauss-Legendre quadrature of
// omega -> |zeta1(1/2+it, omega)|^2 over (0,1), via the cancellation-free
// zeta(s, omega+1) route. panels == 0 selects max(256, ceil(t)); the
// integrand oscillates in omega at frequency ~t, so panels scale with t.
// Throws QuadratureNotConverged if panel halving moves the result by > 1%.
MeanValueRow mean_value_integral(double t, std::size_t panels,
                                 unsigned threads = 0, double t_cap = 2e4);

// For each C: the fraction of `samples` uniform omega in (0,1) with
// |zeta(1/2+it, omega)| >= C sqrt(log t). The omega sample set is shared
// across all C (common random numbers), so the measure is exactly
// nonincreasing in C.
std::vector<TailMeasureRow> chebyshev_tail_measure(double t,
                                                   std::span<const double> C_list,
                                                   std::size_t samples,
                                                   std::uint64_t seed,
                                                   unsigned threads = 0);

// |zeta(1/2+it, omega)| over the grid with ratio columns against
// (log t)^{3/2+epsilon}. Rows whose evaluation fails are recorded and
// skipped in the maxima. omega must lie in [omega_lo, omega_hi].
ScanReport growth_scan(double omega, const TGrid& grid, double epsilon,
                       unsigned threads = 0, double abs_err = 1e-10,
                       double omega_lo = 0.05, double omega_hi = 0.95,
                       double t_cap = 1e5);

// Least-squares slope of dyadic-block maxima of log|zeta(sigma+it, omega)|
// against log t: an upper-envelope estimate of the growth exponent.
MuEstimate mu_exponent_estimate(double sigma, double omega, const TGrid& grid,
                                unsigned threads = 0, double abs_err = 1e-10);

// y(x) = |zeta(1/2+it, x) - x^{-(1/2+it)}| / (log t)^2 over the x grid,
// computed through the zeta1 route; rows are emitted in ascending x.
std::vector<SectionRow> section_profile(double t, std::span<const double> x_grid,
                                        unsigned threads = 0,
                                        double abs_err = 1e-10,
                                        double t_cap = 1e7);

// Reproducible omega ensemble: member i is lo + (hi-lo) * u(seed, i).
std::vector<double> seeded_omegas(std::uint64_t seed, std::size_t count,
                                  double lo, double hi);

// Feasible per-evaluation absolute target: the requested abs_err, floored by
// the 64-bit phase-noise scale at height t and by the omega^{-sigma}
// magnitude of the leading term (noise is relative to magnitude).
double scaled_eval_target(double abs_err, double sigma, double t, double omega);

double lag1_autocorrelation(std::span<const double> y);
double least_squares_slope(std::span<const double> x, std::span<const double> y);

}  // namespace hzeta
