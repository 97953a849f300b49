#include "hzeta/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "hzeta/parallel.hpp"
#include "hzeta/rng.hpp"
#include "hzeta/special.hpp"

namespace hzeta {

namespace {

constexpr double kE = std::numbers::e;

// 8-node Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    -0.9602898564975362, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498, 0.5255324099163290,
    0.7966664774136267, 0.9602898564975362};
constexpr std::array<double, 8> kGlWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

double abs_zeta_half_line(double t, double omega, double abs_err) {
  return std::abs(hurwitz_zeta(SPoint{0.5, t}, OmegaParam(omega),
                               scaled_eval_target(abs_err, 0.5, t, omega))
                      .value);
}

// Composite GL8 integral of |zeta1(1/2+it, .)|^2 with `panels` panels.
// Per-panel results land in an index-keyed buffer and are reduced in fixed
// order, so the value is independent of the worker count.
double quadrature_pass(double t, std::size_t panels, unsigned threads,
                       double abs_err) {
  std::vector<double> partial(panels, 0.0);
  const double width = 1.0 / static_cast<double>(panels);
  parallel_for(panels, threads, [&](std::size_t p) {
    const double lo = static_cast<double>(p) * width;
    const double mid = lo + 0.5 * width;
    const double h2 = 0.5 * width;
    double acc = 0.0;
    for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
      const double x = mid + h2 * kGlNodes[i];
      const EvalResult r =
          hurwitz_zeta(SPoint{0.5, t}, OmegaParam(1.0 + x),
                       scaled_eval_target(abs_err, 0.5, t, 1.0 + x));
      acc += kGlWeights[i] * std::norm(r.value);
    }
    partial[p] = acc * h2;
  });
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

}  // namespace

void validate_tgrid(const TGrid& grid) {
  if (!(grid.t_min > kE)) throw DomainError("grid requires t_min > e");
  if (!(grid.t_min < grid.t_max)) throw DomainError("grid requires t_min < t_max");
  if (grid.points < 2) throw DomainError("grid requires at least 2 points");
}

std::vector<double> geometric_points(const TGrid& grid) {
  validate_tgrid(grid);
  std::vector<double> pts(grid.points);
  const double log_ratio = std::log(grid.t_max / grid.t_min);
  for (std::size_t i = 0; i < grid.points; ++i) {
    const double frac =
        static_cast<double>(i) / static_cast<double>(grid.points - 1);
    pts[i] = grid.t_min * std::exp(log_ratio * frac);
  }
  return pts;
}

MeanValueRow mean_value_integral(double t, std::size_t panels, unsigned threads,
                                 double t_cap) {
  if (!(t >= 10.0 && t <= t_cap)) {
    throw DomainError("mean_value_integral requires t in [10, t_cap]");
  }
  const std::size_t min_panels =
      std::max<std::size_t>(256, static_cast<std::size_t>(std::ceil(t)));
  if (panels == 0) panels = min_panels;
  if (panels < min_panels) {
    throw DomainError("panels must be >= max(256, ceil(t))");
  }

  const double abs_err = 1e-10;
  const double integral = quadrature_pass(t, panels, threads, abs_err);
  const double coarse =
      quadrature_pass(t, (panels + 1) / 2, threads, abs_err);
  const double quad_err = std::fabs(integral - coarse);
  if (quad_err > 0.01 * integral) {
    throw QuadratureNotConverged("panel halving moved the integral by > 1%");
  }

  MeanValueRow row;
  row.t = t;
  row.integral = integral;
  row.log_t = std::log(t);
  row.ratio = integral / row.log_t;
  row.quad_err_bound = quad_err;
  return row;
}

std::vector<TailMeasureRow> chebyshev_tail_measure(double t,
                                                   std::span<const double> C_list,
                                                   std::size_t samples,
                                                   std::uint64_t seed,
                                                   unsigned threads) {
  if (!(t >= 10.0)) throw DomainError("chebyshev_tail_measure requires t >= 10");
  if (samples < 1000) throw DomainError("samples must be >= 1000");
  if (C_list.empty()) throw DomainError("C_list must be nonempty");
  for (double c : C_list) {
    if (!(c > 0.0)) throw DomainError("C values must be positive");
  }

  // One shared omega sample set across every C: the measure is then exactly
  // nonincreasing in C rather than merely statistically so.
  std::vector<double> values(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    const double omega = counter_uniform01(seed, i, 0);
    values[i] = abs_zeta_half_line(t, omega, 1e-10);
  });

  const double sqrt_log_t = std::sqrt(std::log(t));
  std::vector<TailMeasureRow> rows;
  rows.reserve(C_list.size());
  for (const double C : C_list) {
    const double threshold = C * sqrt_log_t;
    std::size_t count = 0;
    for (const double v : values) {
      if (v >= threshold) ++count;
    }
    const double p = static_cast<double>(count) / static_cast<double>(samples);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    rows.push_back({C, threshold, p, se});
  }
  return rows;
}

ScanReport growth_scan(double omega, const TGrid& grid, double epsilon,
                       unsigned threads, double abs_err, double omega_lo,
                       double omega_hi, double t_cap) {
  validate_tgrid(grid);
  if (!(omega >= omega_lo && omega <= omega_hi)) {
    throw DomainError("scan omega outside the configured window");
  }
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
  if (grid.t_max > t_cap) throw DomainError("grid.t_max exceeds the cap");

  const std::vector<double> ts = geometric_points(grid);
  ScanReport report;
  report.omega = omega;
  report.rows.resize(ts.size());

  parallel_for(ts.size(), threads, [&](std::size_t i) {
    ScanRow& row = report.rows[i];
    row.t = ts[i];
    try {
      row.abs = abs_zeta_half_line(ts[i], omega, abs_err);
      row.ratio = row.abs / std::pow(std::log(ts[i]), 1.5 + epsilon);
      row.failed = false;
    } catch (const Error&) {
      row.abs = std::numeric_limits<double>::quiet_NaN();
      row.ratio = std::numeric_limits<double>::quiet_NaN();
      row.failed = true;
    }
  });

  const double tail_lo = grid.t_max / 10.0;
  double global = 0.0, tail = 0.0;
  std::size_t failed = 0;
  for (const ScanRow& row : report.rows) {
    if (row.failed) {
      ++failed;
      continue;
    }
    global = std::max(global, row.ratio);
    if (row.t >= tail_lo) tail = std::max(tail, row.ratio);
  }
  report.global_max_ratio = global;
  report.tail_max_ratio = tail;
  report.failed_rows = failed;

  // Upper-envelope exponent from the same rows, when enough dyadic blocks.
  std::map<int, std::pair<double, double>> blocks;  // j -> (max log|z|, log t)
  for (const ScanRow& row : report.rows) {
    if (row.failed || !(row.abs > 0.0)) continue;
    const int j = static_cast<int>(std::floor(std::log2(row.t)));
    const double la = std::log(row.abs);
    auto it = blocks.find(j);
    if (it == blocks.end() || la > it->second.first) {
      blocks[j] = {la, std::log(row.t)};
    }
  }
  if (blocks.size() >= 4) {
    std::vector<double> xs, ys;
    for (const auto& [j, v] : blocks) {
      xs.push_back(v.second);
      ys.push_back(v.first);
    }
    report.mu_hat = least_squares_slope(xs, ys);
  }
  return report;
}

MuEstimate mu_exponent_estimate(double sigma, double omega, const TGrid& grid,
                                unsigned threads, double abs_err) {
  validate_tgrid(grid);
  if (grid.points < 100) throw DomainError("mu estimate requires >= 100 points");
  if (!(sigma >= -1.0 && sigma <= 4.0)) {
    throw DomainError("mu estimate requires sigma in [-1, 4]");
  }

  const std::vector<double> ts = geometric_points(grid);
  std::vector<double> log_abs(ts.size());
  parallel_for(ts.size(), threads, [&](std::size_t i) {
    const EvalResult r =
        hurwitz_zeta(SPoint{sigma, ts[i]}, OmegaParam(omega),
                     scaled_eval_target(abs_err, sigma, ts[i], omega));
    log_abs[i] = std::log(std::abs(r.value));
  });

  std::map<int, std::pair<double, double>> blocks;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!std::isfinite(log_abs[i])) continue;
    const int j = static_cast<int>(std::floor(std::log2(ts[i])));
    auto it = blocks.find(j);
    if (it == blocks.end() || log_abs[i] > it->second.first) {
      blocks[j] = {log_abs[i], std::log(ts[i])};
    }
  }
  if (blocks.size() < 4) {
    throw InsufficientBlocks("fewer than 4 dyadic t-blocks in the grid");
  }
  std::vector<double> xs, ys;
  for (const auto& [j, v] : blocks) {
    xs.push_back(v.second);
    ys.push_back(v.first);
  }
  return {least_squares_slope(xs, ys), blocks.size()};
}

std::vector<SectionRow> section_profile(double t, std::span<const double> x_grid,
                                        unsigned threads, double abs_err,
                                        double t_cap) {
  if (!(t > kE)) throw DomainError("section_profile requires t > e");
  if (!(t <= t_cap)) throw DomainError("t exceeds the cap");
  if (x_grid.empty()) throw DomainError("x grid must be nonempty");
  for (double x : x_grid) {
    if (!(x >= 0.02 && x <= 1.0)) {
      throw DomainError("x grid must lie within [0.02, 1]");
    }
  }

  std::vector<double> xs(x_grid.begin(), x_grid.end());
  std::sort(xs.begin(), xs.end());

  const double denom = std::pow(std::log(t), 2.0);
  std::vector<SectionRow> rows(xs.size());
  parallel_for(xs.size(), threads, [&](std::size_t i) {
    const EvalResult r = zeta1(SPoint{0.5, t}, OmegaParam(xs[i]),
                               scaled_eval_target(abs_err, 0.5, t, 1.0));
    rows[i] = {xs[i], std::abs(r.value) / denom};
  });
  return rows;
}

std::vector<double> seeded_omegas(std::uint64_t seed, std::size_t count,
                                  double lo, double hi) {
  if (!(lo < hi)) throw DomainError("seeded_omegas requires lo < hi");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = lo + (hi - lo) * counter_uniform01(seed, i, 0);
  }
  return out;
}

double scaled_eval_target(double abs_err, double sigma, double t,
                          double omega) {
  const double magnitude = std::max(1.0, std::pow(omega, -sigma));
  return std::max(abs_err, 1e-13 * (1.0 + std::fabs(t)) * magnitude);
}

double lag1_autocorrelation(std::span<const double> y) {
  if (y.size() < 3) throw DomainError("autocorrelation needs >= 3 points");
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = y[i] - mean;
    den += d * d;
    if (i + 1 < y.size()) num += d * (y[i + 1] - mean);
  }
  if (den == 0.0) return 0.0;
  return num / den;
}

double least_squares_slope(std::span<const double> x,
                           std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DomainError("slope needs >= 2 equal-length samples");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  if (den == 0.0) throw DomainError("degenerate abscissa in slope fit");
  return num / den;
}

}  // namespace hzeta
