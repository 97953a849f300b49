#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hzeta/harness.hpp"
#include "hzeta/menchoff.hpp"
#include "hzeta/parallel.hpp"
#include "hzeta/report.hpp"
#include "hzeta/rng.hpp"
#include "hzeta/special.hpp"
#include "hzeta/version.hpp"

namespace hzeta::cli {

namespace {

struct CommonOpts {
  std::string seed_str{"0"};
  unsigned threads{0};
  CLI::Option* threads_opt{nullptr};
  std::string out{"-"};
  std::string format{"csv"};
  double abs_err{1e-10};
  bool timing{false};
};

std::string check_seed(const std::string& s) {
  if (s == "random") return {};
  if (s.empty()) return "seed must be a nonnegative integer or 'random'";
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      return "seed must be a nonnegative integer or 'random'";
    }
  }
  errno = 0;
  char* end = nullptr;
  (void)std::strtoull(s.c_str(), &end, 10);
  if (errno == ERANGE || end != s.c_str() + s.size()) {
    return "seed out of 64-bit range";
  }
  return {};
}

void add_common(CLI::App* sub, CommonOpts& c) {
  sub->add_option("--seed", c.seed_str,
                  "RNG seed; 'random' draws from the entropy source")
      ->capture_default_str()
      ->check(CLI::Validator(check_seed, "SEED"));
  c.threads_opt =
      sub->add_option("--threads", c.threads,
                      "worker threads; 0 = all hardware threads "
                      "(LINDELOEF_THREADS applies when the flag is absent)")
          ->capture_default_str();
  sub->add_option("--out", c.out, "output path, '-' for standard output")
      ->capture_default_str();
  sub->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--abs-err", c.abs_err, "target absolute evaluation error")
      ->check(CLI::Range(1e-13, 1e-2))
      ->capture_default_str();
  sub->add_flag("--timing", c.timing, "include wall time in the emitted file");
}

std::uint64_t resolve_seed(const std::string& s) {
  if (s == "random") {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  return std::strtoull(s.c_str(), nullptr, 10);
}

unsigned resolve_thread_flag(const CommonOpts& c) {
  if (c.threads_opt != nullptr && c.threads_opt->count() > 0) return c.threads;
  if (const char* env = std::getenv("LINDELOEF_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v <= 1u << 20) {
      return static_cast<unsigned>(v);
    }
  }
  return 0;
}

std::string fmt(double v) { return format_double(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }

// Echo every flag that shapes the result. The worker count only affects
// scheduling, never values; keeping it out of the file preserves the
// byte-identical-across-threads contract (it is reported on stderr).
void echo_common(Report& report, const RunConfig& cfg) {
  report.config.push_back({"format", cfg.format == Format::Csv ? "csv" : "json"});
  report.config.push_back({"abs_err", fmt(cfg.abs_err)});
}

std::vector<double> geometric_list(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double log_ratio = std::log(hi / lo);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo * std::exp(log_ratio * static_cast<double>(i) /
                           static_cast<double>(n - 1));
  }
  return out;
}

// ---------------------------------------------------------------- eval ----

struct EvalOpts {
  double sigma{0.5};
  double t{100.0};
  double omega{0.3};
};

void run_eval(const EvalOpts& o, const RunConfig& cfg, Report& report) {
  report.config.push_back({"sigma", fmt(o.sigma)});
  report.config.push_back({"t", fmt(o.t)});
  report.config.push_back({"omega", fmt(o.omega)});
  echo_common(report, cfg);
  report.columns = {"sigma", "t",         "omega", "re",    "im",
                    "abs",   "err_bound", "terms", "method"};

  const EvalResult r = hurwitz_zeta(
      SPoint{o.sigma, o.t}, OmegaParam(o.omega),
      scaled_eval_target(cfg.abs_err, o.sigma, o.t, o.omega));
  report.rows.push_back({o.sigma, o.t, o.omega, r.value.real(), r.value.imag(),
                         std::abs(r.value), r.abs_err_bound, r.terms_used,
                         std::string(method_name(r.method))});
  report.summary.push_back({"abs", Cell{std::abs(r.value)}});
  report.summary.push_back({"err_bound", Cell{r.abs_err_bound}});
}

// ------------------------------------------------------- identity-check ----

struct IdentityOpts {
  double t_min{1.0};
  double t_max{100.0};
  std::size_t t_points{34};
};

void run_identity_check(const IdentityOpts& o, const RunConfig& cfg,
                        Report& report) {
  report.config.push_back({"t_min", fmt(o.t_min)});
  report.config.push_back({"t_max", fmt(o.t_max)});
  report.config.push_back({"t_points", fmt(o.t_points)});
  echo_common(report, cfg);
  report.columns = {"identity", "sigma", "t", "omega", "rel_err"};

  const std::array<double, 3> sigmas = {0.5, 1.5, 2.5};
  const double base_target = std::min(cfg.abs_err, 1e-10);
  auto eval = [&](double sigma, double t, double omega) {
    return hurwitz_zeta(SPoint{sigma, t}, OmegaParam(omega),
                        scaled_eval_target(base_target, sigma, t, omega))
        .value;
  };
  auto rel = [](cplx lhs, cplx rhs) {
    return std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
  };

  double max_half = 0.0, max_shift = 0.0;
  // zeta(s, 1/2) = (2^s - 1) zeta(s)
  for (const double sigma : sigmas) {
    for (const double t : geometric_list(o.t_min, o.t_max, o.t_points)) {
      const cplx s{sigma, t};
      const cplx lhs = eval(sigma, t, 0.5);
      const cplx rhs = (std::exp(s * std::log(2.0)) - 1.0) * eval(sigma, t, 1.0);
      const double e = rel(lhs, rhs);
      max_half = std::max(max_half, e);
      report.rows.push_back({std::string("half"), sigma, t, 0.5, e});
    }
  }
  // zeta(s, omega) = omega^{-s} + zeta(s, omega+1)
  for (const double sigma : sigmas) {
    for (const double t : geometric_list(std::max(2.0, o.t_min), o.t_max, 4)) {
      for (int k = 1; k <= 9; ++k) {
        const double omega = 0.1 * k;
        const cplx s{sigma, t};
        const cplx lhs = eval(sigma, t, omega);
        const cplx rhs =
            std::exp(-s * std::log(omega)) + eval(sigma, t, omega + 1.0);
        const double e = rel(lhs, rhs);
        max_shift = std::max(max_shift, e);
        report.rows.push_back({std::string("shift"), sigma, t, omega, e});
      }
    }
  }
  report.summary.push_back({"max_rel_err_half", Cell{max_half}});
  report.summary.push_back({"max_rel_err_shift", Cell{max_shift}});
  report.summary.push_back({"max_rel_err", Cell{std::max(max_half, max_shift)}});
  report.summary.push_back(
      {"points", Cell{static_cast<std::uint64_t>(report.rows.size())}});
}

// --------------------------------------------------------- funceq-check ----

struct FuncEqOpts {
  double sigma{0.5};
  double t_min{5.0};
  double t_max{50.0};
  std::size_t t_points{10};
  double omega_min{0.1};
  double omega_max{0.9};
  std::size_t omega_points{9};
  bool skip_abs_point{false};
};

void run_funceq_check(const FuncEqOpts& o, const RunConfig& cfg,
                      Report& report) {
  report.config.push_back({"sigma", fmt(o.sigma)});
  report.config.push_back({"t_min", fmt(o.t_min)});
  report.config.push_back({"t_max", fmt(o.t_max)});
  report.config.push_back({"t_points", fmt(o.t_points)});
  report.config.push_back({"omega_min", fmt(o.omega_min)});
  report.config.push_back({"omega_max", fmt(o.omega_max)});
  report.config.push_back({"omega_points", fmt(o.omega_points)});
  report.config.push_back({"skip_abs_point", fmt(o.skip_abs_point)});
  echo_common(report, cfg);
  report.columns = {"sigma",    "t",            "omega", "K",
                    "residual", "budget_total", "eval_bound", "pass"};

  std::size_t failures = 0;
  double max_residual = 0.0;
  double abs_point_residual = 0.0;

  auto check_point = [&](double sigma, double t, double omega,
                         std::uint64_t K) -> double {
    const SPoint s{sigma, t};
    const auto [rhs, budget] = functional_eq_rhs(s, omega, K);
    // The sum side carries the reflected argument 1-s (conjugate point on
    // the critical line); evaluate the zeta side there.
    const SPoint reflected{1.0 - sigma, -t};
    const double scale = std::max(1.0, std::pow(omega, -reflected.sigma));
    const EvalResult lhs = hurwitz_zeta(
        reflected, OmegaParam(omega),
        std::max(1e-12, 1e-13 * (1.0 + std::fabs(t)) * scale));
    const double residual = std::abs(lhs.value - rhs.value);
    const bool pass = residual <= budget.total + lhs.abs_err_bound;
    if (!pass) ++failures;
    max_residual = std::max(max_residual, residual);
    report.rows.push_back({sigma, t, omega, static_cast<std::uint64_t>(K),
                           residual, budget.total, lhs.abs_err_bound, pass});
    return residual;
  };

  for (const double t : geometric_list(o.t_min, o.t_max, o.t_points)) {
    for (std::size_t j = 0; j < o.omega_points; ++j) {
      const double omega =
          o.omega_points == 1
              ? o.omega_min
              : o.omega_min + (o.omega_max - o.omega_min) *
                                  static_cast<double>(j) /
                                  static_cast<double>(o.omega_points - 1);
      const auto K = static_cast<std::uint64_t>(std::ceil(t * t));
      check_point(o.sigma, t, omega, K);
    }
  }
  if (!o.skip_abs_point) {
    // Absolutely convergent regime: sigma > 1, large K.
    abs_point_residual = check_point(2.0, 5.0, 0.3, 100'000);
  }

  report.summary.push_back({"failures", Cell{static_cast<std::uint64_t>(failures)}});
  report.summary.push_back({"max_residual", Cell{max_residual}});
  report.summary.push_back({"abs_point_residual", Cell{abs_point_residual}});
  report.summary.push_back(
      {"points", Cell{static_cast<std::uint64_t>(report.rows.size())}});
}

// ------------------------------------------------------------- rm-check ----

struct RmCheckOpts {
  int n{6};
  std::uint64_t trials{100'000};
};

void run_rm_check(const RmCheckOpts& o, const RunConfig& cfg, Report& report) {
  report.config.push_back({"n", fmt(o.n)});
  report.config.push_back({"trials", fmt(o.trials)});
  echo_common(report, cfg);
  report.columns = {"n", "trials", "rm_violations", "telescope_failures",
                    "max_sq_over_bound"};
  if (o.n < 0 || o.n > 20) throw DomainError("rm-check depth out of range");

  const int depths = o.n + 1;
  std::vector<std::uint64_t> trials_at(depths, 0), rm_viol(depths, 0),
      tel_fail(depths, 0);
  std::vector<double> max_ratio(depths, 0.0);

  for (std::uint64_t trial = 0; trial < o.trials; ++trial) {
    const int d = static_cast<int>(trial % static_cast<std::uint64_t>(depths));
    const std::size_t len = std::size_t{1} << (d + 1);
    std::vector<cplx> values(len);
    values[0] = 0.0;
    for (std::size_t j = 1; j < len; ++j) {
      const double re = 2.0 * counter_uniform01(cfg.seed, trial, 2 * j) - 1.0;
      const double im = 2.0 * counter_uniform01(cfg.seed, trial, 2 * j + 1) - 1.0;
      values[j] = {re, im};
    }
    const PrefixArray a(d, std::move(values));
    const double bound = rm_bound(a);
    const double max_sq = max_prefix_sq(a);
    ++trials_at[d];
    if (max_sq > bound) ++rm_viol[d];
    if (bound > 0.0) {
      max_ratio[d] = std::max(max_ratio[d], max_sq / bound);
    }

    // Telescoping along the chain of a seeded p.
    const std::uint64_t p =
        1 + counter_u64(cfg.seed, trial, 1ull << 40) % (len - 1);
    const DyadicChain chain = dyadic_chain(p, d);
    cplx sum = 0.0;
    double scale = 0.0;
    for (int k = 0; k <= d; ++k) {
      sum += a.values[chain.chain[k]] - a.values[chain.chain[k + 1]];
      scale = std::max(scale, std::abs(a.values[chain.chain[k]]));
    }
    scale = std::max(scale, 1e-30);
    if (std::abs(sum - a.values[p]) > 1e-12 * scale) ++tel_fail[d];
  }

  std::uint64_t total_viol = 0, total_tel = 0;
  double global_ratio = 0.0;
  for (int d = 0; d < depths; ++d) {
    report.rows.push_back({static_cast<std::int64_t>(d), trials_at[d],
                           rm_viol[d], tel_fail[d], max_ratio[d]});
    total_viol += rm_viol[d];
    total_tel += tel_fail[d];
    global_ratio = std::max(global_ratio, max_ratio[d]);
  }
  report.summary.push_back({"trials", Cell{o.trials}});
  report.summary.push_back({"violations", Cell{total_viol}});
  report.summary.push_back({"telescope_failures", Cell{total_tel}});
  report.summary.push_back({"max_sq_over_bound", Cell{global_ratio}});
}

// --------------------------------------------------------- lemma4-check ----

struct Lemma4Opts {
  std::vector<double> alphas{0.0, 0.5, 1.0};
  int m_max{7};
  std::uint64_t reps{10'000};
};

void run_lemma4_check(const Lemma4Opts& o, const RunConfig& cfg,
                      Report& report) {
  std::string alphas;
  for (std::size_t i = 0; i < o.alphas.size(); ++i) {
    if (i) alphas += ',';
    alphas += fmt(o.alphas[i]);
  }
  report.config.push_back({"alphas", alphas});
  report.config.push_back({"m_max", fmt(o.m_max)});
  report.config.push_back({"reps", fmt(o.reps)});
  echo_common(report, cfg);
  report.columns = {"alpha", "m", "empirical", "bound", "ratio", "pass"};

  std::uint64_t failures = 0;
  double worst = 0.0;
  for (const double alpha : o.alphas) {
    for (int m = 0; m <= o.m_max; ++m) {
      ArraySpec spec;
      spec.kernel = Kernel::PowerNoise;
      spec.alpha = alpha;
      spec.epsilon = 0.1;
      const auto [empirical, bound] = lemma4_empirical(m, spec, o.reps, cfg.seed);
      const double ratio = bound > 0.0 ? empirical / bound : 0.0;
      const bool pass = empirical <= bound;
      if (!pass) ++failures;
      worst = std::max(worst, ratio);
      report.rows.push_back(
          {alpha, static_cast<std::int64_t>(m), empirical, bound, ratio, pass});
    }
  }
  report.summary.push_back({"failures", Cell{failures}});
  report.summary.push_back({"max_ratio", Cell{worst}});
}

// ----------------------------------------------------------------- qlil ----

struct QlilOpts {
  std::string kernel{"hurwitz"};
  double alpha{0.5};
  double epsilon{0.1};
  std::uint64_t n_max{1ull << 16};
  double omega{0.3};
};

void run_qlil(const QlilOpts& o, const RunConfig& cfg, Report& report) {
  report.config.push_back({"kernel", o.kernel});
  report.config.push_back({"alpha", fmt(o.alpha)});
  report.config.push_back({"epsilon", fmt(o.epsilon)});
  report.config.push_back({"n_max", fmt(o.n_max)});
  report.config.push_back({"omega", fmt(o.omega)});
  echo_common(report, cfg);
  report.columns = {"n", "ratio", "is_dyadic"};

  ArraySpec spec;
  if (o.kernel == "hurwitz") {
    spec.kernel = Kernel::HurwitzPhase;
  } else if (o.kernel == "powernoise") {
    spec.kernel = Kernel::PowerNoise;
  } else if (o.kernel == "harmonic") {
    spec.kernel = Kernel::DeterministicHarmonic;
  } else {
    throw InvalidSpec("unknown kernel: " + o.kernel);
  }
  spec.alpha = o.alpha;
  spec.epsilon = o.epsilon;
  spec.seed = cfg.seed;

  const TrajectoryReport tr = qlil_trajectory(spec, o.n_max, o.omega);
  for (const TrajectoryRow& row : tr.rows) {
    report.rows.push_back({row.n, row.ratio, row.is_dyadic});
  }
  report.summary.push_back({"global_max_ratio", Cell{tr.global_max_ratio}});
  report.summary.push_back(
      {"last_block_max_ratio", Cell{tr.last_block_max_ratio}});
  if (!tr.diagnostics.empty()) {
    const DyadicDiagnostic& last = tr.diagnostics.back();
    report.summary.push_back({"s_ratio_last", Cell{last.s_ratio}});
    report.summary.push_back({"y_ratio_last", Cell{last.y_ratio}});
  }
}

// ------------------------------------------------------------ meanvalue ----

struct MeanValueOpts {
  std::vector<double> t_list{100.0, 1000.0, 10000.0};
  std::size_t panels{0};
  double t_cap{2e4};
};

void run_meanvalue(const MeanValueOpts& o, const RunConfig& cfg,
                   Report& report) {
  std::string ts;
  for (std::size_t i = 0; i < o.t_list.size(); ++i) {
    if (i) ts += ',';
    ts += fmt(o.t_list[i]);
  }
  report.config.push_back({"t_list", ts});
  report.config.push_back({"panels", fmt(o.panels)});
  report.config.push_back({"t_cap", fmt(o.t_cap)});
  echo_common(report, cfg);
  report.columns = {"t", "integral", "log_t", "ratio", "quad_err"};

  std::vector<double> logs, integrals;
  for (const double t : o.t_list) {
    const MeanValueRow row =
        mean_value_integral(t, o.panels, cfg.threads, o.t_cap);
    report.rows.push_back(
        {row.t, row.integral, row.log_t, row.ratio, row.quad_err_bound});
    logs.push_back(row.log_t);
    integrals.push_back(row.integral);
  }
  if (logs.size() >= 2) {
    report.summary.push_back(
        {"slope", Cell{least_squares_slope(logs, integrals)}});
  }
  double lo = 1e300, hi = 0.0;
  for (const auto& row : report.rows) {
    const double r = std::get<double>(row[3]);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  report.summary.push_back({"min_ratio", Cell{lo}});
  report.summary.push_back({"max_ratio", Cell{hi}});
}

// ---------------------------------------------------------- tailmeasure ----

struct TailMeasureOpts {
  double t{1000.0};
  std::vector<double> c_list{2.0, 4.0, 8.0};
  std::size_t samples{10'000};
};

void run_tailmeasure(const TailMeasureOpts& o, const RunConfig& cfg,
                     Report& report) {
  std::string cs;
  for (std::size_t i = 0; i < o.c_list.size(); ++i) {
    if (i) cs += ',';
    cs += fmt(o.c_list[i]);
  }
  report.config.push_back({"t", fmt(o.t)});
  report.config.push_back({"c_list", cs});
  report.config.push_back({"samples", fmt(o.samples)});
  echo_common(report, cfg);
  report.columns = {"C", "threshold", "measure_hat", "std_err"};

  const std::vector<TailMeasureRow> rows =
      chebyshev_tail_measure(o.t, o.c_list, o.samples, cfg.seed, cfg.threads);
  double max_c2m = 0.0;
  bool monotone = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const TailMeasureRow& r = rows[i];
    report.rows.push_back({r.C, r.threshold, r.measure_hat, r.std_err});
    max_c2m = std::max(max_c2m, r.C * r.C * r.measure_hat);
    if (i > 0 && rows[i].C > rows[i - 1].C &&
        rows[i].measure_hat > rows[i - 1].measure_hat) {
      monotone = false;
    }
  }
  report.summary.push_back({"max_c2_measure", Cell{max_c2m}});
  report.summary.push_back({"monotone_in_C", Cell{monotone}});
}

// ----------------------------------------------------------------- scan ----

struct ScanOpts {
  double omega{0.3};
  double t_min{10.0};
  double t_max{10'000.0};
  std::size_t points{400};
  double epsilon{0.1};
  double omega_lo{0.05};
  double omega_hi{0.95};
  double t_cap{1e5};
};

void run_scan(const ScanOpts& o, const RunConfig& cfg, Report& report) {
  report.config.push_back({"omega", fmt(o.omega)});
  report.config.push_back({"t_min", fmt(o.t_min)});
  report.config.push_back({"t_max", fmt(o.t_max)});
  report.config.push_back({"points", fmt(o.points)});
  report.config.push_back({"epsilon", fmt(o.epsilon)});
  report.config.push_back({"omega_lo", fmt(o.omega_lo)});
  report.config.push_back({"omega_hi", fmt(o.omega_hi)});
  report.config.push_back({"t_cap", fmt(o.t_cap)});
  echo_common(report, cfg);
  report.columns = {"t", "abs", "ratio"};

  const ScanReport sr =
      growth_scan(o.omega, TGrid{o.t_min, o.t_max, o.points}, o.epsilon,
                  cfg.threads, cfg.abs_err, o.omega_lo, o.omega_hi, o.t_cap);
  for (const ScanRow& row : sr.rows) {
    report.rows.push_back({row.t, row.abs, row.ratio});
  }
  report.summary.push_back({"global_max_ratio", Cell{sr.global_max_ratio}});
  report.summary.push_back({"tail_max_ratio", Cell{sr.tail_max_ratio}});
  report.summary.push_back(
      {"failed_rows", Cell{static_cast<std::uint64_t>(sr.failed_rows)}});
  if (sr.mu_hat) report.summary.push_back({"mu_hat", Cell{*sr.mu_hat}});
}

// -------------------------------------------------------------- section ----

struct SectionOpts {
  double t{1e6};
  double x_min{0.05};
  double x_max{0.95};
  std::size_t points{512};
  double t_cap{1e7};
};

void run_section(const SectionOpts& o, const RunConfig& cfg, Report& report) {
  report.config.push_back({"t", fmt(o.t)});
  report.config.push_back({"x_min", fmt(o.x_min)});
  report.config.push_back({"x_max", fmt(o.x_max)});
  report.config.push_back({"points", fmt(o.points)});
  report.config.push_back({"t_cap", fmt(o.t_cap)});
  echo_common(report, cfg);
  report.columns = {"x", "y"};

  if (o.points < 2) throw DomainError("section needs at least 2 points");
  std::vector<double> xs(o.points);
  for (std::size_t i = 0; i < o.points; ++i) {
    xs[i] = o.x_min + (o.x_max - o.x_min) * static_cast<double>(i) /
                          static_cast<double>(o.points - 1);
  }
  const std::vector<SectionRow> rows =
      section_profile(o.t, xs, cfg.threads, cfg.abs_err, o.t_cap);
  std::vector<double> ys;
  ys.reserve(rows.size());
  for (const SectionRow& row : rows) {
    report.rows.push_back({row.x, row.y});
    ys.push_back(row.y);
  }
  double mean = 0.0, ymax = 0.0;
  for (double y : ys) {
    mean += y;
    ymax = std::max(ymax, y);
  }
  mean /= static_cast<double>(ys.size());
  report.summary.push_back({"lag1_autocorr", Cell{lag1_autocorrelation(ys)}});
  report.summary.push_back({"y_mean", Cell{mean}});
  report.summary.push_back({"y_max", Cell{ymax}});
}

// ------------------------------------------------------------------- mu ----

struct MuOpts {
  double sigma{0.5};
  double omega{0.3};
  double t_min{10.0};
  double t_max{10'000.0};
  std::size_t points{400};
};

void run_mu(const MuOpts& o, const RunConfig& cfg, Report& report) {
  report.config.push_back({"sigma", fmt(o.sigma)});
  report.config.push_back({"omega", fmt(o.omega)});
  report.config.push_back({"t_min", fmt(o.t_min)});
  report.config.push_back({"t_max", fmt(o.t_max)});
  report.config.push_back({"points", fmt(o.points)});
  echo_common(report, cfg);
  report.columns = {"sigma", "omega", "mu_hat", "blocks"};

  const MuEstimate est =
      mu_exponent_estimate(o.sigma, o.omega, TGrid{o.t_min, o.t_max, o.points},
                           cfg.threads, cfg.abs_err);
  report.rows.push_back({o.sigma, o.omega, est.mu_hat,
                         static_cast<std::uint64_t>(est.blocks)});
  report.summary.push_back({"mu_hat", Cell{est.mu_hat}});
  report.summary.push_back(
      {"blocks", Cell{static_cast<std::uint64_t>(est.blocks)}});
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"hzeta: Hurwitz zeta critical-line experiments"};
  app.set_version_flag("--version", std::string("hzeta ") + kVersion);
  app.require_subcommand(1);

  std::map<const CLI::App*, std::function<void(const RunConfig&, Report&)>>
      handlers;
  std::map<const CLI::App*, CommonOpts*> commons;

  auto make_sub = [&](const std::string& name, const std::string& desc,
                      CommonOpts& common, auto handler) {
    CLI::App* sub = app.add_subcommand(name, desc);
    add_common(sub, common);
    commons[sub] = &common;
    handlers[sub] = handler;
    return sub;
  };

  CommonOpts c_eval, c_identity, c_funceq, c_rm, c_lemma4, c_qlil, c_mean,
      c_tail, c_scan, c_section, c_mu;

  EvalOpts eval_opts;
  {
    CLI::App* sub = make_sub(
        "eval", "evaluate zeta(sigma+it, omega) with a rigorous error bound",
        c_eval, [&](const RunConfig& cfg, Report& r) { run_eval(eval_opts, cfg, r); });
    sub->add_option("--sigma", eval_opts.sigma, "real part of s")
        ->capture_default_str();
    sub->add_option("--t", eval_opts.t, "imaginary part of s")
        ->capture_default_str();
    sub->add_option("--omega", eval_opts.omega, "Hurwitz parameter in (0,2]")
        ->capture_default_str();
  }

  IdentityOpts identity_opts;
  {
    CLI::App* sub = make_sub(
        "identity-check",
        "verify zeta(s,1/2)=(2^s-1)zeta(s) and the shift identity on a grid",
        c_identity,
        [&](const RunConfig& cfg, Report& r) { run_identity_check(identity_opts, cfg, r); });
    sub->add_option("--t-min", identity_opts.t_min, "grid start")
        ->capture_default_str();
    sub->add_option("--t-max", identity_opts.t_max, "grid end")
        ->capture_default_str();
    sub->add_option("--t-points", identity_opts.t_points,
                    "geometric t points per sigma")
        ->capture_default_str();
  }

  FuncEqOpts funceq_opts;
  {
    CLI::App* sub = make_sub(
        "funceq-check",
        "residual of the functional equation against its error budget",
        c_funceq,
        [&](const RunConfig& cfg, Report& r) { run_funceq_check(funceq_opts, cfg, r); });
    sub->add_option("--sigma", funceq_opts.sigma, "real part of s")
        ->capture_default_str();
    sub->add_option("--t-min", funceq_opts.t_min, "grid start")
        ->capture_default_str();
    sub->add_option("--t-max", funceq_opts.t_max, "grid end")
        ->capture_default_str();
    sub->add_option("--t-points", funceq_opts.t_points, "geometric t points")
        ->capture_default_str();
    sub->add_option("--omega-min", funceq_opts.omega_min, "omega grid start")
        ->capture_default_str();
    sub->add_option("--omega-max", funceq_opts.omega_max, "omega grid end")
        ->capture_default_str();
    sub->add_option("--omega-points", funceq_opts.omega_points,
                    "omega grid points")
        ->capture_default_str();
    sub->add_flag("--skip-abs-point", funceq_opts.skip_abs_point,
                  "skip the absolutely convergent extra point");
  }

  RmCheckOpts rm_opts;
  {
    CLI::App* sub = make_sub(
        "rm-check",
        "fuzz the dyadic maximal inequality and chain telescoping",
        c_rm, [&](const RunConfig& cfg, Report& r) { run_rm_check(rm_opts, cfg, r); });
    sub->add_option("--n", rm_opts.n, "maximum dyadic depth")
        ->capture_default_str();
    sub->add_option("--trials", rm_opts.trials, "fuzzed arrays")
        ->capture_default_str();
  }

  Lemma4Opts lemma4_opts;
  {
    CLI::App* sub = make_sub(
        "lemma4-check",
        "Monte Carlo maximal second moments against the (m^2+1) bound",
        c_lemma4,
        [&](const RunConfig& cfg, Report& r) { run_lemma4_check(lemma4_opts, cfg, r); });
    sub->add_option("--alphas", lemma4_opts.alphas, "power-noise decay exponents")
        ->delimiter(',')
        ->capture_default_str();
    sub->add_option("--m-max", lemma4_opts.m_max, "largest dyadic block index")
        ->capture_default_str();
    sub->add_option("--reps", lemma4_opts.reps, "Monte Carlo replications")
        ->capture_default_str();
  }

  QlilOpts qlil_opts;
  {
    CLI::App* sub = make_sub(
        "qlil", "diagonal trajectory |S_n|/phi(n) for a triangular array",
        c_qlil, [&](const RunConfig& cfg, Report& r) { run_qlil(qlil_opts, cfg, r); });
    sub->add_option("--kernel", qlil_opts.kernel, "hurwitz|powernoise|harmonic")
        ->check(CLI::IsMember({"hurwitz", "powernoise", "harmonic"}))
        ->capture_default_str();
    sub->add_option("--alpha", qlil_opts.alpha, "power-noise decay exponent")
        ->capture_default_str();
    sub->add_option("--epsilon", qlil_opts.epsilon, "phi exponent offset")
        ->capture_default_str();
    sub->add_option("--n-max", qlil_opts.n_max, "trajectory length")
        ->capture_default_str();
    sub->add_option("--omega", qlil_opts.omega, "phase parameter (hurwitz)")
        ->capture_default_str();
  }

  MeanValueOpts mean_opts;
  {
    CLI::App* sub = make_sub(
        "meanvalue", "omega mean square of zeta1 on the critical line",
        c_mean, [&](const RunConfig& cfg, Report& r) { run_meanvalue(mean_opts, cfg, r); });
    sub->add_option("--t-list", mean_opts.t_list, "heights to integrate at")
        ->delimiter(',')
        ->capture_default_str();
    sub->add_option("--panels", mean_opts.panels,
                    "quadrature panels; 0 = max(256, ceil(t))")
        ->capture_default_str();
    sub->add_option("--t-cap", mean_opts.t_cap, "height cap")
        ->capture_default_str();
  }

  TailMeasureOpts tail_opts;
  {
    CLI::App* sub = make_sub(
        "tailmeasure",
        "measure of omega with |zeta(1/2+it,omega)| >= C sqrt(log t)",
        c_tail, [&](const RunConfig& cfg, Report& r) { run_tailmeasure(tail_opts, cfg, r); });
    sub->add_option("--t", tail_opts.t, "height")->capture_default_str();
    sub->add_option("--c-list", tail_opts.c_list, "threshold multipliers")
        ->delimiter(',')
        ->capture_default_str();
    sub->add_option("--samples", tail_opts.samples, "omega samples")
        ->capture_default_str();
  }

  ScanOpts scan_opts;
  {
    CLI::App* sub = make_sub(
        "scan", "|zeta(1/2+it,omega)| against (log t)^{3/2+eps} on a t grid",
        c_scan, [&](const RunConfig& cfg, Report& r) { run_scan(scan_opts, cfg, r); });
    sub->add_option("--omega", scan_opts.omega, "Hurwitz parameter")
        ->capture_default_str();
    sub->add_option("--t-min", scan_opts.t_min, "grid start")
        ->capture_default_str();
    sub->add_option("--t-max", scan_opts.t_max, "grid end")
        ->capture_default_str();
    sub->add_option("--points", scan_opts.points, "grid points")
        ->capture_default_str();
    sub->add_option("--epsilon", scan_opts.epsilon, "normalizer exponent offset")
        ->capture_default_str();
    sub->add_option("--omega-lo", scan_opts.omega_lo, "omega window low edge")
        ->capture_default_str();
    sub->add_option("--omega-hi", scan_opts.omega_hi, "omega window high edge")
        ->capture_default_str();
    sub->add_option("--t-cap", scan_opts.t_cap, "height cap")
        ->capture_default_str();
  }

  SectionOpts section_opts;
  {
    CLI::App* sub = make_sub(
        "section",
        "critical-line section y(x) = |zeta1(1/2+it, x)| / (log t)^2",
        c_section,
        [&](const RunConfig& cfg, Report& r) { run_section(section_opts, cfg, r); });
    sub->add_option("--t", section_opts.t, "height")->capture_default_str();
    sub->add_option("--x-min", section_opts.x_min, "x grid start")
        ->capture_default_str();
    sub->add_option("--x-max", section_opts.x_max, "x grid end")
        ->capture_default_str();
    sub->add_option("--points", section_opts.points, "x grid points")
        ->capture_default_str();
    sub->add_option("--t-cap", section_opts.t_cap, "height cap")
        ->capture_default_str();
  }

  MuOpts mu_opts;
  {
    CLI::App* sub = make_sub(
        "mu", "upper-envelope growth exponent of log|zeta| in log t",
        c_mu, [&](const RunConfig& cfg, Report& r) { run_mu(mu_opts, cfg, r); });
    sub->add_option("--sigma", mu_opts.sigma, "real part of s")
        ->capture_default_str();
    sub->add_option("--omega", mu_opts.omega, "Hurwitz parameter")
        ->capture_default_str();
    sub->add_option("--t-min", mu_opts.t_min, "grid start")
        ->capture_default_str();
    sub->add_option("--t-max", mu_opts.t_max, "grid end")
        ->capture_default_str();
    sub->add_option("--points", mu_opts.points, "grid points")
        ->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const CommonOpts& common = *commons.at(sub);

  RunConfig cfg;
  cfg.subcommand = sub->get_name();
  cfg.seed = resolve_seed(common.seed_str);
  cfg.threads = resolve_thread_flag(common);
  cfg.out_path = common.out;
  cfg.format = common.format == "json" ? Format::Json : Format::Csv;
  cfg.abs_err = common.abs_err;
  cfg.timing = common.timing;

  Report report;
  report.subcommand = cfg.subcommand;
  report.seed = cfg.seed;

  int code = 0;
  const auto start = std::chrono::steady_clock::now();
  try {
    handlers.at(sub)(cfg, report);
  } catch (const Error& e) {
    report.status = "partial";
    report.error = e.what();
    code = 1;
  }
  const double wall_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start)
          .count();
  if (cfg.timing) report.wall_ms = wall_ms;

  try {
    emit(report, cfg);
  } catch (const IoError& e) {
    std::cerr << "hzeta: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "hzeta " << cfg.subcommand << ": status=" << report.status
            << " threads=" << cfg.threads << " wall_ms=" << format_double(wall_ms)
            << "\n";
  if (code != 0) std::cerr << "hzeta: " << report.error << "\n";
  return code;
}

}  // namespace hzeta::cli
