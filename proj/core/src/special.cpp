#include "hzeta/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "internal_phase.hpp"

namespace hzeta {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kLogTwoPi = 1.8378770664093454836;  // log(2 pi)

// B_2, B_4, ..., B_30 as exact rationals.
constexpr std::array<double, 15> kBernoulli = {
    1.0 / 6,
    -1.0 / 30,
    1.0 / 42,
    -1.0 / 30,
    5.0 / 66,
    -691.0 / 2730,
    7.0 / 6,
    -3617.0 / 510,
    43867.0 / 798,
    -174611.0 / 330,
    854513.0 / 138,
    -236364091.0 / 2730,
    8553103.0 / 6,
    -23749461029.0 / 870,
    8615841276005.0 / 14322,
};

// Euler-Maclaurin coefficients B_{2k}/(2k)!.
constexpr std::array<double, 15> make_em_coefficients() {
  std::array<double, 15> coef{};
  double fact = 1.0;  // running (2k)!
  for (int k = 1; k <= 15; ++k) {
    fact *= (2.0 * k - 1.0) * (2.0 * k);
    coef[k - 1] = kBernoulli[k - 1] / fact;
  }
  return coef;
}
constexpr std::array<double, 15> kEmCoef = make_em_coefficients();

// Stirling coefficients B_{2k}/((2k)(2k-1)) for the log-gamma series.
constexpr std::array<double, 10> make_stirling_coefficients() {
  std::array<double, 10> coef{};
  for (int k = 1; k <= 10; ++k) {
    coef[k - 1] = kBernoulli[k - 1] / ((2.0 * k) * (2.0 * k - 1.0));
  }
  return coef;
}
constexpr std::array<double, 10> kStirlingCoef = make_stirling_coefficients();

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

struct KahanC {
  Kahan re, im;
  void add(cplx z) {
    re.add(z.real());
    im.add(z.imag());
  }
  cplx value() const { return {re.sum, im.sum}; }
};

void require_finite(SPoint s) {
  if (!std::isfinite(s.sigma) || !std::isfinite(s.t)) {
    throw DomainError("s must have finite components");
  }
}

struct EmResult {
  cplx value;
  double truncation;  // rigorous Euler-Maclaurin remainder bound
  double fp_noise;    // rounding / phase-noise allowance (64-bit model)
};

// Euler-Maclaurin evaluation of zeta(s, a) with N direct terms and 15
// Bernoulli corrections:
//   sum_{n<N} (n+a)^{-s} + w^{1-s}/(s-1) + w^{-s}/2
//     + sum_{k=1}^{15} B_{2k}/(2k)! (s)_{2k-1} w^{-s-2k+1},   w = N + a.
// The remainder after M terms is bounded via the periodized Bernoulli
// polynomial's Fourier bound |B~_m(x)| <= 4 m!/(2 pi)^m:
//   |R| <= 4 |(s)_{2M+1}| / (2 pi)^{2M+1} * w^{-(sigma+2M)} / (sigma+2M),
// valid for sigma + 2M > 0.
//
// The fp_noise term is a working-precision allowance, not an analytic bound:
// Kahan summation error <= 4 eps sum|term|, plus per-term phase rounding
// eps*|t|*log w accumulated in quadrature across terms.
EmResult euler_maclaurin(cplx s, double a, std::uint64_t N) {
  const double sigma = s.real();
  const double t = s.imag();

  KahanC acc;
  double sum_abs = 0.0;  // sum of |re|+|im| >= sum of |term|
  double sum_sq = 0.0;   // sum of |term|^2
  for (std::uint64_t n = 0; n < N; ++n) {
    const double w = static_cast<double>(n) + a;
    const double logw = std::log(w);
    const double mag = std::exp(-sigma * logw);
    const cplx term = mag * detail::cis(-t * logw);
    acc.add(term);
    sum_abs += std::fabs(term.real()) + std::fabs(term.imag());
    sum_sq += mag * mag;
  }

  const double w = static_cast<double>(N) + a;
  const double logw = std::log(w);
  const cplx wpow = std::exp(-sigma * logw) * detail::cis(-t * logw);  // w^{-s}

  const cplx tail = wpow * w / (s - 1.0);
  const cplx half = 0.5 * wpow;
  acc.add(tail);
  acc.add(half);
  sum_abs += std::fabs(tail.real()) + std::fabs(tail.imag());
  sum_abs += std::fabs(half.real()) + std::fabs(half.imag());
  sum_sq += std::norm(tail) + std::norm(half);

  cplx poch = s;            // rising factorial (s)_{2k-1}
  cplx wk = wpow / w;       // w^{-s-2k+1}
  const double w2 = w * w;
  for (int k = 1; k <= 15; ++k) {
    const cplx term = kEmCoef[k - 1] * poch * wk;
    acc.add(term);
    sum_abs += std::fabs(term.real()) + std::fabs(term.imag());
    poch *= (s + cplx(2.0 * k - 1.0)) * (s + cplx(2.0 * k));
    wk /= w2;
  }
  // poch is now (s)_{31}; remainder bound in log space to dodge overflow.
  const double log_bound = std::log(4.0) + std::log(std::abs(poch)) -
                           31.0 * kLogTwoPi - (sigma + 30.0) * logw -
                           std::log(sigma + 30.0);
  const double truncation = std::exp(log_bound);

  const double fp_noise = 4.0 * kEps * sum_abs +
                          2.0 * kEps * std::fabs(t) * logw * std::sqrt(sum_sq);
  return {acc.value(), truncation, fp_noise};
}

}  // namespace

OmegaParam::OmegaParam(double omega) : omega_(omega) {
  if (!(omega > 0.0) || !(omega <= 2.0) || !std::isfinite(omega)) {
    throw DomainError("omega must lie in (0, 2]");
  }
}

const char* method_name(Method m) {
  switch (m) {
    case Method::DirectSeries:
      return "direct_series";
    case Method::EulerMaclaurin:
      return "euler_maclaurin";
    case Method::TruncatedFunctionalEq:
      return "functional_eq";
  }
  return "unknown";
}

EvalResult dirichlet_series_direct(SPoint s, OmegaParam omega,
                                   std::uint64_t n_terms) {
  require_finite(s);
  if (!(s.sigma > 1.0)) {
    throw DomainError("dirichlet_series_direct requires sigma > 1");
  }
  if (n_terms < 1) throw DomainError("n_terms must be >= 1");

  const double a = omega.value();
  KahanC acc;
  for (std::uint64_t n = 0; n < n_terms; ++n) {
    const double w = static_cast<double>(n) + a;
    const double logw = std::log(w);
    acc.add(std::exp(-s.sigma * logw) * detail::cis(-s.t * logw));
  }
  const double tail =
      std::pow(static_cast<double>(n_terms) + a - 1.0, 1.0 - s.sigma) /
      (s.sigma - 1.0);
  return {acc.value(), tail, n_terms, Method::DirectSeries};
}

EvalResult hurwitz_zeta(SPoint s, OmegaParam omega, double target_abs_err) {
  require_finite(s);
  if (!(target_abs_err > 0.0) || !std::isfinite(target_abs_err) ||
      target_abs_err < kMinTargetAbsErr) {
    throw InvalidTolerance("target_abs_err must lie in [1e-13, inf)");
  }
  if (s.sigma == 1.0 && s.t == 0.0) throw PoleAtOne("zeta(s, omega) pole at s = 1");
  if (s.sigma < kMinSigma) {
    throw DomainError("hurwitz_zeta supports sigma >= -1");
  }
  if (std::fabs(s.t) > kMaxAbsT) {
    throw DomainError("hurwitz_zeta supports |t| <= 1e8");
  }

  const double a = omega.value();
  std::uint64_t N = std::max<std::uint64_t>(
      16, static_cast<std::uint64_t>(
              std::ceil(1.1 * (std::fabs(s.t) + std::fabs(s.sigma)))));
  constexpr std::uint64_t kShiftCap = 1'000'000'000;

  for (;;) {
    const EmResult em = euler_maclaurin(s.value(), a, N);
    const double bound = em.truncation + em.fp_noise;
    if (bound <= target_abs_err) {
      return {em.value, bound, N, Method::EulerMaclaurin};
    }
    // Once the analytic remainder sits far below the working-precision
    // noise, growing N cannot reach the target.
    if (em.truncation <= em.fp_noise / 16.0) {
      throw NonConvergence(
          "target_abs_err below the 64-bit noise floor at this height");
    }
    if (N >= kShiftCap) {
      throw NonConvergence("Euler-Maclaurin shift cap exceeded");
    }
    N *= 2;
  }
}

EvalResult zeta1(SPoint s, OmegaParam omega, double target_abs_err) {
  if (!(omega.value() <= 1.0)) {
    throw DomainError("zeta1 requires omega in (0, 1]");
  }
  // zeta1(s, omega) = zeta(s, omega) - omega^{-s} = zeta(s, omega + 1);
  // the shifted form never forms the cancelling pair.
  return hurwitz_zeta(s, OmegaParam(omega.value() + 1.0), target_abs_err);
}

cplx log_gamma(SPoint s) {
  require_finite(s);
  if (s.t == 0.0 && s.sigma <= 0.0 && s.sigma == std::floor(s.sigma)) {
    throw PoleAtNonpositiveInteger("log_gamma pole at nonpositive integer");
  }

  cplx z = s.value();
  cplx shift_logs = 0.0;
  while (z.real() < 12.0) {
    shift_logs += std::log(z);
    z += 1.0;
  }

  const cplx lz = std::log(z);
  cplx res = (z - 0.5) * lz - z + 0.5 * kLogTwoPi;
  const cplx zinv2 = 1.0 / (z * z);
  cplx zp = 1.0 / z;
  for (int k = 1; k <= 10; ++k) {
    res += kStirlingCoef[k - 1] * zp;
    zp *= zinv2;
  }
  return res - shift_logs;
}

double gamma_abs_asymptotic(double sigma, double t) {
  return std::exp(gamma_abs_asymptotic_log(sigma, t));
}

double gamma_abs_asymptotic_log(double sigma, double t) {
  if (!(std::fabs(t) >= 1.0)) {
    throw DomainError("gamma_abs_asymptotic requires |t| >= 1");
  }
  const double at = std::fabs(t);
  return 0.5 * kLogTwoPi + (sigma - 0.5) * std::log(at) - 0.5 * kPi * at;
}

cplx phase_sum(double x, double omega) {
  if (!(x >= 1.0)) throw DomainError("phase_sum requires x >= 1");
  if (!(x < 9e15)) throw DomainError("phase_sum requires x < 9e15");
  if (!std::isfinite(omega) || omega == std::floor(omega)) {
    throw DomainError("phase_sum requires non-integral omega");
  }
  const double fr = omega - std::floor(omega);
  const auto m = static_cast<std::uint64_t>(std::floor(x));
  const detail::PhaseReducer reducer(fr);
  const cplx z = detail::cis(kTwoPi * fr);
  const cplx zm = detail::cis(kTwoPi * reducer.frac(m));
  return z * (zm - 1.0) / (z - 1.0);
}

EvalResult f_sum_truncated(SPoint s, double omega, std::uint64_t K,
                           std::uint64_t cap) {
  require_finite(s);
  if (!(s.sigma >= 0.5)) throw DomainError("f_sum_truncated requires sigma >= 1/2");
  if (K < 1) throw DomainError("K must be >= 1");
  if (K > cap) throw TruncationTooLarge("K exceeds the configured cap");
  if (!std::isfinite(omega) || omega == std::floor(omega)) {
    throw DomainError("f_sum_truncated requires non-integral omega");
  }

  const double fr = omega - std::floor(omega);  // F(-omega) enters as 1-omega
  const detail::PhaseReducer reducer(fr);
  KahanC acc;
  for (std::uint64_t k = 1; k <= K; ++k) {
    const double logk = std::log(static_cast<double>(k));
    const double mag = std::exp(-s.sigma * logk);
    acc.add(mag * detail::cis(kTwoPi * reducer.frac(k) - s.t * logk));
  }
  const double denom = 2.0 * std::fabs(std::sin(kPi * fr));  // |1 - e^{2pi i fr}|
  const double bound = kFSumTailConstant * (1.0 + std::fabs(s.t)) *
                       std::pow(static_cast<double>(K), -s.sigma) *
                       (2.0 / denom);
  return {acc.value(), bound, K, Method::DirectSeries};
}

std::pair<EvalResult, ErrorBudget> functional_eq_rhs(SPoint s, double omega,
                                                     std::uint64_t K) {
  require_finite(s);
  if (!(omega > 0.0 && omega < 1.0)) {
    throw DomainError("functional_eq_rhs requires 0 < omega < 1");
  }
  if (!(s.sigma > 0.0)) throw DomainError("functional_eq_rhs requires sigma > 0");
  if (!(s.t > 0.0)) throw DomainError("functional_eq_rhs requires t > 0");

  const cplx sv = s.value();
  const cplx base = log_gamma(s) - sv * kLogTwoPi;
  const cplx half_ipi_s(-0.5 * kPi * s.t, 0.5 * kPi * s.sigma);  // i pi s / 2

  const EvalResult f_plus = f_sum_truncated(s, omega, K);
  const EvalResult f_minus = f_sum_truncated(s, -omega, K);

  // Both prefactors assembled in log space; their magnitudes differ by
  // e^{-pi t}, far beyond double range for large t if formed separately.
  const cplx pre_minus = std::exp(base - half_ipi_s);
  const cplx pre_plus = std::exp(base + half_ipi_s);

  const cplx term1 = pre_minus * f_plus.value;
  const cplx term2 = pre_plus * f_minus.value;

  ErrorBudget budget;
  budget.truncation_f_plus = std::abs(pre_minus) * f_plus.abs_err_bound;
  budget.truncation_f_minus = std::abs(pre_plus) * f_minus.abs_err_bound;
  // log-gamma is ~1e-12 per component; the exponent also carries the
  // cancelled pi t/2 pieces, whose rounding re-enters as eps * pi * t.
  const double prefactor_rel = 1e-12 + 1e-15 * kPi * std::fabs(s.t);
  const double term_mass = std::abs(term1) + std::abs(term2);
  budget.gamma_factor = term_mass * prefactor_rel;
  budget.total = budget.truncation_f_plus + budget.truncation_f_minus +
                 budget.gamma_factor + 4.0 * kEps * term_mass;

  EvalResult result{term1 + term2, budget.total, K,
                    Method::TruncatedFunctionalEq};
  return {result, budget};
}

double functional_eq_residual(SPoint s, double omega, std::uint64_t K) {
  const auto [rhs, budget] = functional_eq_rhs(s, omega, K);
  (void)budget;
  // The exponential-sum side represents the reflected argument 1-s; compare
  // against the Euler-Maclaurin value there. On the critical line 1-s is the
  // conjugate point, so both sides carry the same magnitude.
  const SPoint reflected{1.0 - s.sigma, -s.t};
  const double scale = std::max(1.0, std::pow(omega, -reflected.sigma));
  const double target =
      std::max(1e-12, 1e-13 * (1.0 + std::fabs(s.t)) * scale);
  const EvalResult lhs = hurwitz_zeta(reflected, OmegaParam(omega), target);
  return std::abs(lhs.value - rhs.value);
}

}  // namespace hzeta
