#pragma once

#include <complex>
#include <cstdint>
#include <utility>

#include "hzeta/errors.hpp"

namespace hzeta {

using cplx = std::complex<double>;

// A point s = sigma + i t on or near the critical strip.
struct SPoint {
  double sigma{};
  double t{};
  cplx value() const { return {sigma, t}; }
};

// omega parameter of zeta(s, omega). The natural domain is (0,1]; values in
// (1,2] are admitted so the shift identity zeta(s,omega) = omega^{-s} +
// zeta(s,omega+1) can be exercised inside the evaluator's own domain.
class OmegaParam {
 public:
  explicit OmegaParam(double omega);
  double value() const { return omega_; }

 private:
  double omega_;
};

enum class Method { DirectSeries, EulerMaclaurin, TruncatedFunctionalEq };

const char* method_name(Method m);

struct EvalResult {
  cplx value{};
  double abs_err_bound{};       // rigorous bound on |value - exact|
  std::uint64_t terms_used{};
  Method method{Method::DirectSeries};
};

// Error decomposition of the truncated functional-equation evaluation.
// The truncation components carry the partial-summation tail bound
// C_F (1+|t|) K^{-sigma} * 2/|1 - e^{2 pi i omega}| scaled by the magnitude
// of the exponential prefactor they multiply.
struct ErrorBudget {
  double truncation_f_plus{};
  double truncation_f_minus{};
  double gamma_factor{};
  double total{};
};

inline constexpr double kMinTargetAbsErr = 1e-13;  // 64-bit floor
inline constexpr double kMaxAbsT = 1e8;            // default height limit
inline constexpr double kMinSigma = -1.0;          // continuation limit
inline constexpr std::uint64_t kFSumDefaultCap = 10'000'000;
// Partial-summation constant in the exponential-sum tail bound:
// boundary term (1) plus |s|/sigma integral term (<= 1 + 2|t|), folded as
// 2*(1+|t|).
inline constexpr double kFSumTailConstant = 2.0;

// Truncated Dirichlet series sum_{n=0}^{n_terms-1} (n+omega)^{-s} with the
// integral-comparison tail bound (n_terms+omega-1)^{1-sigma}/(sigma-1).
// Requires sigma > 1.
EvalResult dirichlet_series_direct(SPoint s, OmegaParam omega,
                                   std::uint64_t n_terms);

// zeta(s, omega) by Euler-Maclaurin continuation with a rigorous remainder
// bound. Valid for sigma >= -1, |t| <= 1e8, target_abs_err >= 1e-13.
EvalResult hurwitz_zeta(SPoint s, OmegaParam omega, double target_abs_err);

// zeta1(s, omega) = zeta(s, omega) - omega^{-s}, computed cancellation-free
// as zeta(s, omega+1). Requires omega in (0,1].
EvalResult zeta1(SPoint s, OmegaParam omega, double target_abs_err);

// Principal-branch log Gamma(s) (Stirling plus upward recurrence); accurate
// to ~1e-12 relative per component for sigma in [-10,10], |t| <= 1e8.
// Negative real axis is evaluated as the limit from the upper half plane.
cplx log_gamma(SPoint s);

// sqrt(2 pi) |t|^{sigma-1/2} e^{-pi |t|/2}, formed in log space; underflow
// returns 0. Requires |t| >= 1.
double gamma_abs_asymptotic(double sigma, double t);

// log of the same quantity; usable far past the exp underflow threshold
// (|Gamma(1/2+it)| leaves double range near t ~ 450).
double gamma_abs_asymptotic_log(double sigma, double t);

// A(x, omega) = sum_{k=1}^{floor(x)} e^{2 pi i k omega} via the closed-form
// geometric sum; |A| <= 2/|1-e^{2 pi i omega}|. omega must not be integral.
cplx phase_sum(double x, double omega);

//

// K-term truncation of F(omega, s) = sum_{k>=1} k^{-s} e^{2 pi i k omega},
// with the partial-summation tail bound as abs_err_bound. Negative omega
// means F(-omega, s). Requires sigma >= 1/2.
EvalResult f_sum_truncated(SPoint s, double omega, std::uint64_t K,
                           std::uint64_t cap = kFSumDefaultCap);

// The exponential-sum side of the Hurwitz functional equation with
// K-truncated sums:
//   Gamma(s)(2 pi)^{-s} { e^{-i pi s/2} F(omega,s) + e^{+i pi s/2} F(-omega,s) }
// Its analytic value is zeta(1-s, omega); on the critical line that is the
// conjugate of zeta(s, omega), so the two sides share one magnitude. All
// prefactors are combined in log space (the raw factors overflow near
// t ~ 1400). Requires 0 < omega < 1, sigma > 0 (F needs sigma >= 1/2), t > 0.
std::pair<EvalResult, ErrorBudget> functional_eq_rhs(SPoint s, double omega,
                                                     std::uint64_t K);

// |hurwitz_zeta(1-s, omega) - functional_eq_rhs(s, omega, K)|: the
// quantitative truncation residual of the functional equation. Contract:
// residual <= budget.total + evaluator bound on every valid input.
double functional_eq_residual(SPoint s, double omega, std::uint64_t K);

}  // namespace hzeta
