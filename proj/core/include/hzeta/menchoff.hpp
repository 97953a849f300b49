#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hzeta/errors.hpp"
#include "hzeta/special.hpp"

namespace hzeta {

// Finite complex sequence a(0), ..., a(2^{n+1}-1) with a(0) = 0.
struct PrefixArray {
  int n{};
  std::vector<cplx> values;

  PrefixArray(int depth, std::vector<cplx> vals);
};

// Binary-expansion chain p = p_0 >= p_1 >= ... >= p_{n+1} = 0 where
// p_{k+1} clears the low k+1 bits of p, so p_k - p_{k+1} = eps_k 2^k.
struct DyadicChain {
  std::uint64_t p{};
  int n{};
  std::vector<std::uint64_t> chain;  // p_0 .. p_{n+1}
  std::vector<int> bits;             // eps_0 .. eps_n
};

enum class Kernel {
  HurwitzPhase,           // X_k = k^{-1/2-it} e^{2 pi i k omega}, t = sqrt(n)
  PowerNoise,             // X_k = k^{-alpha} xi_k, xi_k iid unit-modulus phase
  DeterministicHarmonic,  // X_k = k^{-1/2}; negative control, not mean-zero
};

const char* kernel_name(Kernel k);

struct ArraySpec {
  Kernel kernel{Kernel::PowerNoise};
  double alpha{0.5};    // ignored for HurwitzPhase/DeterministicHarmonic (1/2)
  double epsilon{0.1};  // must be > 0
  std::uint64_t seed{0};
};

struct TrajectoryRow {
  std::uint64_t n{};
  double ratio{};  // |S_n^{(n)}| / phi(n)
  bool is_dyadic{};
};

struct DyadicDiagnostic {
  int k{};
  double s_ratio{};  // |S_{2^k}^{(2^k)}| / phi(2^k)
  double y_ratio{};  // max_{l<=2^k} |S_{2^k+l} - S_{2^k}| / phi(2^k), row 2^{k+1}
};

struct TrajectoryReport {
  std::vector<TrajectoryRow> rows;
  std::vector<DyadicDiagnostic> diagnostics;
  double global_max_ratio{};
  double last_block_max_ratio{};  // over grid points n > 2^{K-1}
};

// Chain decomposition for 1 <= p < 2^{n+1}.
DyadicChain dyadic_chain(std::uint64_t p, int n);

// (n+1) sum_{k=0}^{n} sum_{j=0}^{2^{n-k}-1} |a(2^k + j 2^{k+1}) - a(j 2^{k+1})|^2.
// Dominates max_{1<=p<2^{n+1}} |a(p)|^2 for every array.
double rm_bound(const PrefixArray& a);

// max_{1<=p<2^{n+1}} |a(p)|^2, the quantity rm_bound dominates.
double max_prefix_sq(const PrefixArray& a);

// (m^2+1) sum of sigma^2 over the dyadic block 2^m+1 .. 2^{m+1}.
// sigmas must have length 2^m.
double lemma4_bound(int m, std::span<const double> sigmas);

// Monte Carlo mean of max_{2^m<k<=2^{m+1}} |S_k - S_{2^m}|^2 against the
// lemma4_bound for the kernel's sigma_k. The seed argument selects the
// replication streams (spec.seed is not consulted here).
std::pair<double, double> lemma4_empirical(int m, const ArraySpec& spec,
                                           std::uint64_t reps,
                                           std::uint64_t seed);

// Same with explicit per-index scales sigma_{2^m+i} = scales[i]; draws are
// unit-modulus random phases so V[X] = scale^2 exactly.
std::pair<double, double> lemma4_empirical_scaled(int m,
                                                  std::span<const double> scales,
                                                  std::uint64_t reps,
                                                  std::uint64_t seed);

// phi(n) = n^beta (log n)^{3/2+epsilon}, beta = 0 for alpha >= 1/2 and
// 1/2 - alpha otherwise. Natural log; n >= 2.
double phi(std::uint64_t n, double alpha, double epsilon);

// E[conj(X_j) X_k] for the HurwitzPhase kernel with omega uniform on (0,1):
// delta_{jk} / j, independent of t.
cplx pair_correlation_exact(std::uint64_t j, std::uint64_t k);

// Monte Carlo estimate of the same expectation over `samples` omega draws.
cplx pair_correlation_mc(std::uint64_t j, std::uint64_t k, double t,
                         std::uint64_t samples, std::uint64_t seed);

// Diagonal trajectory r(n) = |S_n^{(n)}|/phi(n) on the dyadic-plus-midpoint
// grid {2^k, 3*2^{k-1}} up to n_max, with the dyadic-block diagnostics.
// omega feeds the HurwitzPhase kernel; noise kernels draw from spec.seed.
TrajectoryReport qlil_trajectory(const ArraySpec& spec, std::uint64_t n_max,
                                 double omega);

}  // namespace hzeta
