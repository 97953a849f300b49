#include "hzeta/menchoff.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "hzeta/rng.hpp"
#include "internal_phase.hpp"

namespace hzeta {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Unit-modulus mean-zero draw: e^{2 pi i U}. |xi| = 1 pointwise, so an index
// with scale sigma has variance exactly sigma^2 and the Lemma 4 comparison
// carries no Monte Carlo excess at m = 0.
cplx random_phase(std::uint64_t seed, std::uint64_t stream,
                  std::uint64_t counter) {
  return detail::cis(kTwoPi * counter_uniform01(seed, stream, counter));
}

double alpha_for_phi(const ArraySpec& spec) {
  // HurwitzPhase and the harmonic control both have sigma_k = k^{-1/2}.
  if (spec.kernel == Kernel::PowerNoise) return spec.alpha;
  return 0.5;
}

void validate_spec(const ArraySpec& spec) {
  if (!(spec.epsilon > 0.0)) throw InvalidSpec("epsilon must be > 0");
  if (spec.kernel == Kernel::PowerNoise && !std::isfinite(spec.alpha)) {
    throw InvalidSpec("alpha must be finite");
  }
}

}  // namespace

PrefixArray::PrefixArray(int depth, std::vector<cplx> vals)
    : n(depth), values(std::move(vals)) {
  if (n < 0 || n > 62) throw DomainError("prefix array depth out of range");
  const std::size_t expected = std::size_t{1} << (n + 1);
  if (values.size() != expected) {
    throw LengthMismatch("prefix array must have length 2^(n+1)");
  }
  if (values[0] != cplx(0.0, 0.0)) {
    throw DomainError("prefix array requires a(0) = 0");
  }
}

const char* kernel_name(Kernel k) {
  switch (k) {
    case Kernel::HurwitzPhase:
      return "hurwitz";
    case Kernel::PowerNoise:
      return "powernoise";
    case Kernel::DeterministicHarmonic:
      return "harmonic";
  }
  return "unknown";
}

DyadicChain dyadic_chain(std::uint64_t p, int n) {
  if (n < 0 || n > 62) throw DomainError("depth out of range");
  const std::uint64_t limit = std::uint64_t{1} << (n + 1);
  if (p < 1 || p >= limit) throw DomainError("p must satisfy 1 <= p < 2^(n+1)");

  DyadicChain out;
  out.p = p;
  out.n = n;
  out.chain.reserve(n + 2);
  out.bits.reserve(n + 1);
  for (int k = 0; k <= n + 1; ++k) {
    const std::uint64_t low = (std::uint64_t{1} << k) - 1;
    out.chain.push_back(p & ~low);  // clear the low k bits
  }
  for (int k = 0; k <= n; ++k) out.bits.push_back((p >> k) & 1);
  return out;
}

double rm_bound(const PrefixArray& a) {
  const int n = a.n;
  double total = 0.0;
  for (int k = 0; k <= n; ++k) {
    const std::uint64_t step = std::uint64_t{1} << (k + 1);
    const std::uint64_t half = std::uint64_t{1} << k;
    const std::uint64_t count = std::uint64_t{1} << (n - k);
    for (std::uint64_t j = 0; j < count; ++j) {
      total += std::norm(a.values[half + j * step] - a.values[j * step]);
    }
  }
  return (n + 1.0) * total;
}

double max_prefix_sq(const PrefixArray& a) {
  double best = 0.0;
  for (std::size_t p = 1; p < a.values.size(); ++p) {
    best = std::max(best, std::norm(a.values[p]));
  }
  return best;
}

double lemma4_bound(int m, std::span<const double> sigmas) {
  if (m < 0 || m > 62) throw DomainError("m out of range");
  if (sigmas.size() != (std::size_t{1} << m)) {
    throw LengthMismatch("sigmas must have length 2^m");
  }
  double sum = 0.0;
  for (double s : sigmas) {
    if (!(s >= 0.0)) throw DomainError("sigmas must be nonnegative");
    sum += s * s;
  }
  return (static_cast<double>(m) * m + 1.0) * sum;
}

std::pair<double, double> lemma4_empirical_scaled(int m,
                                                  std::span<const double> scales,
                                                  std::uint64_t reps,
                                                  std::uint64_t seed) {
  const double bound = lemma4_bound(m, scales);  // validates m and lengths
  if (reps < 100) throw DomainError("reps must be >= 100");

  const std::uint64_t block = std::uint64_t{1} << m;
  const std::uint64_t base = std::uint64_t{1} << m;  // indices base+1..2^{m+1}
  double acc = 0.0;
  for (std::uint64_t r = 0; r < reps; ++r) {
    cplx partial = 0.0;
    double max_sq = 0.0;
    for (std::uint64_t i = 0; i < block; ++i) {
      partial += scales[i] * random_phase(seed, r, base + 1 + i);
      max_sq = std::max(max_sq, std::norm(partial));
    }
    acc += max_sq;
  }
  return {acc / static_cast<double>(reps), bound};
}

std::pair<double, double> lemma4_empirical(int m, const ArraySpec& spec,
                                           std::uint64_t reps,
                                           std::uint64_t seed) {
  validate_spec(spec);
  if (spec.kernel == Kernel::DeterministicHarmonic) {
    throw InvalidSpec("DeterministicHarmonic is not mean-zero uncorrelated");
  }
  if (m < 0 || m > 30) throw DomainError("m out of range");
  const std::uint64_t block = std::uint64_t{1} << m;
  const std::uint64_t base = std::uint64_t{1} << m;

  if (spec.kernel == Kernel::PowerNoise) {
    std::vector<double> scales(block);
    for (std::uint64_t i = 0; i < block; ++i) {
      scales[i] = std::pow(static_cast<double>(base + 1 + i), -spec.alpha);
    }
    return lemma4_empirical_scaled(m, scales, reps, seed);
  }

  // HurwitzPhase: X_k = k^{-1/2-it} e^{2 pi i k omega}, omega fresh per
  // replication, t = sqrt of the block's top index.
  if (reps < 100) throw DomainError("reps must be >= 100");
  std::vector<double> scales(block);
  for (std::uint64_t i = 0; i < block; ++i) {
    scales[i] = std::pow(static_cast<double>(base + 1 + i), -0.5);
  }
  const double bound = lemma4_bound(m, scales);
  const double t = std::sqrt(static_cast<double>(2 * base));
  double acc = 0.0;
  for (std::uint64_t r = 0; r < reps; ++r) {
    const double omega = counter_uniform01(seed, r, 0);
    const detail::PhaseReducer reducer(omega);
    cplx partial = 0.0;
    double max_sq = 0.0;
    for (std::uint64_t i = 0; i < block; ++i) {
      const std::uint64_t k = base + 1 + i;
      const double logk = std::log(static_cast<double>(k));
      partial += scales[i] *
                 detail::cis(kTwoPi * reducer.frac(k) - t * logk);
      max_sq = std::max(max_sq, std::norm(partial));
    }
    acc += max_sq;
  }
  return {acc / static_cast<double>(reps), bound};
}

double phi(std::uint64_t n, double alpha, double epsilon) {
  if (n < 2) throw DomainError("phi requires n >= 2");
  if (!(epsilon > 0.0)) throw DomainError("phi requires epsilon > 0");
  const double beta = alpha >= 0.5 ? 0.0 : 0.5 - alpha;
  const double nn = static_cast<double>(n);
  return std::pow(nn, beta) * std::pow(std::log(nn), 1.5 + epsilon);
}

cplx pair_correlation_exact(std::uint64_t j, std::uint64_t k) {
  if (j < 1 || k < 1) throw DomainError("indices must be >= 1");
  if (j != k) return {0.0, 0.0};
  return {1.0 / static_cast<double>(j), 0.0};
}

cplx pair_correlation_mc(std::uint64_t j, std::uint64_t k, double t,
                         std::uint64_t samples, std::uint64_t seed) {
  if (j < 1 || k < 1) throw DomainError("indices must be >= 1");
  if (samples < 1) throw DomainError("samples must be >= 1");
  // conj(X_j) X_k = (jk)^{-1/2} e^{i(2 pi (k-j) omega + t log(j/k))}
  const double mag = std::pow(static_cast<double>(j) * static_cast<double>(k),
                              -0.5);
  const double tphase =
      t * (std::log(static_cast<double>(j)) - std::log(static_cast<double>(k)));
  const double dk = static_cast<double>(k) - static_cast<double>(j);
  cplx acc = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double omega = counter_uniform01(seed, i, 0);
    acc += detail::cis(kTwoPi * dk * omega + tphase);
  }
  return mag * acc / static_cast<double>(samples);
}

TrajectoryReport qlil_trajectory(const ArraySpec& spec, std::uint64_t n_max,
                                 double omega) {
  validate_spec(spec);
  if (n_max < 16) throw DomainError("n_max must be >= 16");
  if (spec.kernel == Kernel::HurwitzPhase &&
      !(omega > 0.0 && omega < 1.0)) {
    throw InvalidSpec("HurwitzPhase requires omega in (0,1)");
  }

  int K = 0;
  while ((std::uint64_t{1} << (K + 1)) <= n_max) ++K;  // K = floor(log2 n_max)

  // Dyadic grid plus midpoints, mirroring the proof's block structure.
  std::vector<std::uint64_t> grid;
  for (int k = 4; k <= K; ++k) {
    grid.push_back(std::uint64_t{1} << k);
    const std::uint64_t mid = 3 * (std::uint64_t{1} << (k - 1));
    if (mid <= n_max) grid.push_back(mid);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const double alpha = alpha_for_phi(spec);
  const detail::PhaseReducer reducer(
      spec.kernel == Kernel::HurwitzPhase ? omega : 0.5);

  // X_{k} in row n (rows only differ for the Hurwitz kernel, via t=sqrt(n)).
  auto draw = [&](std::uint64_t k, std::uint64_t row_n) -> cplx {
    switch (spec.kernel) {
      case Kernel::HurwitzPhase: {
        const double logk = std::log(static_cast<double>(k));
        return std::exp(-0.5 * logk) *
               detail::cis(kTwoPi * reducer.frac(k) -
                           std::sqrt(static_cast<double>(row_n)) * logk);
      }
      case Kernel::PowerNoise:
        return std::pow(static_cast<double>(k), -spec.alpha) *
               random_phase(spec.seed, 0, k);
      case Kernel::DeterministicHarmonic:
        return {std::pow(static_cast<double>(k), -0.5), 0.0};
    }
    return {};
  };

  TrajectoryReport report;
  std::map<std::uint64_t, double> ratio_at;

  if (spec.kernel == Kernel::HurwitzPhase) {
    // Diagonal sums: the whole row changes with n, so each grid point is a
    // fresh sum. Total work stays O(n_max) up to the constant sum over the
    // grid geometry.
    for (const std::uint64_t n : grid) {
      cplx sum = 0.0;
      for (std::uint64_t k = 1; k <= n; ++k) sum += draw(k, n);
      ratio_at[n] = std::abs(sum) / phi(n, alpha, spec.epsilon);
    }
  } else {
    cplx prefix = 0.0;
    std::size_t next = 0;
    for (std::uint64_t k = 1; k <= n_max && next < grid.size(); ++k) {
      prefix += draw(k, k);
      if (k == grid[next]) {
        ratio_at[k] = std::abs(prefix) / phi(k, alpha, spec.epsilon);
        ++next;
      }
    }
  }

  for (const std::uint64_t n : grid) {
    const bool dyadic = (n & (n - 1)) == 0;
    report.rows.push_back({n, ratio_at[n], dyadic});
  }

  // Block diagnostics: S-ratio at the block foot, and the maximal increment
  // Y_k over (2^k, 2^{k+1}] evaluated in row 2^{k+1} (the trajectory's own n
  // at the block top). The top block needs indices beyond n_max, so k < K.
  for (int k = 4; k < K; ++k) {
    const std::uint64_t foot = std::uint64_t{1} << k;
    const std::uint64_t row = foot << 1;
    cplx partial = 0.0;
    double y_max = 0.0;
    for (std::uint64_t idx = foot + 1; idx <= row; ++idx) {
      partial += draw(idx, row);
      y_max = std::max(y_max, std::abs(partial));
    }
    const double denom = phi(foot, alpha, spec.epsilon);
    report.diagnostics.push_back({k, ratio_at[foot], y_max / denom});
  }

  double global = 0.0, last_block = 0.0;
  const std::uint64_t tail_lo = std::uint64_t{1} << (K - 1);
  for (const auto& row : report.rows) {
    global = std::max(global, row.ratio);
    if (row.n > tail_lo) last_block = std::max(last_block, row.ratio);
  }
  report.global_max_ratio = global;
  report.last_block_max_ratio = last_block;
  return report;
}

}  // namespace hzeta
