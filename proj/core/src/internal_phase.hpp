#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace hzeta::detail {

// Exact evaluation of frac(k * w) for w in (0,1). Writing w = M * 2^{-sh}
// with M its 53-bit integer mantissa gives
//   k*w mod 1 = (k*M mod 2^sh) * 2^{-sh},
// computed in 128-bit integer arithmetic. A plain double product loses
// ~log2(k) bits of the phase, which matters for k up to 1e7 and beyond.
class PhaseReducer {
 public:
  explicit PhaseReducer(double w) : w_(w) {
    int e = 0;
    const double f = std::frexp(w, &e);  // w = f * 2^e, f in [0.5, 1)
    mant_ = static_cast<std::uint64_t>(std::ldexp(f, 53));
    shift_ = 53 - e;
    tiny_ = shift_ >= 127;  // w < 2^{-74}: k*w stays far below 1
  }

  double frac(std::uint64_t k) const {
    if (tiny_) return static_cast<double>(k) * w_;
    const unsigned __int128 prod = static_cast<unsigned __int128>(k) * mant_;
    const unsigned __int128 mask =
        (static_cast<unsigned __int128>(1) << shift_) - 1;
    return std::ldexp(static_cast<double>(prod & mask), -shift_);
  }

 private:
  std::uint64_t mant_{};
  int shift_{};
  bool tiny_{};
  double w_{};
};

inline std::complex<double> cis(double phase) {
  return {std::cos(phase), std::sin(phase)};
}

}  // namespace hzeta::detail
