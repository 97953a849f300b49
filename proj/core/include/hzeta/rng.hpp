#pragma once

#include <cstdint>

namespace hzeta {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so replications and grid tasks can be evaluated
// in any order, on any number of threads, with bitwise-identical results.

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t counter) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  x = mix64(x);
  x += 0xd1b54a32d192ed03ULL * (counter + 1);
  return mix64(x);
}

// Uniform on the open interval (0,1): the half-ulp offset keeps 0 and 1 out,
// so omega samples never land on the singular endpoint.
constexpr double counter_uniform01(std::uint64_t seed, std::uint64_t stream,
                                   std::uint64_t counter) {
  return (static_cast<double>(counter_u64(seed, stream, counter) >> 11) + 0.5) *
         0x1.0p-53;
}

}  // namespace hzeta
