#pragma once

#include <cstdint>
#include <random>

namespace rhwb {

/// splitmix64 finalizer; used to derive independent per-task seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Uniform integer in [lo, hi]. std::uniform_int_distribution is not
/// specified bit-for-bit across standard libraries, so reports would not
/// replay; this rejection sampler only relies on mt19937_64's output.
inline long uniform_int(std::mt19937_64& engine, long lo, long hi) {
  if (hi <= lo) return lo;
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t draw = engine();
  while (draw >= limit) draw = engine();
  return lo + static_cast<long>(draw % span);
}

}  // namespace rhwb
