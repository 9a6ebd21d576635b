#pragma once

#include <cstdint>
#include <initializer_list>

namespace vlcnoma {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based sub-seed: depends only on the key tuple, never on call order.
inline constexpr std::uint64_t derive_seed(std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (auto k : keys) h = splitmix64(h ^ splitmix64(k));
  return h;
}

/// Named random streams within one trial.
enum class Stream : std::uint64_t {
  placement = 1,
  orientation = 2,
  rf_fading = 3,
  clustering = 4,
};

inline constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial, Stream s) {
  return derive_seed({master, trial, static_cast<std::uint64_t>(s)});
}

}  // namespace vlcnoma
