#pragma once

#include <cstdint>

namespace globent {

// SplitMix64 finalizer. Per-trial seeds are mix_seed(master, trial) so each
// trial is reproducible on its own, independent of execution order.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master + index);
}

}  // namespace globent
