#pragma once

#include <cstdint>

namespace hlcu {

// SplitMix64 finalizer; used as a stateless hash from counters to 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based stream: the draws for (seed, stream, index) never depend on
// what other indices were drawn or on which thread drew them.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

  std::uint64_t next_u64();
  double next_double();  // uniform in [0, 1)

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace hlcu
