#include "hlcu/rng.hpp"

namespace hlcu {

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
    : key_(splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index)) {}

std::uint64_t CounterRng::next_u64() { return splitmix64(key_ + 0x632be59bd9b4e019ULL * ++counter_); }

double CounterRng::next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) { return splitmix64(splitmix64(seed) ^ stream); }

}  // namespace hlcu
