#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hlcu/hybrid.hpp"

namespace hlcu::kernels {

void set_workers(int n);
int workers();

// Row-major J x L table: out[j * L + l] = sum_k w_k sin(z_k * y_j * lambda_l).
struct SineTable {
  std::vector<double> values;
  std::size_t rows = 0, cols = 0;
  double operator()(std::size_t j, std::size_t l) const { return values[j * cols + l]; }
};

// Reductions below split the index range into a fixed number of chunks, so the
// parallel result does not depend on the worker count.
inline constexpr int kReductionChunks = 64;

namespace serial {
std::vector<ShotRecord> sample_shots(const HybridSampler& s, std::uint64_t seed, std::uint64_t stream,
                                     std::uint64_t count);
std::vector<double> scan_reduction_factors(const LcuDecomposition& dec, std::span<const Partition> parts,
                                           const MixedState& rho);
SineTable odd_sine_table(std::span<const double> z, std::span<const double> w, std::span<const double> y,
                         std::span<const double> lambda);
// sum_j w_j exp(-i t (H + k_j L))
ComplexMatrix weighted_exponential_sum(const ComplexMatrix& h, const ComplexMatrix& l, double t,
                                       std::span<const double> nodes, std::span<const double> weights);
}  // namespace serial

namespace parallel {
std::vector<ShotRecord> sample_shots(const HybridSampler& s, std::uint64_t seed, std::uint64_t stream,
                                     std::uint64_t count);
std::vector<double> scan_reduction_factors(const LcuDecomposition& dec, std::span<const Partition> parts,
                                           const MixedState& rho);
SineTable odd_sine_table(std::span<const double> z, std::span<const double> w, std::span<const double> y,
                         std::span<const double> lambda);
ComplexMatrix weighted_exponential_sum(const ComplexMatrix& h, const ComplexMatrix& l, double t,
                                       std::span<const double> nodes, std::span<const double> weights);
}  // namespace parallel

}  // namespace hlcu::kernels
