#include "hlcu/kernels.hpp"

#include <omp.h>

#include <cmath>

namespace hlcu::kernels {

void set_workers(int n) {
  if (n < 1) throw DomainError("worker count must be positive");
  omp_set_num_threads(n);
}

int workers() { return omp_get_max_threads(); }

namespace {
void check_weights(std::span<const double> nodes, std::span<const double> weights) {
  if (nodes.size() != weights.size()) throw DomainError("node and weight counts differ");
}

ComplexMatrix exp_term(const ComplexMatrix& h, const ComplexMatrix& l, double t, double k) {
  return expm_i_hermitian(ComplexMatrix(h + k * l), t);
}
}  // namespace

namespace serial {

std::vector<ShotRecord> sample_shots(const HybridSampler& s, std::uint64_t seed, std::uint64_t stream,
                                     std::uint64_t count) {
  std::vector<ShotRecord> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(s.draw(seed, stream, i));
  return out;
}

std::vector<double> scan_reduction_factors(const LcuDecomposition& dec, std::span<const Partition> parts,
                                           const MixedState& rho) {
  std::vector<double> r;
  r.reserve(parts.size());
  for (const auto& p : parts) r.push_back(reduction_factor(dec, p, rho));
  return r;
}

SineTable odd_sine_table(std::span<const double> z, std::span<const double> w, std::span<const double> y,
                         std::span<const double> lambda) {
  check_weights(z, w);
  SineTable t{std::vector<double>(y.size() * lambda.size(), 0.0), y.size(), lambda.size()};
  for (std::size_t j = 0; j < y.size(); ++j)
    for (std::size_t l = 0; l < lambda.size(); ++l) {
      double acc = 0.0;
      for (std::size_t k = 0; k < z.size(); ++k) acc += w[k] * std::sin(z[k] * y[j] * lambda[l]);
      t.values[j * t.cols + l] = acc;
    }
  return t;
}

ComplexMatrix weighted_exponential_sum(const ComplexMatrix& h, const ComplexMatrix& l, double t,
                                       std::span<const double> nodes, std::span<const double> weights) {
  check_weights(nodes, weights);
  ComplexMatrix acc = ComplexMatrix::Zero(h.rows(), h.cols());
  for (std::size_t j = 0; j < nodes.size(); ++j) acc += weights[j] * exp_term(h, l, t, nodes[j]);
  return acc;
}

}  // namespace serial

namespace parallel {

std::vector<ShotRecord> sample_shots(const HybridSampler& s, std::uint64_t seed, std::uint64_t stream,
                                     std::uint64_t count) {
  std::vector<ShotRecord> out(count);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = s.draw(seed, stream, static_cast<std::uint64_t>(i));
  return out;
}

std::vector<double> scan_reduction_factors(const LcuDecomposition& dec, std::span<const Partition> parts,
                                           const MixedState& rho) {
  std::vector<double> r(parts.size());
  const auto n = static_cast<std::int64_t>(parts.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < n; ++i) r[i] = reduction_factor(dec, parts[i], rho);
  return r;
}

SineTable odd_sine_table(std::span<const double> z, std::span<const double> w, std::span<const double> y,
                         std::span<const double> lambda) {
  check_weights(z, w);
  SineTable t{std::vector<double>(y.size() * lambda.size(), 0.0), y.size(), lambda.size()};
  const auto rows = static_cast<std::int64_t>(y.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < rows; ++j)
    for (std::size_t l = 0; l < lambda.size(); ++l) {
      double acc = 0.0;
      for (std::size_t k = 0; k < z.size(); ++k) acc += w[k] * std::sin(z[k] * y[j] * lambda[l]);
      t.values[j * t.cols + l] = acc;
    }
  return t;
}

ComplexMatrix weighted_exponential_sum(const ComplexMatrix& h, const ComplexMatrix& l, double t,
                                       std::span<const double> nodes, std::span<const double> weights) {
  check_weights(nodes, weights);
  const std::size_t n = nodes.size();
  std::vector<ComplexMatrix> partial(kReductionChunks, ComplexMatrix::Zero(h.rows(), h.cols()));
#pragma omp parallel for schedule(dynamic, 1)
  for (int c = 0; c < kReductionChunks; ++c) {
    const std::size_t lo = n * c / kReductionChunks, hi = n * (c + 1) / kReductionChunks;
    for (std::size_t j = lo; j < hi; ++j) partial[c] += weights[j] * exp_term(h, l, t, nodes[j]);
  }
  ComplexMatrix acc = ComplexMatrix::Zero(h.rows(), h.cols());
  for (const auto& p : partial) acc += p;
  return acc;
}

}  // namespace parallel

}  // namespace hlcu::kernels
