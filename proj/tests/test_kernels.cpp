#include <gtest/gtest.h>

#include <cmath>

#include "hlcu/kernels.hpp"
#include "hlcu/rng.hpp"
#include "oracles.hpp"

using namespace hlcu;

namespace {
struct WorkerGuard {
  int saved = kernels::workers();
  ~WorkerGuard() { kernels::set_workers(saved); }
};
}  // namespace

TEST(Rng, CounterStreamsAreStateless) {
  CounterRng a(1, 2, 3), b(1, 2, 3), c(1, 2, 4), d(2, 2, 3);
  const auto a0 = a.next_u64();
  EXPECT_EQ(a0, b.next_u64());
  EXPECT_NE(a0, c.next_u64());
  EXPECT_NE(a0, d.next_u64());
  EXPECT_NE(a0, a.next_u64());
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
}

TEST(Rng, UniformMoments) {
  double s = 0.0, s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    CounterRng r(9, 0, static_cast<std::uint64_t>(i));
    const double u = r.next_double();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    s += u;
    s2 += u * u;
  }
  EXPECT_NEAR(s / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(s2 / n, 1.0 / 3, 5 * std::sqrt(4.0 / 45 / n));
}

TEST(Kernels, SamplingIdenticalAcrossWorkers) {
  WorkerGuard guard;
  std::mt19937_64 rng(1);
  const auto dec = random_lcu(5, 3, rng);
  const HybridChannel ch(dec, Partition::parse("1,2|3,4,5", 5));
  const HybridSampler s(ch, random_mixed_state(3, 2, rng), Observable(random_hermitian(3, rng)));
  const auto ref = kernels::serial::sample_shots(s, 17, 1, 5000);
  for (int w : {1, 2, 3, 5}) {
    kernels::set_workers(w);
    const auto got = kernels::parallel::sample_shots(s, 17, 1, 5000);
    ASSERT_EQ(got.size(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      ASSERT_EQ(got[i].g, ref[i].g);
      ASSERT_EQ(got[i].k, ref[i].k);
      ASSERT_EQ(got[i].kprime, ref[i].kprime);
      ASSERT_EQ(got[i].j, ref[i].j);
    }
  }
}

TEST(Kernels, PartitionScanIdentical) {
  WorkerGuard guard;
  std::mt19937_64 rng(2);
  const auto dec = random_lcu(6, 2, rng);
  const auto rho = random_mixed_state(2, 2, rng);
  const auto parts = enumerate_partitions(6);
  const auto ref = kernels::serial::scan_reduction_factors(dec, parts, rho);
  for (int w : {1, 4}) {
    kernels::set_workers(w);
    EXPECT_EQ(kernels::parallel::scan_reduction_factors(dec, parts, rho), ref);
  }
}

TEST(Kernels, SineTableMatchesDirectSum) {
  WorkerGuard guard;
  std::vector<double> z{0.1, 0.2, 0.3}, w{0.5, -0.25, 1.0}, y{0.0, 1.0, 2.5}, lam{-1.0, 0.3};
  const auto ref = kernels::serial::odd_sine_table(z, w, y, lam);
  for (std::size_t j = 0; j < y.size(); ++j)
    for (std::size_t l = 0; l < lam.size(); ++l) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += w[k] * std::sin(z[k] * y[j] * lam[l]);
      EXPECT_NEAR(ref(j, l), s, 1e-15);
    }
  kernels::set_workers(3);
  EXPECT_EQ(kernels::parallel::odd_sine_table(z, w, y, lam).values, ref.values);
}

TEST(Kernels, ExponentialSumAgreesAndIsWorkerIndependent) {
  WorkerGuard guard;
  std::mt19937_64 rng(3);
  const auto h = random_hermitian(3, rng);
  const auto l = random_hermitian(3, rng);
  std::vector<double> nodes, weights;
  for (int j = 0; j < 301; ++j) {
    nodes.push_back(-2.0 + 4.0 * j / 300.0);
    weights.push_back(1.0 / (1.0 + nodes.back() * nodes.back()));
  }
  const auto ref = kernels::serial::weighted_exponential_sum(h, l, 0.8, nodes, weights);
  kernels::set_workers(1);
  const auto one = kernels::parallel::weighted_exponential_sum(h, l, 0.8, nodes, weights);
  EXPECT_LE(oracle::max_abs(one - ref), 1e-12);
  for (int w : {2, 3, 7}) {
    kernels::set_workers(w);
    EXPECT_EQ(kernels::parallel::weighted_exponential_sum(h, l, 0.8, nodes, weights), one) << w;
  }
}

TEST(Kernels, RejectBadInput) {
  EXPECT_THROW(kernels::set_workers(0), DomainError);
  std::vector<double> a{1.0}, b{1.0, 2.0};
  EXPECT_THROW(kernels::serial::odd_sine_table(a, b, a, a), DomainError);
}
