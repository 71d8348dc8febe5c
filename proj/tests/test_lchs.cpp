#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hlcu/lchs.hpp"
#include "oracles.hpp"

using namespace hlcu;
using namespace hlcu::lchs;
using std::numbers::pi;

namespace {
// Random A with PSD Hermitian part of norm l_norm.
ComplexMatrix random_dissipative(int d, double l_norm, std::mt19937_64& rng) {
  const auto v = random_unitary(d, rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealVector ev(d);
  for (int i = 0; i < d; ++i) ev(i) = l_norm * u(rng);
  ev(0) = l_norm;
  const ComplexMatrix l = v * ev.cast<cplx>().asDiagonal() * v.adjoint();
  return l + cplx(0.0, 1.0) * random_hermitian(d, rng);
}

ComplexMatrix scalar(cplx a) { return ComplexMatrix::Constant(1, 1, a); }
}  // namespace

TEST(Split, Cases) {
  std::mt19937_64 rng(1);
  const auto psd = random_mixed_state(3, 3, rng).matrix();
  const auto s = split_hermitian(psd);
  EXPECT_LE(oracle::max_abs(s.h), 1e-15);
  EXPECT_EQ(s.shift, 0.0);
  const ComplexMatrix anti = cplx(0.0, 1.0) * random_hermitian(3, rng);
  EXPECT_LE(oracle::max_abs(split_hermitian(anti).l), 1e-15);
  ComplexMatrix a(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = cplx(std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng));
  const auto r = split_hermitian(a);
  EXPECT_LE(oracle::max_abs(r.l + cplx(0.0, 1.0) * r.h - a), 1e-12);
  EXPECT_LE(hermiticity_violation(r.l), 1e-15);
  EXPECT_LE(hermiticity_violation(r.h), 1e-15);
  const auto es = eigh(r.l_shifted);
  EXPECT_GE(es.values(0), -1e-12);
  EXPECT_NEAR(r.shift, std::max(0.0, -eigh(r.l).values(0)), 1e-14);
  EXPECT_NEAR(r.l_norm, es.values(2), 1e-12);
}

TEST(Truncation, Values) {
  EXPECT_NEAR(truncation_k1(0.5), 1.0, 1e-15);
  EXPECT_NEAR(truncation_k1(5e-5), 12732.4, 0.01);
  EXPECT_NEAR(truncation_k1(5e-5), 2.0 / (pi * 5e-5), 1e-3);
  EXPECT_LT(truncation_k1(1.0 - 1e-9), 1e-8);
  EXPECT_THROW(truncation_k1(0.0), DomainError);
  // tail mass beyond K1 is eps
  const double eps = 0.03;
  EXPECT_NEAR(1.0 - 2.0 / pi * std::atan(truncation_k1(eps)), eps, 1e-14);
}

TEST(Discretize, GridStructure) {
  const double k1 = truncation_k1(0.01);
  const auto d = discretize(k1, 3.0, 0.01, 2.0, 1.0, 1.0);
  ASSERT_EQ(static_cast<std::int64_t>(d.nodes.size()), d.m + 1);
  EXPECT_EQ(d.m, static_cast<std::int64_t>(std::ceil(2.0 * std::sqrt(27.0 / 0.01))));
  const double h = 6.0 / static_cast<double>(d.m);
  for (std::int64_t j = 0; j <= d.m; ++j) {
    EXPECT_NEAR(d.nodes[j], -3.0 + h * j, 1e-12);
    EXPECT_GT(d.weights[j], 0.0);
    const double full = h / (pi * (1.0 + d.nodes[j] * d.nodes[j]));
    EXPECT_NEAR(d.weights[j], (j == 0 || j == d.m) ? 0.5 * full : full, 1e-15);
  }
  EXPECT_NEAR(d.alpha, std::atan(k1) - std::atan(3.0), 1e-15);
}

TEST(Discretize, Limits) {
  const double k1 = truncation_k1(0.01);
  const auto empty = discretize(k1, 0.0, 0.01, 2.0, 1.0, 1.0);
  EXPECT_EQ(empty.m, 0);
  EXPECT_EQ(empty.s_norm1, 0.0);
  const auto full = discretize(k1, k1, 0.01, 2.0, 1.0, 1.0);
  EXPECT_EQ(full.alpha, 0.0);
  EXPECT_THROW(discretize(k1, k1 + 1.0, 0.01, 2.0, 1.0, 1.0), DomainError);
}

TEST(Discretize, WeightMassNearArctan) {
  const auto d = discretize(truncation_k1(1e-4), 1.0, 1e-4, 1.0, 10.0, 1.0);
  ASSERT_GE(d.m, 1000);
  EXPECT_NEAR(d.s_norm1, 0.5, 0.005);
  for (double k2 : {0.5, 4.0, 40.0}) {
    const auto e = discretize(truncation_k1(1e-4), k2, 1e-4, 1.0, 10.0, 1.0);
    EXPECT_NEAR(e.s_norm1, 2.0 / pi * std::atan(k2), 0.01 * 2.0 / pi * std::atan(k2));
  }
}

TEST(Discretize, SummationRegimesAgree) {
  // direct long-double sum against the summation used on either side of the switch
  for (std::int64_t m : {std::int64_t{1000}, std::int64_t{1} << 22, (std::int64_t{1} << 22) + 2, std::int64_t{1} << 23}) {
    const double k2 = 50.0;
    long double acc = 0.0L;
    const long double h = 2.0L * k2 / m;
    for (std::int64_t j = 0; j <= m; ++j) {
      const long double k = -k2 + h * j;
      acc += ((j == 0 || j == m) ? 0.5L : 1.0L) * h / (pi * (1.0L + k * k));
    }
    EXPECT_NEAR(trapezoid_weight_sum(k2, m), static_cast<double>(acc), 1e-12) << m;
  }
}

TEST(Bound, Limits) {
  const double k1 = truncation_k1(5e-5);
  EXPECT_EQ(rp_bound(k1, k1, 0.9), 0.0);
  EXPECT_NEAR(rp_bound(k1, 0.0, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(rp_bound_tight(k1, 0.0, 0.0), 1.0, 1e-15);
  // exact and approximate forms coincide in the coherent limit and when s_norm1 matches the arctan mass
  const double k2 = 30.0;
  const double s = 2.0 / pi * std::atan(k2);
  EXPECT_NEAR(rp_bound(k1, k2, s), rp_bound_approx(k1, k2), 1e-12);
}

TEST(Bound, OperatingPoint) {
  const double eps = 5e-5, l = 2.0, t = 3.0;
  const double c = figure_m_constant(l, t, eps, std::pow(2.0, 29));
  const double k1 = truncation_k1(eps);
  const double k2 = k2_for_terms(std::pow(2.0, 21), l, t, eps, c);
  const auto d = discretize(k1, k2, eps, l, t, c, false);
  EXPECT_NEAR(static_cast<double>(d.m), std::pow(2.0, 21), 2.0);
  EXPECT_LE(rp_bound(k1, k2, d.s_norm1), 1.1e-2);
  EXPECT_EQ(discretize(k1, k1, eps, l, t, c, false).m, std::int64_t{1} << 29);
}

TEST(Bound, HoldsOnExplicitDecomposition) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 6; ++trial) {
    const auto a = random_dissipative(2, 1.0, rng);
    const auto split = split_hermitian(a);
    const double eps = 0.2;
    const double k1 = truncation_k1(eps);
    const double k2 = 0.5 + 0.4 * trial;
    const auto lchs = build_hybrid_lcu(split, 0.5, eps, k2, 0.3);
    ASSERT_LE(lchs.window().m, 64);
    const auto ex = explicit_decomposition(lchs, 6);
    const auto rho = random_mixed_state(2, 2, rng);
    const double r = reduction_factor(ex.dec, ex.partition, rho);
    const double p = success_probability(ex.dec, rho);
    EXPECT_LE(r - p, rp_bound(k1, k2, lchs.window().s_norm1) + 1e-9);
    EXPECT_NEAR(lchs.q_window() + lchs.q_tail(), 1.0, 1e-12);
    EXPECT_NEAR(ex.dec.one_norm(), lchs.one_norm(), 1e-12);
  }
}

TEST(BuildLcu, FullyCoherentWhenNoTail) {
  std::mt19937_64 rng(3);
  const auto split = split_hermitian(random_dissipative(2, 1.0, rng));
  const double eps = 0.3;
  const auto lchs = build_hybrid_lcu(split, 0.4, eps, truncation_k1(eps), 0.2);
  EXPECT_EQ(lchs.q_tail(), 0.0);
  EXPECT_NEAR(lchs.q_window(), 1.0, 1e-15);
  const auto ex = explicit_decomposition(lchs, 4);
  EXPECT_EQ(ex.partition.size(), 1);
  EXPECT_THROW(build_hybrid_lcu(split, 0.4, eps, truncation_k1(eps) * 2, 0.2), DomainError);
}

TEST(TailSampler, InverseCdfHistogram) {
  std::mt19937_64 rng(4);
  const auto split = split_hermitian(random_dissipative(2, 1.0, rng));
  const double eps = 0.05, k2 = 2.0;
  const double k1 = truncation_k1(eps);
  const auto lchs = build_hybrid_lcu(split, 1.0, eps, k2, 1.0);
  const int n = 100000, bins = 20;
  std::vector<int> hist(bins, 0);
  int negative = 0;
  const double lo = std::atan(k2), span = std::atan(k1) - lo;
  for (int i = 0; i < n; ++i) {
    CounterRng r(9, 4, static_cast<std::uint64_t>(i));
    const double k = lchs.sample_tail_node(r);
    ASSERT_GE(std::abs(k), k2 - 1e-12);
    ASSERT_LE(std::abs(k), k1 + 1e-9);
    negative += k < 0;
    // the truncated Cauchy CDF in |k| is uniform in arctan |k|
    const int b = std::min(bins - 1, static_cast<int>((std::atan(std::abs(k)) - lo) / span * bins));
    ++hist[b];
  }
  double chi2 = 0.0;
  const double e = static_cast<double>(n) / bins;
  for (int c : hist) chi2 += (c - e) * (c - e) / e;
  EXPECT_LT(chi2, 43.8);  // 0.999 quantile of chi^2 with 19 degrees of freedom
  EXPECT_NEAR(negative, n / 2, 5 * std::sqrt(n / 4.0));
}

TEST(TailSampler, MonteCarloMatchesQuadrature) {
  const auto split = split_hermitian(scalar(cplx(0.7, 1.3)));
  const double eps = 0.05, k2 = 1.5, t = 0.8;
  const double k1 = truncation_k1(eps);
  const auto lchs = build_hybrid_lcu(split, t, eps, k2, 1.0);
  const cplx quad = tail_integral(split, t, k1, k2)(0, 0);
  const int n = 200000;
  cplx sum = 0;
  double sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    CounterRng r(3, 5, static_cast<std::uint64_t>(i));
    const cplx v = lchs.term_unitary(lchs.sample_tail_node(r))(0, 0);
    sum += v;
    sum2 += std::norm(v);
  }
  const double mass = 2.0 / pi * (std::atan(k1) - std::atan(k2));
  const cplx mean = sum / static_cast<double>(n);
  const double se = mass * std::sqrt((sum2 / n - std::norm(mean)) / n);
  EXPECT_LE(std::abs(mass * mean - quad), 5 * se);
}

TEST(Propagator, ScalarAgainstClosedForm) {
  // the full-line Cauchy integral of exp(-iT(h + k l)) is exp(-T(l + i h))
  const double eps = 0.01, t = 1.3;
  for (cplx a : {cplx(0.4, 0.0), cplx(1.5, -2.0), cplx(0.0, 1.0)}) {
    const auto split = split_hermitian(scalar(a));
    const double k1 = truncation_k1(eps);
    for (double k2 : {0.0, 5.0, k1}) {
      const auto lchs = build_hybrid_lcu(split, t, eps, k2, 1.0);
      const cplx approx = (lchs.window_operator() + tail_integral(split, t, k1, k2))(0, 0);
      EXPECT_LE(std::abs(approx - std::exp(-t * a)), 2 * eps) << a << " " << k2;
      EXPECT_LE(propagator_error(scalar(a), t, eps, k2, 1.0), 2 * eps);
    }
  }
}

TEST(Propagator, ZeroTimeIsIdentity) {
  // every term is the identity, so the error is the missing Cauchy mass: eps from truncation plus the window's
  // trapezoid error
  std::mt19937_64 rng(5);
  const auto a = random_dissipative(3, 2.0, rng);
  const double eps = 0.01;
  const double k1 = truncation_k1(eps);
  for (double k2 : {k1, 4.0, 0.0}) {
    const auto d = discretize(k1, k2, eps, 2.0, 0.0, 1.0, false);
    const double missing = std::abs(1.0 - d.s_norm1 - 2.0 / pi * d.alpha);
    const double err = propagator_error(a, 0.0, eps, k2, 1.0);
    EXPECT_NEAR(err, missing, 1e-9) << k2;
    EXPECT_LE(err, 1.01 * eps) << k2;
  }
}

TEST(Propagator, RandomFourDimensional) {
  std::mt19937_64 rng(6);
  const double eps = 0.01;
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_dissipative(4, 2.0, rng);
    EXPECT_LE(propagator_error(a, 1.0, eps, truncation_k1(eps), 1.0), 2 * eps);
    EXPECT_LE(propagator_error(a, 1.0, eps, 3.0, 1.0), 5 * eps);
  }
}

TEST(Propagator, ShiftedNonPsdPart) {
  // L has a negative eigenvalue; the shift is undone by e^{cT}
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = -0.5;
  a(1, 1) = cplx(1.0, 0.3);
  a(0, 1) = 0.2;
  const double eps = 0.01;
  EXPECT_LE(propagator_error(a, 0.7, eps, truncation_k1(eps), 1.0), 5 * eps * std::exp(0.5 * 0.7));
}

TEST(Propagator, HalvingTermsNeverHelps) {
  std::mt19937_64 rng(7);
  const double eps = 0.01;
  for (int s = 0; s < 20; ++s) {
    const auto a = random_dissipative(3, 2.0, rng);
    const double k1 = truncation_k1(eps);
    const double fine = propagator_error(a, 2.0, eps, k1, 0.02);
    const double coarse = propagator_error(a, 2.0, eps, k1, 0.01);
    EXPECT_GE(coarse, fine - 1e-12) << s;
  }
}

TEST(Sweep, MonotoneWithLimits) {
  const double eps = 5e-5, l = 2.0, t = 3.0, p = 1e-2;
  const double c = figure_m_constant(l, t, eps, std::pow(2.0, 29));
  const double k1 = truncation_k1(eps);
  const auto rows = fig_sweep(l, t, eps, c, p, default_k2_grid(k1, 60));
  ASSERT_EQ(rows.size(), 61u);
  EXPECT_EQ(rows.front().m, 0);
  EXPECT_NEAR(rows.front().rp_bound, 1.0, 1e-12);
  EXPECT_NEAR(rows.back().rp_bound, 0.0, 1e-12);
  EXPECT_NEAR(rows.back().overhead_bound, 1.0 / p, 1e-9);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GE(rows[i].m, rows[i - 1].m);
    EXPECT_LE(rows[i].rp_bound, rows[i - 1].rp_bound + 1e-15) << i;
    EXPECT_LE(rows[i].overhead_bound, rows[i - 1].overhead_bound + 1e-12);
  }
}
