#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "hlcu/hybrid.hpp"
#include "oracles.hpp"

using namespace hlcu;

namespace {
const ComplexMatrix I2 = ComplexMatrix::Identity(2, 2);

// Pi_A (x) 1 restricted block of a full ancilla-major unitary.
ComplexMatrix top_block(const ComplexMatrix& l, int d) { return l.topLeftCorner(d, d); }

Partition random_partition(int m, std::mt19937_64& rng) {
  const auto all = enumerate_partitions(m);
  return all[rng() % all.size()];
}
}  // namespace

TEST(BlockEncoding, SingletonHasNoAncilla) {
  std::mt19937_64 rng(1);
  const auto dec = random_lcu(3, 2, rng);
  const int g[] = {1};
  const auto be = build_block_encoding(dec, g, 0);
  EXPECT_EQ(be.ancilla_qubits, 0);
  EXPECT_LE(oracle::max_abs(be.unitary() - dec.unitary(1)), 1e-14);
}

TEST(BlockEncoding, UniformPairPrepareColumn) {
  const auto dec = LcuDecomposition::normalize({{1.0, I2}, {1.0, oracle::pauli_z()}});
  const int g[] = {0, 1};
  const auto be = build_block_encoding(dec, g, 1);
  EXPECT_NEAR(be.prepare(0, 0).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(be.prepare(1, 0).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_LE(unitarity_violation(be.prepare), 1e-12);
}

TEST(BlockEncoding, FullGroupEncodesKlcu) {
  std::mt19937_64 rng(2);
  for (int m : {2, 3, 5, 6}) {
    const auto dec = random_lcu(m, 3, rng);
    std::vector<int> g(m);
    for (int i = 0; i < m; ++i) g[i] = i;
    for (int pad = ceil_log2(m); pad <= 3; ++pad) {
      const auto be = build_block_encoding(dec, g, pad);
      const auto l = be.unitary();
      EXPECT_LE(unitarity_violation(l), 1e-10);
      EXPECT_LE(oracle::max_abs(top_block(l, 3) - assemble_klcu(dec)), 1e-10) << m << " " << pad;
      const auto col = be.first_block_column();
      for (int a = 0; a < be.ancilla_dim(); ++a)
        EXPECT_LE(oracle::max_abs(col[a] - l.block(a * 3, 0, 3, 3)), 1e-12);
    }
  }
}

TEST(BlockEncoding, RejectsNarrowPadding) {
  std::mt19937_64 rng(3);
  const auto dec = random_lcu(3, 2, rng);
  const int g[] = {0, 1, 2};
  EXPECT_THROW(build_block_encoding(dec, g, 1), DomainError);
}

TEST(ControlledPair, DiagonalAndSingletons) {
  std::mt19937_64 rng(4);
  const auto dec = random_lcu(4, 2, rng);
  const int g01[] = {0, 1}, g23[] = {2, 3};
  const auto a = build_block_encoding(dec, g01, 1);
  const auto b = build_block_encoding(dec, g23, 1);
  EXPECT_LE(oracle::max_abs(build_controlled_pair(a, a) - kron(I2, a.unitary())), 1e-14);
  const auto lc = build_controlled_pair(a, b);
  EXPECT_LE(unitarity_violation(lc), 1e-10);
  const int s0[] = {0}, s1[] = {1};
  const auto u0 = build_block_encoding(dec, s0, 0), u1 = build_block_encoding(dec, s1, 0);
  const auto c = build_controlled_pair(u0, u1);
  EXPECT_LE(oracle::max_abs(c.topLeftCorner(2, 2) - dec.unitary(1)), 1e-14);
  EXPECT_LE(oracle::max_abs(c.bottomRightCorner(2, 2) - dec.unitary(0)), 1e-14);
  EXPECT_LE(oracle::max_abs(c.topRightCorner(2, 2)), 0.0);
}

TEST(Channel, WeightsSumToOne) {
  std::mt19937_64 rng(5);
  const auto dec = random_lcu(5, 2, rng);
  const HybridChannel ch(dec, Partition::parse("1,4|2|3,5", 5));
  double s = 0.0;
  for (int k = 0; k < ch.num_groups(); ++k)
    for (int kp = 0; kp < ch.num_groups(); ++kp) s += ch.weight(k) * ch.weight(kp);
  EXPECT_NEAR(s, 1.0, 1e-12);
  EXPECT_EQ(ch.ancilla_width(), 1);
}

TEST(Expectation, ProjectorExampleAllPartitions) {
  const auto dec = LcuDecomposition::normalize({{1.0, I2}, {1.0, oracle::pauli_z()}});
  const MixedState plus(oracle::plus_state());
  for (const auto& part : enumerate_partitions(2)) {
    const HybridChannel ch(dec, part);
    for (auto be : {Backend::analytic, Backend::circuit}) {
      EXPECT_NEAR(exact_expectation(ch, plus, Observable(oracle::pauli_z()), be), 0.5, 1e-12);
      EXPECT_NEAR(exact_expectation(ch, plus, Observable::identity(2), be), 0.5, 1e-12);
    }
    EXPECT_NEAR(exhaustive_expectation(ch, plus, Observable(oracle::pauli_z())), 0.5, 1e-12);
  }
}

TEST(Expectation, SingleTerm) {
  std::mt19937_64 rng(6);
  const auto u = random_unitary(3, rng);
  const auto dec = LcuDecomposition::normalize({{0.7, u}});
  const auto rho = random_mixed_state(3, 2, rng);
  const Observable o(random_hermitian(3, rng));
  const HybridChannel ch(dec, Partition::singletons(1));
  const double want = (o.matrix() * u * rho.matrix() * u.adjoint()).trace().real();
  EXPECT_NEAR(exact_expectation(ch, rho, o, Backend::analytic), want, 1e-12);
  EXPECT_NEAR(exact_expectation(ch, rho, o, Backend::circuit), want, 1e-12);
}

TEST(Expectation, BackendsAgreeOnRandomInstances) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 6);
    const int d = 1 + static_cast<int>(rng() % 8);
    const auto dec = random_lcu(m, d, rng);
    const auto rho = random_mixed_state(d, 1 + static_cast<int>(rng() % d), rng);
    const Observable o(random_hermitian(d, rng));
    const HybridChannel ch(dec, random_partition(m, rng));
    const double truth = oracle::direct_expectation(dec, rho.matrix(), o.matrix());
    EXPECT_NEAR(exact_expectation(ch, rho, o, Backend::analytic), truth, 1e-9);
    EXPECT_NEAR(exact_expectation(ch, rho, o, Backend::circuit), truth, 1e-9);
    EXPECT_NEAR(exhaustive_expectation(ch, rho, o), truth, 1e-9);
    const double r_obs = oracle::direct_r(dec, ch.partition().groups(), rho.matrix(), o.squared());
    EXPECT_NEAR(second_moment(ch, rho, o), r_obs, 1e-9);
    EXPECT_NEAR(exhaustive_second_moment(ch, rho, o), r_obs, 1e-9);
  }
}

TEST(SecondMoment, PauliEqualsReductionFactorAndSingletonSum) {
  std::mt19937_64 rng(8);
  const auto dec = random_lcu(4, 2, rng);
  const auto rho = random_mixed_state(2, 2, rng);
  const HybridChannel ch(dec, Partition::parse("1,2|3,4", 4));
  EXPECT_NEAR(second_moment(ch, rho, Observable(oracle::pauli_x())), reduction_factor(dec, ch.partition(), rho),
              1e-12);
  const Observable o(random_hermitian(2, rng));
  const HybridChannel s(dec, Partition::singletons(4));
  double sum = 0.0;
  for (int i = 0; i < 4; ++i)
    sum += dec.prob(i) * (o.squared() * dec.unitary(i) * rho.matrix() * dec.unitary(i).adjoint()).trace().real();
  EXPECT_NEAR(second_moment(s, rho, o), sum, 1e-12);
}

TEST(Outcomes, SingleTermDeterministicAncilla) {
  std::mt19937_64 rng(9);
  const auto dec = LcuDecomposition::normalize({{1.0, random_unitary(2, rng)}});
  const HybridChannel ch(dec, Partition::singletons(1));
  const auto table = outcome_distribution(ch, random_mixed_state(2, 2, rng), Observable(oracle::pauli_z()), 0, 0);
  double pz0 = 0.0;
  for (const auto& e : table) {
    EXPECT_EQ(e.b, 0);
    if (e.z == 0) pz0 += e.prob;
  }
  EXPECT_NEAR(pz0, 1.0, 1e-12);
}

TEST(Outcomes, CoherentGroupBornRule) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const auto dec = random_lcu(3, 3, rng);
    const auto rho = random_mixed_state(3, 3, rng);
    const Observable o(random_hermitian(3, rng));
    const HybridChannel ch(dec, Partition::coarsest(3));
    const auto table = outcome_distribution(ch, rho, o, 0, 0);
    double total = 0.0, pz0 = 0.0;
    for (const auto& e : table) {
      EXPECT_GE(e.prob, 0.0);
      EXPECT_EQ(e.b, 0);
      total += e.prob;
      if (e.z == 0) pz0 += e.prob;
      EXPECT_TRUE(e.z == 0 || e.g == 0.0);
      EXPECT_LE(std::abs(e.g), o.norm() + 1e-12);
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
    EXPECT_NEAR(pz0, success_probability(dec, rho), 1e-10);
  }
}

TEST(Outcomes, CrossPairsNormalized) {
  std::mt19937_64 rng(11);
  const auto dec = random_lcu(5, 2, rng);
  const auto rho = random_mixed_state(2, 1, rng);
  const Observable o(random_hermitian(2, rng));
  const HybridChannel ch(dec, Partition::parse("1,2,3|4|5", 5));
  for (int k = 0; k < 3; ++k)
    for (int kp = 0; kp < 3; ++kp) {
      double total = 0.0;
      for (const auto& e : outcome_distribution(ch, rho, o, k, kp)) total += e.prob;
      EXPECT_NEAR(total, 1.0, 1e-10);
    }
}

TEST(Sampler, DeterministicInstance) {
  const auto dec = LcuDecomposition::normalize({{1.0, I2}});
  const HybridChannel ch(dec, Partition::singletons(1));
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const HybridSampler s(ch, MixedState(zero), Observable(oracle::pauli_z()));
  for (std::uint64_t i = 0; i < 100; ++i) EXPECT_EQ(s.draw(1, 0, i).g, 1.0);
}

TEST(Sampler, ReproducibleByCounter) {
  std::mt19937_64 rng(12);
  const auto dec = random_lcu(4, 2, rng);
  const HybridChannel ch(dec, Partition::parse("1,2|3|4", 4));
  const HybridSampler s(ch, random_mixed_state(2, 2, rng), Observable(random_hermitian(2, rng)));
  int differ = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto a = s.draw(5, 1, i), b = s.draw(5, 1, i), c = s.draw(5, 2, i);
    EXPECT_EQ(a.g, b.g);
    EXPECT_EQ(a.k, b.k);
    EXPECT_EQ(a.kprime, b.kprime);
    differ += (a.g != c.g || a.k != c.k || a.kprime != c.kprime);
  }
  EXPECT_GT(differ, 0);
}

TEST(Sampler, MomentsAndPairFrequencies) {
  std::mt19937_64 rng(13);
  const auto dec = random_lcu(5, 3, rng);
  const auto rho = random_mixed_state(3, 2, rng);
  const Observable o(random_hermitian(3, rng));
  const HybridChannel ch(dec, Partition::parse("1,2|3,4|5", 5));
  const HybridSampler s(ch, rho, o);
  const int n = 100000;
  double sum = 0.0, sum2 = 0.0, sum4 = 0.0;
  std::map<std::pair<int, int>, int> pairs;
  for (int i = 0; i < n; ++i) {
    const auto r = s.draw(42, 0, static_cast<std::uint64_t>(i));
    EXPECT_LE(std::abs(r.g), o.norm() + 1e-12);
    EXPECT_TRUE(r.z == 0 || r.g == 0.0);
    sum += r.g;
    sum2 += r.g * r.g;
    sum4 += r.g * r.g * r.g * r.g;
    ++pairs[{r.k, r.kprime}];
  }
  const double mean = sum / n, m2 = sum2 / n;
  const double se1 = std::sqrt((m2 - mean * mean) / n);
  const double se2 = std::sqrt((sum4 / n - m2 * m2) / n);
  EXPECT_LE(std::abs(mean - exact_expectation(ch, rho, o, Backend::analytic)), 5 * se1);
  EXPECT_LE(std::abs(m2 - reduction_factor_obs(dec, ch.partition(), rho, o)), 5 * se2);
  for (int k = 0; k < 3; ++k)
    for (int kp = 0; kp < 3; ++kp) {
      const double p = ch.weight(k) * ch.weight(kp);
      const double expect = p * n;
      EXPECT_LE(std::abs(pairs[{k, kp}] - expect), 5 * std::sqrt(n * p * (1 - p))) << k << kp;
    }
}

TEST(Rounds, SingleRoundIsReductionFactor) {
  std::mt19937_64 rng(14);
  const auto dec = random_lcu(4, 3, rng);
  const auto rho = random_mixed_state(3, 3, rng);
  const auto part = Partition::parse("1,3|2,4", 4);
  const std::vector<std::vector<GroupOperator>> rounds{group_operators(dec, part)};
  const auto c = compose_rounds(rounds, rho);
  EXPECT_NEAR(c.reduction_factor, reduction_factor(dec, part, rho), 1e-12);
  EXPECT_EQ(c.states.size(), 2u);
}

TEST(Rounds, ProjectorRoundsMultiply) {
  // two rounds of K = (1 + Z)/2 on |+>: first round R = 1/2, then the state is |0> and R = 1
  const auto dec = LcuDecomposition::normalize({{1.0, I2}, {1.0, oracle::pauli_z()}});
  const auto g = group_operators(dec, Partition::coarsest(2));
  const std::vector<std::vector<GroupOperator>> rounds{g, g};
  const auto c = compose_rounds(rounds, MixedState(oracle::plus_state()));
  ASSERT_EQ(c.round_factors.size(), 2u);
  EXPECT_NEAR(c.round_factors[0], 0.5, 1e-15);
  EXPECT_NEAR(c.round_factors[1], 1.0, 1e-15);
  EXPECT_NEAR(c.reduction_factor, c.round_factors[0] * c.round_factors[1], 1e-15);
  EXPECT_NEAR(c.states[1].matrix()(0, 0).real(), 1.0, 1e-15);
}

TEST(Rounds, UnitaryRoundsGiveOne) {
  std::mt19937_64 rng(15);
  const auto dec = random_lcu(3, 2, rng);
  const auto g = group_operators(dec, Partition::singletons(3));
  const std::vector<std::vector<GroupOperator>> rounds{g, g, g};
  EXPECT_NEAR(compose_rounds(rounds, random_mixed_state(2, 2, rng)).reduction_factor, 1.0, 1e-12);
}

TEST(Rounds, VanishingTraceRejected) {
  const auto dec = LcuDecomposition::normalize({{1.0, I2}, {1.0, oracle::pauli_z()}});
  const auto g = group_operators(dec, Partition::coarsest(2));
  ComplexMatrix one = ComplexMatrix::Zero(2, 2);
  one(1, 1) = 1.0;
  const std::vector<std::vector<GroupOperator>> rounds{g};
  EXPECT_THROW(compose_rounds(rounds, MixedState(one)), DegenerateRoundError);
}
