#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hlcu/partition.hpp"

namespace hlcu {

// Coherent block encoding of one group, with the ancilla register padded to
// `padded_qubits`. Ancilla-major ordering: index = a * dim + s.
struct BlockEncoding {
  int ancilla_qubits = 0;
  int padded_qubits = 0;
  int dim = 0;
  ComplexMatrix prepare;                     // 2^padded square, real first column sqrt(p_i/q)
  std::vector<ComplexMatrix> select_blocks;  // one per ancilla basis state; identity on padding
  ComplexMatrix encoded;                     // K_k

  int ancilla_dim() const { return 1 << padded_qubits; }
  ComplexMatrix prepare_adjoint_select_prepare() const;  // the full unitary L_k
  ComplexMatrix unitary() const { return prepare_adjoint_select_prepare(); }
  // Blocks (a, 0) of L_k, i.e. the action on |0>_A (x) |s>.
  std::vector<ComplexMatrix> first_block_column() const;
};

BlockEncoding build_block_encoding(const LcuDecomposition& dec, std::span<const int> group, int padded_qubits);

// |0><0|_B (x) L_{k'} + |1><1|_B (x) L_k.
ComplexMatrix build_controlled_pair(const BlockEncoding& lk, const BlockEncoding& lkp);

class HybridChannel {
 public:
  HybridChannel(LcuDecomposition dec, Partition part);

  const LcuDecomposition& decomposition() const { return dec_; }
  const Partition& partition() const { return part_; }
  const std::vector<GroupOperator>& groups() const { return groups_; }
  int num_groups() const { return part_.size(); }
  int dim() const { return dec_.dim(); }
  int ancilla_width() const { return part_.ancilla_width(); }
  double weight(int k) const { return groups_[k].weight; }
  const BlockEncoding& encoding(int k) const { return encodings_[k]; }

 private:
  LcuDecomposition dec_;
  Partition part_;
  std::vector<GroupOperator> groups_;
  std::vector<BlockEncoding> encodings_;
};

enum class Backend { analytic, circuit };

// tr[O Lambda(rho)] where Lambda is the normalized coherent CP map.
double exact_expectation(const HybridChannel& ch, const MixedState& rho, const Observable& o, Backend backend);
// E[g_O^2] = sum_k q_k tr[O^2 K_k rho K_k^dagger]
double second_moment(const HybridChannel& ch, const MixedState& rho, const Observable& o);

struct Outcome {
  int z;  // 0 when the ancilla register is found in |0>
  int b;  // X-basis outcome of the control qubit; 0 when k == k'
  int j;  // eigenvector index of O (ascending eigenvalues)
  double prob;
  double g;
};

std::vector<Outcome> outcome_distribution(const HybridChannel& ch, const MixedState& rho, const Observable& o, int k,
                                          int kprime);
// Expectation and second moment of g summed over the exhaustive outcome tables.
double exhaustive_expectation(const HybridChannel& ch, const MixedState& rho, const Observable& o);
double exhaustive_second_moment(const HybridChannel& ch, const MixedState& rho, const Observable& o);

struct ShotRecord {
  std::uint64_t shot;
  int k, kprime, z, b, j;
  double g;
};

// Precomputed outcome tables; every shot is drawn from its own counter-based substream.
class HybridSampler {
 public:
  HybridSampler(const HybridChannel& ch, const MixedState& rho, const Observable& o);

  ShotRecord draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t shot) const;
  int num_groups() const { return static_cast<int>(group_cdf_.size()); }

 private:
  std::vector<double> group_cdf_;
  std::vector<std::vector<Outcome>> tables_;  // indexed k * G + kprime
  std::vector<std::vector<double>> cdfs_;
};

// Multi-round composition. Each round applies its group operators virtually;
// the product of per-round reduction factors is returned alongside the states.
struct RoundComposition {
  double reduction_factor = 1.0;
  std::vector<double> round_factors;
  std::vector<MixedState> states;  // normalized input of each round, then the final state
};

RoundComposition compose_rounds(std::span<const std::vector<GroupOperator>> rounds, const MixedState& rho);

}  // namespace hlcu
