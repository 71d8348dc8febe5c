#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hlcu/partition.hpp"

namespace hlcu::qed {

inline constexpr int kQubits = 7;
inline constexpr int kDim = 1 << kQubits;

// X^x Z^z on 7 qubits; qubit 1 is the most significant bit of the basis index.
struct PauliString {
  std::uint32_t x_mask = 0;
  std::uint32_t z_mask = 0;

  static PauliString x_on(std::initializer_list<int> qubits);  // 1-based
  static PauliString z_on(std::initializer_list<int> qubits);
  PauliString operator*(const PauliString& o) const;  // same-type strings only
  ComplexMatrix matrix() const;
};

std::vector<PauliString> steane_x_generators();
std::vector<PauliString> steane_z_generators();
std::vector<PauliString> stabilizer_group(const std::vector<PauliString>& generators);
ComplexMatrix group_projector(const std::vector<PauliString>& generators);

struct SteaneProjectors {
  ComplexMatrix p_x;
  ComplexMatrix p_z;
  ComplexMatrix p_code;  // P_Z P_X
};
SteaneProjectors steane_projectors();

// Haar-random state of the two-dimensional code space.
ComplexVector random_codeword(std::mt19937_64& rng);

// Z flips with probability p_z on every qubit, then X flips with r * p_z.
ComplexMatrix apply_biased_noise(const ComplexMatrix& rho, double p_z, double ratio);

struct Metrics {
  double p = 0.0;  // tr[P_code rho]
  double r = 0.0;  // tr[P_X rho]
};
Metrics qed_metrics(const SteaneProjectors& proj, const ComplexMatrix& rho);

struct SweepRow {
  double ratio, p_z, p_x;
  double p, r;  // means over codewords
  double p_spread, r_spread;  // sample standard deviations
};
struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<Metrics> per_codeword;  // row-major: rows x codewords
  int codewords = 0;
};
SweepResult fig_sweep(const std::vector<double>& ratios, const std::vector<double>& p_z, int codewords,
                      std::uint64_t seed);
std::vector<double> default_pz_grid();

// 64 terms S_Z S_X (p = 1/64) grouped by the Z-stabilizer: q_S = 1/8, K_S = S P_X.
struct HybridQed {
  LcuDecomposition dec;
  Partition partition;
};
HybridQed hybrid_qed_channel();
// Coherent P_X round followed by a virtual round over the Z stabilizers.
std::vector<std::vector<GroupOperator>> qed_rounds();

}  // namespace hlcu::qed
