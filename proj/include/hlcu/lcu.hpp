#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hlcu/qcore.hpp"

namespace hlcu {

// c >= 0; the phase of a complex coefficient is absorbed into the unitary.
struct UnitaryTerm {
  UnitaryTerm(cplx c, ComplexMatrix u);
  double coefficient;
  ComplexMatrix unitary;
};

class LcuDecomposition {
 public:
  // Drops zero-coefficient terms (recorded in warnings()) and normalizes.
  static LcuDecomposition normalize(std::vector<UnitaryTerm> terms);

  int size() const { return static_cast<int>(terms_.size()); }
  int dim() const { return dim_; }
  double one_norm() const { return one_norm_; }
  double prob(int i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }
  double coefficient(int i) const { return terms_[i].coefficient; }
  const ComplexMatrix& unitary(int i) const { return terms_[i].unitary; }
  const std::vector<UnitaryTerm>& terms() const { return terms_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::vector<UnitaryTerm> terms_;
  std::vector<double> probs_;
  std::vector<std::string> warnings_;
  double one_norm_ = 0.0;
  int dim_ = 0;
};

// Normalized operator sum_i p_i U_i.
ComplexMatrix assemble_klcu(const LcuDecomposition& dec);
double success_probability(const LcuDecomposition& dec, const MixedState& rho);
MixedState apply_cp_map(const LcuDecomposition& dec, const MixedState& rho);
// tr[O K rho K^dagger] with the unnormalized K = sum_i c_i U_i.
double expectation_unnormalized(const LcuDecomposition& dec, const MixedState& rho, const Observable& o);

// "m <count> dim <d>", then per term a coefficient line and a matrix block.
void write_lcu(std::ostream& os, const LcuDecomposition& dec);
LcuDecomposition read_lcu(std::istream& is);

LcuDecomposition random_lcu(int m, int dim, std::mt19937_64& rng);

}  // namespace hlcu
