#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "hlcu/errors.hpp"

namespace hlcu {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Every equality tolerance used by the library lives here.
struct Tolerances {
  static constexpr double unitarity = 1e-10;
  static constexpr double hermiticity = 1e-10;
  static constexpr double normalization = 1e-12;
  static constexpr double positivity = 1e-10;
  static constexpr double cross_backend = 1e-9;
};

inline constexpr int kMaxPureDim = 1 << 10;
inline constexpr int kMaxMixedDim = 1 << 7;

struct Eigensystem {
  RealVector values;  // ascending
  ComplexMatrix vectors;
};

double hermiticity_violation(const ComplexMatrix& m);
Eigensystem eigh(const ComplexMatrix& h);

// f applied to the spectrum: V diag(f(lambda)) V^dagger.
template <class F>
ComplexMatrix spectral_function(const Eigensystem& es, F f) {
  const Eigen::Index d = es.values.size();
  ComplexVector fv(d);
  for (Eigen::Index i = 0; i < d; ++i) fv(i) = cplx(f(es.values(i)));
  return es.vectors * fv.asDiagonal() * es.vectors.adjoint();
}

// exp(-i t H) through the spectral decomposition of H.
ComplexMatrix expm_i_hermitian(const ComplexMatrix& h, double t);
ComplexMatrix expm_i_hermitian(const Eigensystem& es, double t);

bool is_unitary(const ComplexMatrix& u, double tol = Tolerances::unitarity);
double unitarity_violation(const ComplexMatrix& u);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
cplx trace(const ComplexMatrix& m);
double spectral_norm(const ComplexMatrix& m);

// Traces out the subsystems listed in `traced` (indices into dims).
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            std::span<const int> traced);

int ceil_log2(std::size_t n);

class PureState {
 public:
  // Requires unit norm.
  explicit PureState(ComplexVector amplitudes);
  static PureState normalized_from(ComplexVector v);
  static PureState unnormalized(ComplexVector v);

  const ComplexVector& vector() const { return amp_; }
  int dim() const { return static_cast<int>(amp_.size()); }
  bool is_normalized() const { return normalized_; }
  double norm() const { return amp_.norm(); }

 private:
  PureState(ComplexVector v, bool normalized);
  ComplexVector amp_;
  bool normalized_ = true;
};

class MixedState {
 public:
  // Requires Hermitian, positive semidefinite, unit trace.
  explicit MixedState(ComplexMatrix rho);
  static MixedState from_pure(const PureState& psi);
  static MixedState unnormalized(ComplexMatrix rho);

  const ComplexMatrix& matrix() const { return rho_; }
  int dim() const { return static_cast<int>(rho_.rows()); }
  bool is_normalized() const { return normalized_; }
  double trace() const { return hlcu::trace(rho_).real(); }
  MixedState normalized() const;

 private:
  MixedState(ComplexMatrix rho, bool normalized);
  ComplexMatrix rho_;
  bool normalized_ = true;
};

class Observable {
 public:
  explicit Observable(ComplexMatrix o);
  static Observable identity(int d);

  const ComplexMatrix& matrix() const { return o_; }
  const Eigensystem& eigen() const { return es_; }
  int dim() const { return static_cast<int>(o_.rows()); }
  double norm() const { return norm_; }
  ComplexMatrix squared() const { return o_ * o_; }

 private:
  ComplexMatrix o_;
  Eigensystem es_;
  double norm_ = 0.0;
};

ComplexMatrix random_unitary(int d, std::mt19937_64& rng);
ComplexMatrix random_hermitian(int d, std::mt19937_64& rng);
PureState random_pure_state(int d, std::mt19937_64& rng);
MixedState random_mixed_state(int d, int rank, std::mt19937_64& rng);

// Text format: "dim <rows> <cols>" then one "re im" line per entry, row-major.
void write_matrix(std::ostream& os, const ComplexMatrix& m);
ComplexMatrix read_matrix(std::istream& is);

}  // namespace hlcu
