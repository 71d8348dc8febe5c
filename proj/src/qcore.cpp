#include "hlcu/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

namespace hlcu {

double hermiticity_violation(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Eigensystem eigh(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) throw DomainError("eigh: matrix must be square and non-empty");
  const double v = hermiticity_violation(h);
  if (v > Tolerances::hermiticity) throw NotHermitianError(v);
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw InvariantError("eigh: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix expm_i_hermitian(const Eigensystem& es, double t) {
  return spectral_function(es, [t](double l) { return std::exp(cplx(0.0, -l * t)); });
}

ComplexMatrix expm_i_hermitian(const ComplexMatrix& h, double t) { return expm_i_hermitian(eigh(h), t); }

double unitarity_violation(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

bool is_unitary(const ComplexMatrix& u, double tol) { return unitarity_violation(u) <= tol; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

cplx trace(const ComplexMatrix& m) { return m.trace(); }

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == m.cols() && hermiticity_violation(m) <= Tolerances::hermiticity) {
    const auto es = eigh(m);
    return std::max(std::abs(es.values(0)), std::abs(es.values(es.values.size() - 1)));
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims, std::span<const int> traced) {
  const int n = static_cast<int>(dims.size());
  long total = 1;
  for (int d : dims) {
    if (d <= 0) throw DomainError("partial_trace: subsystem dimensions must be positive");
    total *= d;
  }
  if (m.rows() != total || m.cols() != total) throw DomainError("partial_trace: dimensions do not match matrix");
  std::vector<bool> drop(n, false);
  for (int t : traced) {
    if (t < 0 || t >= n) throw DomainError("partial_trace: subsystem index out of range");
    drop[t] = true;
  }
  std::vector<int> keep_idx, drop_idx;
  for (int i = 0; i < n; ++i) (drop[i] ? drop_idx : keep_idx).push_back(i);
  long kd = 1, td = 1;
  for (int i : keep_idx) kd *= dims[i];
  for (int i : drop_idx) td *= dims[i];

  // strides of each subsystem in the full row-major index
  std::vector<long> stride(n);
  long s = 1;
  for (int i = n - 1; i >= 0; --i) {
    stride[i] = s;
    s *= dims[i];
  }
  auto full_index = [&](long keep, long tr) {
    long idx = 0;
    for (int k = static_cast<int>(keep_idx.size()) - 1; k >= 0; --k) {
      idx += (keep % dims[keep_idx[k]]) * stride[keep_idx[k]];
      keep /= dims[keep_idx[k]];
    }
    for (int k = static_cast<int>(drop_idx.size()) - 1; k >= 0; --k) {
      idx += (tr % dims[drop_idx[k]]) * stride[drop_idx[k]];
      tr /= dims[drop_idx[k]];
    }
    return idx;
  };

  ComplexMatrix out = ComplexMatrix::Zero(kd, kd);
  for (long a = 0; a < kd; ++a)
    for (long b = 0; b < kd; ++b) {
      cplx acc = 0.0;
      for (long t = 0; t < td; ++t) acc += m(full_index(a, t), full_index(b, t));
      out(a, b) = acc;
    }
  return out;
}

int ceil_log2(std::size_t n) {
  int a = 0;
  while ((std::size_t{1} << a) < n) ++a;
  return a;
}

// ---- PureState ----

namespace {
void check_pure_dim(Eigen::Index d) {
  if (d < 1 || d > kMaxPureDim) throw DomainError("pure state dimension " + std::to_string(d) + " outside [1, 1024]");
}
void check_mixed_dim(Eigen::Index r, Eigen::Index c) {
  if (r != c) throw DomainError("density matrix must be square");
  if (r < 1 || r > kMaxMixedDim) throw DomainError("mixed state dimension " + std::to_string(r) + " outside [1, 128]");
}
}  // namespace

PureState::PureState(ComplexVector v, bool normalized) : amp_(std::move(v)), normalized_(normalized) {
  check_pure_dim(amp_.size());
}

PureState::PureState(ComplexVector amplitudes) : PureState(std::move(amplitudes), true) {
  if (std::abs(amp_.norm() - 1.0) > Tolerances::normalization)
    throw DomainError("pure state is not normalized: |psi| = " + std::to_string(amp_.norm()));
}

PureState PureState::normalized_from(ComplexVector v) {
  const double n = v.norm();
  if (n == 0.0) throw DomainError("cannot normalize the zero vector");
  return PureState(ComplexVector(v / n), true);
}

PureState PureState::unnormalized(ComplexVector v) { return PureState(std::move(v), false); }

// ---- MixedState ----

MixedState::MixedState(ComplexMatrix rho, bool normalized) : rho_(std::move(rho)), normalized_(normalized) {
  check_mixed_dim(rho_.rows(), rho_.cols());
  const double hv = hermiticity_violation(rho_);
  if (hv > Tolerances::hermiticity) throw NotHermitianError(hv);
  const auto es = eigh(rho_);
  if (es.values(0) < -Tolerances::positivity)
    throw DomainError("density matrix has negative eigenvalue " + std::to_string(es.values(0)));
}

MixedState::MixedState(ComplexMatrix rho) : MixedState(std::move(rho), true) {
  if (std::abs(trace() - 1.0) > Tolerances::normalization)
    throw DomainError("density matrix trace is " + std::to_string(trace()) + ", expected 1");
}

MixedState MixedState::from_pure(const PureState& psi) {
  if (psi.dim() > kMaxMixedDim) throw DomainError("pure state too large for a density matrix");
  ComplexMatrix rho = psi.vector() * psi.vector().adjoint();
  return MixedState(std::move(rho), psi.is_normalized());
}

MixedState MixedState::unnormalized(ComplexMatrix rho) { return MixedState(std::move(rho), false); }

MixedState MixedState::normalized() const {
  const double t = trace();
  if (t <= 0.0) throw DomainError("cannot normalize a density matrix with trace " + std::to_string(t));
  return MixedState(ComplexMatrix(rho_ / t), true);
}

// ---- Observable ----

Observable::Observable(ComplexMatrix o) : o_(std::move(o)), es_(eigh(o_)) {
  norm_ = std::max(std::abs(es_.values(0)), std::abs(es_.values(es_.values.size() - 1)));
}

Observable Observable::identity(int d) { return Observable(ComplexMatrix::Identity(d, d)); }

// ---- random instances ----

namespace {
ComplexMatrix gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = n(rng);
      const double im = n(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}
}  // namespace

ComplexMatrix random_unitary(int d, std::mt19937_64& rng) {
  // QR of a Ginibre matrix with the phases of R's diagonal removed is Haar.
  const ComplexMatrix g = gaussian_matrix(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const cplx rjj = r(j, j);
    const double a = std::abs(rjj);
    if (a > 0) q.col(j) *= rjj / a;
  }
  return q;
}

ComplexMatrix random_hermitian(int d, std::mt19937_64& rng) {
  const ComplexMatrix g = gaussian_matrix(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

PureState random_pure_state(int d, std::mt19937_64& rng) {
  return PureState::normalized_from(gaussian_matrix(d, 1, rng).col(0));
}

MixedState random_mixed_state(int d, int rank, std::mt19937_64& rng) {
  if (rank < 1 || rank > d) throw DomainError("random_mixed_state: rank out of range");
  const ComplexMatrix g = gaussian_matrix(d, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return MixedState(rho);
}

// ---- text format ----

void write_matrix(std::ostream& os, const ComplexMatrix& m) {
  const auto old_prec = os.precision();
  os << "dim " << m.rows() << ' ' << m.cols() << '\n' << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << m(i, j).real() << ' ' << m(i, j).imag() << '\n';
  os.precision(old_prec);
}

ComplexMatrix read_matrix(std::istream& is) {
  std::string tag;
  long rows = -1, cols = -1;
  if (!(is >> tag) || tag != "dim") throw DomainError("matrix block must start with 'dim'");
  if (!(is >> rows >> cols) || rows < 0 || cols < 0) throw DomainError("malformed matrix dimensions");
  ComplexMatrix m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) {
      double re, im;
      if (!(is >> re >> im)) throw DomainError("matrix block truncated at entry " + std::to_string(i * cols + j));
      m(i, j) = cplx(re, im);
    }
  return m;
}

}  // namespace hlcu
