#include "hlcu/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "hlcu/errors.hpp"

namespace hlcu {

namespace {
// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights come from
// the first components of its eigenvectors.
QuadratureRule golub_welsch(const Eigen::VectorXd& offdiag, double mu0) {
  const Eigen::Index n = offdiag.size() + 1;
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) j(i, i + 1) = j(i + 1, i) = offdiag(i);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  QuadratureRule r;
  for (Eigen::Index i = 0; i < n; ++i) {
    r.nodes.push_back(es.eigenvalues()(i));
    const double v0 = es.eigenvectors()(0, i);
    r.weights.push_back(mu0 * v0 * v0);
  }
  return r;
}
}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("quadrature order must be positive");
  Eigen::VectorXd b(n - 1);
  for (int k = 1; k < n; ++k) b(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  return golub_welsch(b, 2.0);
}

QuadratureRule gauss_hermite_normal(int n) {
  if (n < 1) throw DomainError("quadrature order must be positive");
  Eigen::VectorXd b(n - 1);
  for (int k = 1; k < n; ++k) b(k - 1) = std::sqrt(static_cast<double>(k));
  return golub_welsch(b, 1.0);
}

}  // namespace hlcu
