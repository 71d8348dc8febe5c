#include "hlcu/qlss.hpp"

#include <cmath>
#include <numbers>

namespace hlcu::qlss {

namespace {
const double kSqrt2Pi = std::sqrt(2.0 * std::numbers::pi);

double beta_of(std::int64_t k, double dz) {
  double b = 0.0;
  for (std::int64_t i = -k; i <= k; ++i) {
    const double z = static_cast<double>(i) * dz;
    b += dz * std::abs(z) * std::exp(-z * z / 2.0);
  }
  return b;
}
}  // namespace

Grid make_grid(std::int64_t j, std::int64_t k, double dy, double dz) {
  if (j < 1 || k < 1) throw DomainError("QLSS grid must have J >= 1 and K >= 1");
  if (!(dy > 0.0) || !(dz > 0.0)) throw DomainError("QLSS grid spacings must be positive");
  Grid g;
  g.j = j;
  g.k = k;
  g.dy = dy;
  g.dz = dz;
  g.beta = beta_of(k, dz);
  return g;
}

Grid build_grid(double kappa, double epsilon, const GridConstants& c) {
  if (!(kappa >= 1.0)) throw DomainError("condition number must be at least 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("QLSS precision must lie in (0, 1)");
  const double lg = std::log(kappa / epsilon);
  const auto j = static_cast<std::int64_t>(std::ceil(c.c_j * kappa / epsilon * lg));
  const auto k = static_cast<std::int64_t>(std::ceil(c.c_k * kappa * lg));
  Grid g = make_grid(j, k, c.c_y * epsilon / std::sqrt(lg), c.c_z / (kappa * std::sqrt(lg)));
  g.kappa = kappa;
  g.epsilon = epsilon;
  return g;
}

double one_norm(const Grid& g) { return static_cast<double>(g.j) * g.dy * g.beta / kSqrt2Pi; }

int ancilla_hybrid(const Grid& g) { return ceil_log2(static_cast<std::size_t>(2 * g.k + 1)); }

int ancilla_coherent(const Grid& g) {
  return ceil_log2(static_cast<std::size_t>(g.j) * static_cast<std::size_t>(2 * g.k + 1));
}

HybridQlss hybrid_partition(const Grid& g, const ComplexMatrix& m) {
  HybridQlss h;
  h.grid = g;
  h.system = eigh(m);
  std::vector<double> z(g.k), w(g.k), y(g.j), lambda(h.system.values.data(),
                                                       h.system.values.data() + h.system.values.size());
  for (std::int64_t i = 0; i < g.k; ++i) {
    z[i] = static_cast<double>(i + 1) * g.dz;
    w[i] = 2.0 / g.beta * g.dz * z[i] * std::exp(-z[i] * z[i] / 2.0);
  }
  for (std::int64_t j = 0; j < g.j; ++j) y[j] = static_cast<double>(j) * g.dy;
  h.values = kernels::parallel::odd_sine_table(z, w, y, lambda);
  h.q = 1.0 / static_cast<double>(g.j);
  return h;
}

ComplexMatrix group_operator(const HybridQlss& h, std::int64_t j) {
  if (j < 0 || j >= h.grid.j) throw DomainError("group index out of range");
  const auto d = static_cast<Eigen::Index>(h.values.cols);
  ComplexVector diag(d);
  for (Eigen::Index l = 0; l < d; ++l) diag(l) = h.values(static_cast<std::size_t>(j), static_cast<std::size_t>(l));
  return h.system.vectors * diag.asDiagonal() * h.system.vectors.adjoint();
}

namespace {
ComplexVector in_eigenbasis(const HybridQlss& h, const ComplexVector& b) {
  if (b.size() != h.system.values.size()) throw DomainError("right-hand side dimension mismatch");
  return h.system.vectors.adjoint() * b;
}
}  // namespace

ReductionFactors reduction_factors(const HybridQlss& h, const ComplexVector& b) {
  const ComplexVector bt = in_eigenbasis(h, b);
  const std::size_t d = h.values.cols;
  ReductionFactors r;
  std::vector<double> mean(d, 0.0), second(d, 0.0);
  for (std::size_t j = 0; j < h.values.rows; ++j)
    for (std::size_t l = 0; l < d; ++l) {
      const double v = h.values(j, l);
      mean[l] += v;
      second[l] += v * v;
    }
  double inv_abs = 0.0;
  for (std::size_t l = 0; l < d; ++l) {
    const double w = std::norm(bt(l));
    const double a = h.q * mean[l];
    r.p += w * a * a;
    r.r_int += w * h.q * second[l];
    inv_abs += w / std::abs(h.system.values(l));
  }
  const double c1 = one_norm(h.grid);
  r.r_int_closed_form = std::numbers::pi * std::sqrt(2.0) / (4.0 * h.grid.beta * c1) * inv_abs;
  // every term is unitary: R = sum of term probabilities times <b|b>
  double psum = 0.0;
  for (std::int64_t k = -h.grid.k; k <= h.grid.k; ++k) {
    const double z = static_cast<double>(k) * h.grid.dz;
    psum += h.grid.dz * std::abs(z) * std::exp(-z * z / 2.0);
  }
  psum *= static_cast<double>(h.grid.j) * h.grid.dy / (kSqrt2Pi * c1);
  r.r_rand = psum * b.squaredNorm();
  return r;
}

double inverse_error(const HybridQlss& h, const ComplexVector& b) {
  const ComplexVector bt = in_eigenbasis(h, b);
  const double c1 = one_norm(h.grid);
  double num = 0.0, den = 0.0;
  for (std::size_t l = 0; l < h.values.cols; ++l) {
    double s = 0.0;
    for (std::size_t j = 0; j < h.values.rows; ++j) s += h.values(j, l);
    const double approx = c1 * h.q * s;
    const double exact = 1.0 / h.system.values(l);
    num += std::norm(bt(l)) * (approx - exact) * (approx - exact);
    den += std::norm(bt(l)) * exact * exact;
  }
  return std::sqrt(num / den);
}

ComplexMatrix random_conditioned_hermitian(int dim, double kappa, std::mt19937_64& rng) {
  if (dim < 2) throw DomainError("need dimension at least 2");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealVector ev(dim);
  ev(0) = 1.0 / kappa;
  ev(1) = 1.0;
  for (int i = 2; i < dim; ++i) ev(i) = std::exp(std::log(1.0 / kappa) * u(rng));
  for (int i = 0; i < dim; ++i)
    if (u(rng) < 0.5) ev(i) = -ev(i);
  const ComplexMatrix v = random_unitary(dim, rng);
  ComplexMatrix m = v * ev.cast<cplx>().asDiagonal() * v.adjoint();
  return 0.5 * (m + m.adjoint());
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope fit needs at least two points");
  double mx = 0, my = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace hlcu::qlss
