#include "hlcu/lchs.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hlcu/kernels.hpp"
#include "hlcu/quadrature.hpp"

namespace hlcu::lchs {

using std::numbers::pi;

HermitianSplit split_hermitian(const ComplexMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw DomainError("LCHS matrix must be square");
  HermitianSplit s;
  s.l = 0.5 * (a + a.adjoint());
  s.h = (a - a.adjoint()) / cplx(0.0, 2.0);
  const auto es = eigh(s.l);
  s.shift = std::max(0.0, -es.values(0));
  s.l_shifted = s.l + s.shift * ComplexMatrix::Identity(a.rows(), a.cols());
  s.l_norm = es.values(es.values.size() - 1) + s.shift;
  return s;
}

double truncation_k1(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("truncation error must lie in (0, 1)");
  return std::tan(pi * (1.0 - eps) / 2.0);
}

std::int64_t window_terms(double k2, double eps, double l_norm, double t, double c_m) {
  if (k2 < 0.0) throw DomainError("K2 must be nonnegative");
  if (k2 == 0.0) return 0;
  const double m = c_m * l_norm * t * std::sqrt(k2 * k2 * k2 / eps);
  const double floor_m = k2 / std::sqrt(eps);
  return static_cast<std::int64_t>(std::ceil(std::max({m, floor_m, 1.0})));
}

double trapezoid_weight_sum(double k2, std::int64_t m) {
  if (m == 0 || k2 == 0.0) return 0.0;
  auto f = [](double k) { return 1.0 / (pi * (1.0 + k * k)); };
  const double h = 2.0 * k2 / static_cast<double>(m);
  if (m <= (std::int64_t{1} << 22)) {
    // symmetric grid: sum the nonnegative half
    double acc = 0.0;
    for (std::int64_t j = m; j >= 0; --j) {
      const double k = -k2 + h * static_cast<double>(j);
      if (k < 0.0) break;
      double w = (j == m) ? 0.5 : 1.0;
      if (std::abs(k) < 0.25 * h) w *= 0.5;  // the node at k = 0 counts once across both halves
      acc += w * f(k);
    }
    return 2.0 * h * acc;
  }
  // Euler-Maclaurin: integral + h^2/12 (f'(b) - f'(a)) - h^4/720 (f'''(b) - f'''(a))
  const double b = k2;
  const double u = 1.0 + b * b;
  const double fp = -2.0 * b / (pi * u * u);
  const double fppp = (24.0 * b - 24.0 * b * b * b) / (pi * u * u * u * u);
  return 2.0 / pi * std::atan(k2) + h * h / 12.0 * (2.0 * fp) - std::pow(h, 4) / 720.0 * (2.0 * fppp);
}

Discretization discretize(double k1, double k2, double eps, double l_norm, double t, double c_m, bool build_nodes) {
  if (k2 > k1) throw DomainError("K2 must not exceed K1");
  Discretization d;
  d.k1 = k1;
  d.k2 = k2;
  d.eps = eps;
  d.t = t;
  d.l_norm = l_norm;
  d.m = window_terms(k2, eps, l_norm, t, c_m);
  d.alpha = std::atan(k1) - std::atan(k2);
  if (build_nodes && d.m > 0) {
    d.nodes.resize(d.m + 1);
    d.weights.resize(d.m + 1);
    for (std::int64_t j = 0; j <= d.m; ++j) {
      const double k = -k2 + 2.0 * k2 * static_cast<double>(j) / static_cast<double>(d.m);
      d.nodes[j] = k;
      d.weights[j] = (j == 0 || j == d.m ? 1.0 : 2.0) * k2 / static_cast<double>(d.m) / (pi * (1.0 + k * k));
    }
    double s = 0.0;
    for (double w : d.weights) s += w;
    d.s_norm1 = s;
  } else {
    d.s_norm1 = trapezoid_weight_sum(k2, d.m);
  }
  return d;
}

double rp_bound(double k1, double k2, double s_norm1) {
  const double a = 2.0 / pi * (std::atan(k1) - std::atan(k2));
  const double denom = (s_norm1 + a) * (s_norm1 + a);
  if (denom == 0.0) throw DomainError("empty decomposition");
  return a * (5.0 * s_norm1 + a) / denom;
}

double rp_bound_approx(double k1, double k2) {
  const double r = std::atan(k2) / std::atan(k1);
  return (1.0 - r) * (1.0 + 4.0 * r);
}

double rp_bound_tight(double k1, double k2, double s_norm1) { return std::min(rp_bound(k1, k2, s_norm1), 1.0); }

HybridLchs::HybridLchs(const HermitianSplit& split, Discretization window)
    : split_(split), window_(std::move(window)) {
  const double tail = 2.0 / pi * window_.alpha;
  one_norm_ = window_.s_norm1 + tail;
  if (one_norm_ <= 0.0) throw DegenerateDecompositionError("LCHS decomposition has zero weight");
  q_window_ = window_.s_norm1 / one_norm_;
  q_tail_ = tail / one_norm_;
}

double HybridLchs::sample_tail_node(CounterRng& rng) const {
  const double lo = std::atan(window_.k2), hi = std::atan(window_.k1);
  const double u = rng.next_double();
  const double sign = rng.next_double() < 0.5 ? -1.0 : 1.0;
  return sign * std::tan(lo + u * (hi - lo));
}

ComplexMatrix HybridLchs::term_unitary(double k) const {
  return expm_i_hermitian(ComplexMatrix(split_.h + k * split_.l_shifted), window_.t);
}

ComplexMatrix HybridLchs::window_operator() const {
  if (window_.m > 0 && window_.nodes.empty()) throw DomainError("window nodes were not built");
  return kernels::parallel::weighted_exponential_sum(split_.h, split_.l_shifted, window_.t, window_.nodes,
                                                     window_.weights);
}

HybridLchs build_hybrid_lcu(const HermitianSplit& split, double t, double eps, double k2, double c_m) {
  const double k1 = truncation_k1(eps);
  if (k2 > k1) throw DomainError("K2 must not exceed K1");
  return HybridLchs(split, discretize(k1, k2, eps, split.l_norm, t, c_m, true));
}

ExplicitLchs explicit_decomposition(const HybridLchs& lchs, int n_tail) {
  const auto& w = lchs.window();
  std::vector<UnitaryTerm> terms;
  std::vector<int> window_group;
  for (std::size_t j = 0; j < w.nodes.size(); ++j) {
    window_group.push_back(static_cast<int>(terms.size()));
    terms.emplace_back(w.weights[j], lchs.term_unitary(w.nodes[j]));
  }
  const double lo = std::atan(w.k2), hi = std::atan(w.k1);
  if (hi > lo && n_tail > 0) {
    const double dth = (hi - lo) / n_tail;
    for (int side = 0; side < 2; ++side)
      for (int i = 0; i < n_tail; ++i) {
        const double k = (side ? -1.0 : 1.0) * std::tan(lo + (i + 0.5) * dth);
        terms.emplace_back(dth / pi, lchs.term_unitary(k));
      }
  }
  const int m = static_cast<int>(terms.size());
  std::vector<std::vector<int>> groups;
  if (!window_group.empty()) groups.push_back(window_group);
  for (int i = static_cast<int>(window_group.size()); i < m; ++i) groups.push_back({i});
  auto dec = LcuDecomposition::normalize(std::move(terms));
  return {std::move(dec), Partition::validate(std::move(groups), m)};
}

ComplexMatrix tail_integral(const HermitianSplit& split, double t, double k1, double k2) {
  const int d = static_cast<int>(split.h.rows());
  ComplexMatrix acc = ComplexMatrix::Zero(d, d);
  if (k1 <= k2) return acc;
  // resolve both the phase oscillation (rate T ||L||) and the Cauchy decay
  const double rate = t * split.l_norm + 1.0;
  const auto rule = gauss_legendre(10);
  double a = k2;
  std::vector<double> nodes, weights;
  while (a < k1) {
    const double width = std::min(1.0 / rate, k1 - a);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double k = a + 0.5 * width * (rule.nodes[i] + 1.0);
      const double w = 0.5 * width * rule.weights[i] / (pi * (1.0 + k * k));
      nodes.push_back(k);
      weights.push_back(w);
      nodes.push_back(-k);
      weights.push_back(w);
    }
    a += width;
  }
  return kernels::parallel::weighted_exponential_sum(split.h, split.l_shifted, t, nodes, weights);
}

double propagator_error(const ComplexMatrix& a, double t, double eps, double k2, double c_m) {
  const auto split = split_hermitian(a);
  const double k1 = truncation_k1(eps);
  const auto lchs = build_hybrid_lcu(split, t, eps, k2, c_m);
  ComplexMatrix approx = lchs.window_operator() + tail_integral(split, t, k1, k2);
  approx *= std::exp(split.shift * t);
  const ComplexMatrix exact = (ComplexMatrix(-t * a)).exp();
  return spectral_norm(ComplexMatrix(approx - exact));
}

double figure_m_constant(double l_norm, double t, double eps, double coherent_terms) {
  const double k1 = truncation_k1(eps);
  return coherent_terms / (l_norm * t * std::sqrt(k1 * k1 * k1 / eps));
}

double k2_for_terms(double m, double l_norm, double t, double eps, double c_m) {
  const double r = m / (c_m * l_norm * t);
  return std::cbrt(r * r * eps);
}

std::vector<double> default_k2_grid(double k1, int points) {
  std::vector<double> g{0.0};
  const double lo = std::log(1e-2), hi = std::log(k1);
  for (int i = 0; i < points; ++i) g.push_back(std::exp(lo + (hi - lo) * i / (points - 1)));
  g.back() = k1;
  return g;
}

std::vector<SweepRow> fig_sweep(double l_norm, double t, double eps, double c_m, double p_assumed,
                                const std::vector<double>& k2_grid) {
  const double k1 = truncation_k1(eps);
  std::vector<SweepRow> rows(k2_grid.size());
  const auto n = static_cast<std::int64_t>(k2_grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    const double k2 = std::min(k2_grid[i], k1);
    const auto d = discretize(k1, k2, eps, l_norm, t, c_m, false);
    const double b = rp_bound_tight(k1, k2, d.s_norm1);
    rows[i] = {k2, d.m, d.alpha, d.s_norm1, b, (p_assumed + b) / (p_assumed * p_assumed)};
  }
  return rows;
}

}  // namespace hlcu::lchs
