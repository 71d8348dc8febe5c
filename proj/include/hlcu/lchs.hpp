#pragma once

#include <cstdint>
#include <vector>

#include "hlcu/partition.hpp"
#include "hlcu/rng.hpp"

namespace hlcu::lchs {

// A = L + iH with L = (A + A^dagger)/2, H = (A - A^dagger)/2i. When L is not
// PSD it is shifted by the smallest c >= 0 making L + c PSD.
struct HermitianSplit {
  ComplexMatrix l;
  ComplexMatrix h;
  double shift = 0.0;
  ComplexMatrix l_shifted;
  double l_norm = 0.0;  // spectral norm of l_shifted
};

HermitianSplit split_hermitian(const ComplexMatrix& a);

// Cauchy-kernel truncation point with tail mass eps: tan(pi (1 - eps) / 2).
double truncation_k1(double eps);

// ceil(c_m ||L|| T sqrt(K2^3 / eps)), floored so the grid also resolves the
// Cauchy density itself when ||L|| T is tiny. Zero for an empty window.
std::int64_t window_terms(double k2, double eps, double l_norm, double t, double c_m);

// Trapezoid weights s_j of the Cauchy density on [-K2, K2] with M steps.
struct Discretization {
  double k1 = 0.0, k2 = 0.0, eps = 0.0, t = 0.0, l_norm = 0.0;
  std::int64_t m = 0;
  double s_norm1 = 0.0;
  double alpha = 0.0;  // arctan K1 - arctan K2
  std::vector<double> nodes, weights;  // filled only when requested
};

Discretization discretize(double k1, double k2, double eps, double l_norm, double t, double c_m,
                          bool build_nodes = true);
// Sum of trapezoid weights; exact summation for moderate M, Euler-Maclaurin beyond.
double trapezoid_weight_sum(double k2, std::int64_t m);

// Upper bound on R - P for the partition {window} + tail singletons.
double rp_bound(double k1, double k2, double s_norm1);
double rp_bound_approx(double k1, double k2);
// The same bound additionally capped by q_A + q_B (the coarse bound R <= 1).
double rp_bound_tight(double k1, double k2, double s_norm1);

class HybridLchs {
 public:
  HybridLchs(const HermitianSplit& split, Discretization window);

  const Discretization& window() const { return window_; }
  double one_norm() const { return one_norm_; }
  double q_window() const { return q_window_; }
  double q_tail() const { return q_tail_; }
  // Tail node drawn from the truncated Cauchy density on K2 <= |k| <= K1.
  double sample_tail_node(CounterRng& rng) const;
  ComplexMatrix term_unitary(double k) const;
  // sum_j s_j exp(-iT(H + k_j L)); not normalized.
  ComplexMatrix window_operator() const;

 private:
  HermitianSplit split_;
  Discretization window_;
  double one_norm_ = 0.0, q_window_ = 0.0, q_tail_ = 0.0;
};

HybridLchs build_hybrid_lcu(const HermitianSplit& split, double t, double eps, double k2, double c_m);

// Finite LCU with the tail replaced by n_tail midpoint nodes (in arctan k) per
// side; the partition groups the window and leaves tail terms as singletons.
struct ExplicitLchs {
  LcuDecomposition dec;
  Partition partition;
};
ExplicitLchs explicit_decomposition(const HybridLchs& lchs, int n_tail);

// ||e^{cT} (window sum + integrated tail) - exp(-A T)||_2
double propagator_error(const ComplexMatrix& a, double t, double eps, double k2, double c_m);
// Tail integral over K2 <= |k| <= K1 by composite Gauss-Legendre.
ComplexMatrix tail_integral(const HermitianSplit& split, double t, double k1, double k2);

struct SweepRow {
  double k2;
  std::int64_t m;
  double alpha, s_norm1, rp_bound, overhead_bound;
};

// Term-count constant that makes the fully coherent window use `coherent_terms` terms.
double figure_m_constant(double l_norm, double t, double eps, double coherent_terms);
double k2_for_terms(double m, double l_norm, double t, double eps, double c_m);
std::vector<SweepRow> fig_sweep(double l_norm, double t, double eps, double c_m, double p_assumed,
                                const std::vector<double>& k2_grid);
std::vector<double> default_k2_grid(double k1, int points);

}  // namespace hlcu::lchs
