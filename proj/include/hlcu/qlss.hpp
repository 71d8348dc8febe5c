#pragma once

#include <cstdint>
#include <vector>

#include "hlcu/kernels.hpp"
#include "hlcu/qcore.hpp"

namespace hlcu::qlss {

// Multipliers on the asymptotic grid sizes; the defaults are the calibrated set.
struct GridConstants {
  double c_j = 1.0;
  double c_k = 2.0;
  double c_y = 2.0;
  double c_z = 1.0;
};

struct Grid {
  double kappa = 0.0, epsilon = 0.0;
  std::int64_t j = 0, k = 0;  // y_j = j dy for j < J; z_k = k dz for |k| <= K
  double dy = 0.0, dz = 0.0;
  double beta = 0.0;  // sum_k dz |z_k| exp(-z_k^2 / 2)
};

Grid build_grid(double kappa, double epsilon, const GridConstants& c = {});
Grid make_grid(std::int64_t j, std::int64_t k, double dy, double dz);
double one_norm(const Grid& g);
int ancilla_hybrid(const Grid& g);
int ancilla_coherent(const Grid& g);

// The j-th group operator is a real odd function of M:
// K_j(lambda) = (2/beta) sum_{k>=1} dz z_k exp(-z_k^2/2) sin(lambda y_j z_k).
struct HybridQlss {
  Grid grid;
  Eigensystem system;
  kernels::SineTable values;  // J x dim, K_j evaluated on each eigenvalue
  double q = 0.0;             // uniform group weight 1/J
};

HybridQlss hybrid_partition(const Grid& g, const ComplexMatrix& m);
ComplexMatrix group_operator(const HybridQlss& h, std::int64_t j);

struct ReductionFactors {
  double p = 0.0;       // all groups coherent
  double r_int = 0.0;   // J groups over the outer index
  double r_int_closed_form = 0.0;
  double r_rand = 0.0;  // every term sampled
};

ReductionFactors reduction_factors(const HybridQlss& h, const ComplexVector& b);
// ||sum b - M^{-1} b|| / ||M^{-1} b|| for the unnormalized double sum.
double inverse_error(const HybridQlss& h, const ComplexVector& b);

// Hermitian M with |eigenvalues| spanning [1/kappa, 1] (both ends included).
ComplexMatrix random_conditioned_hermitian(int dim, double kappa, std::mt19937_64& rng);

// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hlcu::qlss
