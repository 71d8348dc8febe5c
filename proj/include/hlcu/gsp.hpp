#pragma once

#include <random>

#include "hlcu/hybrid.hpp"

namespace hlcu::gsp {

struct Instance {
  ComplexMatrix h;  // spectrum in [0, 1]
  Eigensystem system;
  double ground_energy = 0.0;
  double gap = 0.0;
  ComplexVector ground;
  ComplexVector psi;  // initial state
  double overlap = 0.0;  // |<ground|psi>|^2
};

Instance make_instance(const ComplexMatrix& h, const ComplexVector& psi);
// Random H with the given gap; psi has squared ground overlap exactly p0.
Instance random_instance(int dim, double gap, double p0, std::mt19937_64& rng);

// cos^T(H~ - (E - tau)).
ComplexMatrix cosine_filter(const Eigensystem& h, double energy, double tau, int t);
// exp(-sigma^2 (H~ - (E - tau))^2 / 2).
ComplexMatrix gaussian_filter(const Eigensystem& h, double energy, double tau, double sigma2);

struct FilterConstants {
  double c_t = 1.0;
  double c_tau = 1.0;
  double c_sigma = 1.0;
  double c_tau_gauss = 1.0;
};

struct CosineParams {
  int t = 0;
  double tau = 0.0;
};
// T = ceil(c_t gap^-2 log^2(1/(p0 eps))), tau = c_tau gap / log(1/(p0 eps)).
CosineParams cosine_params(double gap, double p0, double eps, const FilterConstants& c = {});
// First stage only targets distance O(p0): log(1/(p0 eps)) becomes log(1/p0).
CosineParams stage1_params(double gap, double p0, const FilterConstants& c = {});

struct GaussianParams {
  double sigma2 = 0.0;
  double tau = 0.0;
};
// sigma^2 = c_sigma gap^-2 log(p0/eps), tau = c_tau_gauss gap / sqrt(log(p0/eps)).
GaussianParams gaussian_params(double gap, double p0, double eps, const FilterConstants& c = {});

struct FilterQuality {
  double distance = 0.0;  // min over global phase of || filtered/|filtered| - ground ||
  double survival = 0.0;  // || filter psi ||
};
FilterQuality filter_quality(const Instance& inst, const ComplexMatrix& filter);
FilterQuality filter_quality(const ComplexVector& ground, const ComplexVector& psi, const ComplexMatrix& filter);

struct TimeTerms {
  double term1 = 0.0;  // cosine stage: p0^-1 eps^-2 gap^-2 log^2(1/p0)
  double term2 = 0.0;  // gaussian stage: p0^-1 eps^-2 gap^-1 sqrt(log(1/eps) log(p0/eps))
};
TimeTerms total_time(double gap, double p0, double eps);
// Same two terms written with eps = p0^alpha.
TimeTerms total_time_alpha(double gap, double p0, double alpha);
double asymptotic_time(double gap, double p0, double alpha);  // alpha -> infinity form

struct GspConfig {
  double p0 = 0.5;
  double eps = 1e-3;
  double energy_error = 0.0;   // E - lambda0 used by the cosine stage
  double energy_error2 = 0.0;  // E' - lambda0 used by the gaussian stage
  int gauss_nodes = 16;        // quadrature nodes of the gaussian stage's unitary mixture
  FilterConstants constants;
};

struct GspReport {
  int t_prime = 0;
  double tau = 0.0;
  double sigma2 = 0.0;
  double tau_gauss = 0.0;
  double r = 0.0;         // composed reduction factor
  double r_direct = 0.0;  // <psi| cos^{2T'}(H) |psi>
  double stage1_distance = 0.0, stage1_survival = 0.0;
  double final_distance = 0.0, final_survival = 0.0;
  double overlap = 0.0;
  bool overlap_ok = true;
  TimeTerms time;
};

GspReport hybrid_gsp(const Instance& inst, const GspConfig& cfg);

}  // namespace hlcu::gsp
