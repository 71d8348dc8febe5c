#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hlcu/errors.hpp"

namespace hlcu {

struct EstimationConfig {
  double epsilon = 0.1;
  double delta = 0.05;
  double bound_c = 1.0;  // |g_O| <= bound_c, normally ||O||
  std::optional<double> ratio_bound_cprime;  // |mu_X / mu_Y| <= c'; defaults to ||O||
  std::optional<double> r_obs_bound;         // bound on E[g_O^2]
  std::optional<double> r_bound;             // bound on E[g_1^2] = R
};

// g_o and g_one come from independent shot streams of equal length.
struct SampleBatch {
  std::vector<double> g_o;
  std::vector<double> g_one;
  std::uint64_t seed = 0;
};

enum class Method { bernstein, asymptotic };
const char* method_name(Method m);

struct EstimationReport {
  std::string target;  // "numerator" or "ratio"
  Method method = Method::asymptotic;
  double point = 0.0;
  double half_width = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::uint64_t n = 0;
  double sigma2_o = 0.0;
  double sigma2_one = 0.0;
  double r_hat = 0.0;  // estimate of E[g_O^2]
  std::uint64_t seed = 0;
  bool worst_case_r = false;
  bool default_cprime = false;
};

struct ShotPlan {
  std::uint64_t n = 0;
  bool worst_case_r = false;  // no R bound supplied; R = 1 used
  bool default_cprime = false;
  double cprime = 0.0;
};

// N = ceil(2 ln(2/delta) (sigma2/eps^2 + 2c/(3 eps)))
std::uint64_t bernstein_n(double sigma2, double c, double epsilon, double delta);
// Half-width that the Bernstein inequality certifies for n samples.
double bernstein_half_width(double sigma2, double c, std::uint64_t n, double delta);
// Two-sided shot bound for a ratio of means; requires eps <= 2 c'.
std::uint64_t ratio_n(double sigma2_x, double sigma2_y, double mu_y, double c, double cprime, double epsilon,
                      double delta);

ShotPlan plan_numerator(const EstimationConfig& cfg, double one_norm, double obs_norm);
ShotPlan plan_ratio(const EstimationConfig& cfg, double mu_y, double obs_norm);

// z with P(Z > z) = tail for standard normal Z, by bisection to 1e-10.
double normal_upper_quantile(double tail);

double sample_mean(std::span<const double> x);
double sample_variance(std::span<const double> x);  // divides by N
double estimate_r_obs(std::span<const double> g);  // sigma^2 + mean^2

// point = one_norm^2 * mean(g_O)
EstimationReport estimate_numerator(const SampleBatch& batch, double one_norm, const EstimationConfig& cfg,
                                    Method method);
EstimationReport estimate_ratio(const SampleBatch& batch, const EstimationConfig& cfg);

}  // namespace hlcu
