#include "hlcu/estimate.hpp"

#include <algorithm>
#include <cmath>

namespace hlcu {

const char* method_name(Method m) { return m == Method::bernstein ? "bernstein" : "asymptotic"; }

namespace {
void check_eps_delta(double epsilon, double delta) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
}

std::uint64_t ceil_count(double x) {
  const double c = std::ceil(x);
  return static_cast<std::uint64_t>(std::max(1.0, c));
}
}  // namespace

std::uint64_t bernstein_n(double sigma2, double c, double epsilon, double delta) {
  check_eps_delta(epsilon, delta);
  if (sigma2 < 0.0 || c < 0.0) throw DomainError("variance and range bounds must be nonnegative");
  return ceil_count(2.0 * std::log(2.0 / delta) * (sigma2 / (epsilon * epsilon) + 2.0 * c / (3.0 * epsilon)));
}

double bernstein_half_width(double sigma2, double c, std::uint64_t n, double delta) {
  check_eps_delta(1.0, delta);
  if (n == 0) throw DomainError("no samples");
  // n eps^2 = 2L sigma2 + (4 L c / 3) eps with L = ln(2/delta)
  const double l = std::log(2.0 / delta);
  const double b = 4.0 * l * c / 3.0;
  const double nn = static_cast<double>(n);
  return (b + std::sqrt(b * b + 8.0 * nn * l * sigma2)) / (2.0 * nn);
}

std::uint64_t ratio_n(double sigma2_x, double sigma2_y, double mu_y, double c, double cprime, double epsilon,
                      double delta) {
  check_eps_delta(epsilon, delta);
  if (mu_y == 0.0) throw UndefinedRatioError("ratio planner needs a nonzero denominator mean");
  if (epsilon > 2.0 * cprime) throw DomainError("ratio planner requires epsilon <= 2 c'");
  const double my = std::abs(mu_y);
  const double lin = c / (6.0 * my * epsilon);
  const double a = sigma2_x / (my * my * epsilon * epsilon) + lin;
  const double b = sigma2_y / (my * my * epsilon * epsilon) * cprime * cprime + lin * cprime;
  return ceil_count(32.0 * std::log(4.0 / delta) * std::max(a, b));
}

ShotPlan plan_numerator(const EstimationConfig& cfg, double one_norm, double obs_norm) {
  ShotPlan plan;
  plan.worst_case_r = !cfg.r_obs_bound && !cfg.r_bound;
  double r_obs;
  if (cfg.r_obs_bound)
    r_obs = *cfg.r_obs_bound;
  else
    r_obs = cfg.r_bound.value_or(1.0) * obs_norm * obs_norm;
  const double n2 = one_norm * one_norm;
  plan.n = bernstein_n(n2 * n2 * r_obs, n2 * cfg.bound_c, cfg.epsilon, cfg.delta);
  return plan;
}

ShotPlan plan_ratio(const EstimationConfig& cfg, double mu_y, double obs_norm) {
  ShotPlan plan;
  plan.worst_case_r = !cfg.r_bound;
  const double r = cfg.r_bound.value_or(1.0);
  const double r_obs = cfg.r_obs_bound.value_or(r * obs_norm * obs_norm);
  plan.default_cprime = !cfg.ratio_bound_cprime;
  plan.cprime = cfg.ratio_bound_cprime.value_or(obs_norm);
  const double c = std::max(cfg.bound_c, 1.0);
  plan.n = ratio_n(r_obs, r, mu_y, c, plan.cprime, cfg.epsilon, cfg.delta);
  return plan;
}

double normal_upper_quantile(double tail) {
  if (!(tail > 0.0 && tail < 1.0)) throw DomainError("normal quantile tail must lie in (0, 1)");
  auto upper = [](double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); };
  double lo = -40.0, hi = 40.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (upper(mid) > tail)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double sample_mean(std::span<const double> x) {
  if (x.empty()) throw DomainError("empty sample");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
  const double m = sample_mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size());
}

double estimate_r_obs(std::span<const double> g) {
  const double m = sample_mean(g);
  return sample_variance(g) + m * m;
}

EstimationReport estimate_numerator(const SampleBatch& batch, double one_norm, const EstimationConfig& cfg,
                                    Method method) {
  check_eps_delta(cfg.epsilon, cfg.delta);
  EstimationReport rep;
  rep.target = "numerator";
  rep.method = method;
  rep.epsilon = cfg.epsilon;
  rep.delta = cfg.delta;
  rep.seed = batch.seed;
  rep.n = batch.g_o.size();
  const double n2 = one_norm * one_norm;
  rep.point = n2 * sample_mean(batch.g_o);
  rep.sigma2_o = sample_variance(batch.g_o);
  rep.r_hat = estimate_r_obs(batch.g_o);
  if (!batch.g_one.empty()) rep.sigma2_one = sample_variance(batch.g_one);
  if (method == Method::bernstein) {
    double r_obs;
    if (cfg.r_obs_bound) {
      r_obs = *cfg.r_obs_bound;
    } else if (cfg.r_bound) {
      r_obs = *cfg.r_bound * cfg.bound_c * cfg.bound_c;
    } else {
      rep.worst_case_r = true;
      r_obs = cfg.bound_c * cfg.bound_c;
    }
    rep.half_width = bernstein_half_width(n2 * n2 * r_obs, n2 * cfg.bound_c, rep.n, cfg.delta);
  } else {
    rep.half_width = normal_upper_quantile(cfg.delta / 2.0) * n2 * std::sqrt(rep.sigma2_o / static_cast<double>(rep.n));
  }
  return rep;
}

EstimationReport estimate_ratio(const SampleBatch& batch, const EstimationConfig& cfg) {
  check_eps_delta(cfg.epsilon, cfg.delta);
  if (batch.g_o.size() != batch.g_one.size()) throw DomainError("ratio estimate needs equally sized batches");
  EstimationReport rep;
  rep.target = "ratio";
  rep.method = Method::asymptotic;
  rep.epsilon = cfg.epsilon;
  rep.delta = cfg.delta;
  rep.seed = batch.seed;
  rep.n = batch.g_o.size();
  const double xbar = sample_mean(batch.g_o);
  const double ybar = sample_mean(batch.g_one);
  if (ybar == 0.0) throw UndefinedRatioError("denominator sample mean is zero");
  rep.point = xbar / ybar;
  rep.sigma2_o = sample_variance(batch.g_o);
  rep.sigma2_one = sample_variance(batch.g_one);
  rep.r_hat = rep.sigma2_o + xbar * xbar;
  const double var = rep.sigma2_o / (ybar * ybar) + xbar * xbar * rep.sigma2_one / std::pow(ybar, 4);
  rep.half_width = normal_upper_quantile(cfg.delta / 2.0) * std::sqrt(var / static_cast<double>(rep.n));
  rep.default_cprime = !cfg.ratio_bound_cprime;
  return rep;
}

}  // namespace hlcu
