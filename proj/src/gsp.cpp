#include "hlcu/gsp.hpp"

#include <cmath>

#include "hlcu/quadrature.hpp"

namespace hlcu::gsp {

Instance make_instance(const ComplexMatrix& h, const ComplexVector& psi) {
  if (h.rows() < 2) throw DomainError("ground-state instance needs dimension at least 2");
  if (psi.size() != h.rows()) throw DomainError("initial state dimension mismatch");
  Instance inst;
  inst.h = h;
  inst.system = eigh(h);
  inst.ground_energy = inst.system.values(0);
  inst.gap = inst.system.values(1) - inst.system.values(0);
  inst.ground = inst.system.vectors.col(0);
  inst.psi = psi.normalized();
  inst.overlap = std::norm(inst.ground.dot(inst.psi));
  return inst;
}

Instance random_instance(int dim, double gap, double p0, std::mt19937_64& rng) {
  if (!(gap > 0.0 && gap < 1.0)) throw DomainError("gap must lie in (0, 1)");
  if (!(p0 > 0.0 && p0 <= 1.0)) throw DomainError("overlap must lie in (0, 1]");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealVector ev(dim);
  ev(0) = 0.1 * (1.0 - gap) * u(rng);
  ev(1) = ev(0) + gap;
  for (int i = 2; i < dim; ++i) ev(i) = ev(1) + (1.0 - ev(1)) * u(rng);
  const ComplexMatrix v = random_unitary(dim, rng);
  ComplexMatrix h = v * ev.cast<cplx>().asDiagonal() * v.adjoint();
  h = 0.5 * (h + h.adjoint());
  // excited part: random state orthogonal to the ground state
  ComplexVector rest = random_pure_state(dim, rng).vector();
  rest -= v.col(0) * v.col(0).dot(rest);
  rest.normalize();
  const ComplexVector psi = std::sqrt(p0) * v.col(0) + std::sqrt(1.0 - p0) * rest;
  return make_instance(h, psi);
}

ComplexMatrix cosine_filter(const Eigensystem& h, double energy, double tau, int t) {
  if (t < 0) throw DomainError("filter degree must be nonnegative");
  const double shift = energy - tau;
  return spectral_function(h, [&](double l) { return std::pow(std::cos(l - shift), t); });
}

ComplexMatrix gaussian_filter(const Eigensystem& h, double energy, double tau, double sigma2) {
  if (sigma2 < 0.0) throw DomainError("gaussian width must be nonnegative");
  const double shift = energy - tau;
  return spectral_function(h, [&](double l) {
    const double x = l - shift;
    return std::exp(-sigma2 * x * x / 2.0);
  });
}

namespace {
void check_gap(double gap) {
  if (!(gap > 0.0)) throw DomainError("spectral gap must be positive");
}
}  // namespace

CosineParams cosine_params(double gap, double p0, double eps, const FilterConstants& c) {
  check_gap(gap);
  if (!(p0 > 0.0 && p0 <= 1.0) || !(eps > 0.0 && eps < 1.0)) throw DomainError("need p0 in (0,1] and eps in (0,1)");
  const double lg = std::log(1.0 / (p0 * eps));
  CosineParams p;
  p.t = static_cast<int>(std::ceil(c.c_t * lg * lg / (gap * gap)));
  p.tau = c.c_tau * gap / lg;
  return p;
}

CosineParams stage1_params(double gap, double p0, const FilterConstants& c) {
  check_gap(gap);
  if (!(p0 > 0.0 && p0 < 1.0)) throw DomainError("stage-1 parameters need p0 in (0, 1)");
  const double lg = std::log(1.0 / p0);
  CosineParams p;
  p.t = std::max(1, static_cast<int>(std::ceil(c.c_t * lg * lg / (gap * gap))));
  p.tau = c.c_tau * gap / lg;
  return p;
}

GaussianParams gaussian_params(double gap, double p0, double eps, const FilterConstants& c) {
  check_gap(gap);
  if (!(eps < p0)) throw DomainError("gaussian stage needs eps < p0");
  const double lg = std::log(p0 / eps);
  return {c.c_sigma * lg / (gap * gap), c.c_tau_gauss * gap / std::sqrt(lg)};
}

FilterQuality filter_quality(const ComplexVector& ground, const ComplexVector& psi, const ComplexMatrix& filter) {
  const ComplexVector phi = filter * psi;
  FilterQuality q;
  q.survival = phi.norm();
  if (q.survival == 0.0) {
    q.distance = std::sqrt(2.0);
    return q;
  }
  const double f = std::min(1.0, std::abs(ground.dot(phi)) / q.survival);
  q.distance = std::sqrt(std::max(0.0, 2.0 - 2.0 * f));
  return q;
}

FilterQuality filter_quality(const Instance& inst, const ComplexMatrix& filter) {
  return filter_quality(inst.ground, inst.psi, filter);
}

TimeTerms total_time(double gap, double p0, double eps) {
  const double pre = 1.0 / (p0 * eps * eps);
  const double l1 = std::log(1.0 / p0);
  return {pre * l1 * l1 / (gap * gap), pre / gap * std::sqrt(std::log(1.0 / eps) * std::log(p0 / eps))};
}

TimeTerms total_time_alpha(double gap, double p0, double alpha) {
  if (!(alpha >= 1.0)) throw DomainError("alpha must be at least 1");
  const double eps = std::pow(p0, alpha);
  const double le = std::log(1.0 / eps);
  const double pre = le / (p0 * gap * eps * eps);
  return {pre * le / (gap * alpha * alpha), pre * std::sqrt(1.0 - 1.0 / alpha)};
}

double asymptotic_time(double gap, double p0, double alpha) {
  const double eps = std::pow(p0, alpha);
  return std::log(1.0 / eps) / (p0 * gap * eps * eps);
}

namespace {
// Rounds of the cosine stage: cos(H) = (e^{iH} + e^{-iH}) / 2 as one coherent group.
std::vector<GroupOperator> cosine_round(const Eigensystem& h, double shift) {
  std::vector<UnitaryTerm> terms;
  terms.emplace_back(0.5, spectral_function(h, [&](double l) { return std::exp(cplx(0.0, l - shift)); }));
  terms.emplace_back(0.5, spectral_function(h, [&](double l) { return std::exp(cplx(0.0, -(l - shift))); }));
  const auto dec = LcuDecomposition::normalize(std::move(terms));
  return group_operators(dec, Partition::coarsest(2));
}

// exp(-sigma^2 x^2 / 2) = E_{t ~ N(0, sigma^2)} e^{-ixt}; each node is a sampled unitary.
std::vector<GroupOperator> gaussian_round(const Eigensystem& h, double shift, double sigma2, int nodes) {
  const auto rule = gauss_hermite_normal(nodes);
  std::vector<UnitaryTerm> terms;
  const double sigma = std::sqrt(sigma2);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = sigma * rule.nodes[i];
    terms.emplace_back(rule.weights[i], spectral_function(h, [&](double l) { return std::exp(cplx(0.0, -(l - shift) * t)); }));
  }
  const auto dec = LcuDecomposition::normalize(std::move(terms));
  return group_operators(dec, Partition::singletons(dec.size()));
}
}  // namespace

GspReport hybrid_gsp(const Instance& inst, const GspConfig& cfg) {
  GspReport rep;
  rep.overlap = inst.overlap;
  rep.overlap_ok = inst.overlap >= cfg.p0 - 1e-12;
  const auto s1 = stage1_params(inst.gap, cfg.p0, cfg.constants);
  const auto gp = gaussian_params(inst.gap, cfg.p0, cfg.eps, cfg.constants);
  rep.t_prime = s1.t;
  rep.tau = s1.tau;
  rep.sigma2 = gp.sigma2;
  rep.tau_gauss = gp.tau;

  const double e1 = inst.ground_energy + cfg.energy_error;
  const double e2 = inst.ground_energy + cfg.energy_error2;
  const ComplexMatrix cf = cosine_filter(inst.system, e1, s1.tau, s1.t);
  const auto q1 = filter_quality(inst, cf);
  rep.stage1_distance = q1.distance;
  rep.stage1_survival = q1.survival;
  const ComplexMatrix gf = gaussian_filter(inst.system, e2, gp.tau, gp.sigma2);
  const auto q2 = filter_quality(inst, ComplexMatrix(gf * cf));
  rep.final_distance = q2.distance;
  rep.final_survival = q2.survival;

  const ComplexMatrix c2 = cosine_filter(inst.system, e1, s1.tau, 2 * s1.t);
  rep.r_direct = inst.psi.dot(c2 * inst.psi).real();

  std::vector<std::vector<GroupOperator>> rounds(s1.t, cosine_round(inst.system, e1 - s1.tau));
  rounds.push_back(gaussian_round(inst.system, e2 - gp.tau, gp.sigma2, cfg.gauss_nodes));
  const auto rho = MixedState::from_pure(PureState::normalized_from(inst.psi));
  rep.r = compose_rounds(rounds, rho).reduction_factor;
  rep.time = total_time(inst.gap, cfg.p0, cfg.eps);
  return rep;
}

}  // namespace hlcu::gsp
