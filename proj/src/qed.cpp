#include "hlcu/qed.hpp"

#include <bit>
#include <cmath>

#include "hlcu/rng.hpp"

namespace hlcu::qed {

namespace {
std::uint32_t mask_of(std::initializer_list<int> qubits) {
  std::uint32_t m = 0;
  for (int q : qubits) {
    if (q < 1 || q > kQubits) throw DomainError("qubit index out of range");
    m |= 1u << (kQubits - q);
  }
  return m;
}
}  // namespace

PauliString PauliString::x_on(std::initializer_list<int> qubits) { return {mask_of(qubits), 0}; }
PauliString PauliString::z_on(std::initializer_list<int> qubits) { return {0, mask_of(qubits)}; }

PauliString PauliString::operator*(const PauliString& o) const {
  if ((x_mask && o.z_mask) || (z_mask && o.x_mask)) throw DomainError("mixed-type Pauli products are not supported");
  return {x_mask ^ o.x_mask, z_mask ^ o.z_mask};
}

ComplexMatrix PauliString::matrix() const {
  ComplexMatrix m = ComplexMatrix::Zero(kDim, kDim);
  for (std::uint32_t s = 0; s < kDim; ++s) {
    const double sign = (std::popcount(z_mask & s) & 1) ? -1.0 : 1.0;
    m(s ^ x_mask, s) = sign;
  }
  return m;
}

std::vector<PauliString> steane_x_generators() {
  return {PauliString::x_on({1, 2, 3, 4}), PauliString::x_on({1, 2, 5, 6}), PauliString::x_on({1, 3, 5, 7})};
}

std::vector<PauliString> steane_z_generators() {
  return {PauliString::z_on({1, 2, 3, 4}), PauliString::z_on({1, 2, 5, 6}), PauliString::z_on({1, 3, 5, 7})};
}

std::vector<PauliString> stabilizer_group(const std::vector<PauliString>& generators) {
  std::vector<PauliString> out;
  const std::size_t n = generators.size();
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    PauliString p;
    for (std::size_t i = 0; i < n; ++i)
      if (bits >> i & 1) p = p * generators[i];
    out.push_back(p);
  }
  return out;
}

ComplexMatrix group_projector(const std::vector<PauliString>& generators) {
  const auto group = stabilizer_group(generators);
  ComplexMatrix p = ComplexMatrix::Zero(kDim, kDim);
  for (const auto& s : group) p += s.matrix();
  return p / static_cast<double>(group.size());
}

SteaneProjectors steane_projectors() {
  SteaneProjectors p;
  p.p_x = group_projector(steane_x_generators());
  p.p_z = group_projector(steane_z_generators());
  p.p_code = p.p_z * p.p_x;
  return p;
}

ComplexVector random_codeword(std::mt19937_64& rng) {
  static const SteaneProjectors proj = steane_projectors();
  ComplexVector zero = ComplexVector::Zero(kDim);
  zero(0) = 1.0;
  const ComplexVector l0 = (proj.p_code * zero).normalized();
  const ComplexVector l1 = PauliString{(1u << kQubits) - 1, 0}.matrix() * l0;
  std::normal_distribution<double> n(0.0, 1.0);
  const double a = n(rng), b = n(rng), c = n(rng), d = n(rng);
  const cplx alpha(a, b), beta(c, d);
  const double nrm = std::sqrt(std::norm(alpha) + std::norm(beta));
  return (alpha / nrm) * l0 + (beta / nrm) * l1;
}

ComplexMatrix apply_biased_noise(const ComplexMatrix& rho, double p_z, double ratio) {
  const double p_x = ratio * p_z;
  if (!(p_z >= 0.0 && p_z <= 1.0) || !(p_x >= 0.0 && p_x <= 1.0)) throw DomainError("flip probabilities must lie in [0, 1]");
  if (rho.rows() != kDim || rho.cols() != kDim) throw DomainError("noise acts on 7-qubit density matrices");
  ComplexMatrix cur = rho;
  for (int q = 0; q < kQubits; ++q) {
    const std::uint32_t bit = 1u << q;
    for (int r = 0; r < kDim; ++r)
      for (int c = 0; c < kDim; ++c)
        if (((r ^ c) & bit) != 0) cur(r, c) *= (1.0 - 2.0 * p_z);
  }
  for (int q = 0; q < kQubits; ++q) {
    const std::uint32_t bit = 1u << q;
    ComplexMatrix next(kDim, kDim);
    for (int r = 0; r < kDim; ++r)
      for (int c = 0; c < kDim; ++c) next(r, c) = (1.0 - p_x) * cur(r, c) + p_x * cur(r ^ bit, c ^ bit);
    cur = std::move(next);
  }
  return cur;
}

Metrics qed_metrics(const SteaneProjectors& proj, const ComplexMatrix& rho) {
  // tr[P rho] = sum_ij P_ij rho_ji
  return {proj.p_code.cwiseProduct(rho.transpose()).sum().real(), proj.p_x.cwiseProduct(rho.transpose()).sum().real()};
}

std::vector<double> default_pz_grid() {
  std::vector<double> g{0.0};
  for (int i = 0; i < 10; ++i) g.push_back(std::pow(10.0, -3.0 + 2.0 * i / 9.0));
  return g;
}

SweepResult fig_sweep(const std::vector<double>& ratios, const std::vector<double>& p_z, int codewords,
                      std::uint64_t seed) {
  if (codewords < 1) throw DomainError("need at least one codeword");
  const SteaneProjectors proj = steane_projectors();
  // the same codewords are used for every (ratio, p_z) point
  std::vector<ComplexMatrix> states(codewords);
  for (int c = 0; c < codewords; ++c) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
    const ComplexVector v = random_codeword(rng);
    states[c] = v * v.adjoint();
  }
  SweepResult res;
  res.codewords = codewords;
  const std::size_t npts = ratios.size() * p_z.size();
  res.per_codeword.resize(npts * codewords);
  const auto total = static_cast<std::int64_t>(npts * codewords);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    const std::size_t pt = idx / codewords;
    const int c = static_cast<int>(idx % codewords);
    const double r = ratios[pt / p_z.size()];
    const double pz = p_z[pt % p_z.size()];
    res.per_codeword[idx] = qed_metrics(proj, apply_biased_noise(states[c], pz, r));
  }
  for (std::size_t pt = 0; pt < npts; ++pt) {
    SweepRow row{ratios[pt / p_z.size()], p_z[pt % p_z.size()], 0.0, 0.0, 0.0, 0.0, 0.0};
    row.p_x = row.ratio * row.p_z;
    for (int c = 0; c < codewords; ++c) {
      row.p += res.per_codeword[pt * codewords + c].p / codewords;
      row.r += res.per_codeword[pt * codewords + c].r / codewords;
    }
    if (codewords > 1) {
      for (int c = 0; c < codewords; ++c) {
        const auto& m = res.per_codeword[pt * codewords + c];
        row.p_spread += (m.p - row.p) * (m.p - row.p);
        row.r_spread += (m.r - row.r) * (m.r - row.r);
      }
      row.p_spread = std::sqrt(row.p_spread / (codewords - 1));
      row.r_spread = std::sqrt(row.r_spread / (codewords - 1));
    }
    res.rows.push_back(row);
  }
  return res;
}

HybridQed hybrid_qed_channel() {
  const auto zs = stabilizer_group(steane_z_generators());
  const auto xs = stabilizer_group(steane_x_generators());
  std::vector<UnitaryTerm> terms;
  std::vector<std::vector<int>> groups;
  for (const auto& s : zs) {
    groups.emplace_back();
    const ComplexMatrix sm = s.matrix();
    for (const auto& t : xs) {
      groups.back().push_back(static_cast<int>(terms.size()));
      terms.emplace_back(1.0, ComplexMatrix(sm * t.matrix()));
    }
  }
  const int m = static_cast<int>(terms.size());
  return {LcuDecomposition::normalize(std::move(terms)), Partition::validate(std::move(groups), m)};
}

std::vector<std::vector<GroupOperator>> qed_rounds() {
  std::vector<UnitaryTerm> xterms, zterms;
  for (const auto& t : stabilizer_group(steane_x_generators())) xterms.emplace_back(1.0, t.matrix());
  for (const auto& s : stabilizer_group(steane_z_generators())) zterms.emplace_back(1.0, s.matrix());
  const auto xdec = LcuDecomposition::normalize(std::move(xterms));
  const auto zdec = LcuDecomposition::normalize(std::move(zterms));
  return {group_operators(xdec, Partition::coarsest(xdec.size())),
          group_operators(zdec, Partition::singletons(zdec.size()))};
}

}  // namespace hlcu::qed
