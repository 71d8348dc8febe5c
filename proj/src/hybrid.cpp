#include "hlcu/hybrid.hpp"

#include <algorithm>
#include <cmath>

#include "hlcu/rng.hpp"

namespace hlcu {

namespace {

// Unitary whose first column is the unit vector c, via the Householder
// reflection about c - e_0.
ComplexMatrix householder_completion(const ComplexVector& c) {
  const Eigen::Index n = c.size();
  ComplexVector v = c;
  v(0) -= 1.0;
  const double vn2 = v.squaredNorm();
  ComplexMatrix h = ComplexMatrix::Identity(n, n);
  if (vn2 < 1e-30) return h;
  h -= (2.0 / vn2) * v * v.adjoint();
  return h;
}

constexpr int kMaxCircuitDim = 1024;

}  // namespace

BlockEncoding build_block_encoding(const LcuDecomposition& dec, std::span<const int> group, int padded_qubits) {
  if (group.empty()) throw DomainError("block encoding of an empty group");
  BlockEncoding be;
  be.ancilla_qubits = ceil_log2(group.size());
  if (padded_qubits < be.ancilla_qubits) throw DomainError("padded ancilla width smaller than the group needs");
  be.padded_qubits = padded_qubits;
  be.dim = dec.dim();
  const int na = 1 << padded_qubits;
  double q = 0.0;
  for (int i : group) q += dec.prob(i);
  ComplexVector col = ComplexVector::Zero(na);
  for (std::size_t t = 0; t < group.size(); ++t) col(t) = std::sqrt(dec.prob(group[t]) / q);
  col.normalize();
  be.prepare = householder_completion(col);
  be.select_blocks.reserve(na);
  for (int a = 0; a < na; ++a) {
    if (a < static_cast<int>(group.size()))
      be.select_blocks.push_back(dec.unitary(group[a]));
    else
      be.select_blocks.push_back(ComplexMatrix::Identity(be.dim, be.dim));
  }
  be.encoded = ComplexMatrix::Zero(be.dim, be.dim);
  for (int i : group) be.encoded += (dec.prob(i) / q) * dec.unitary(i);
  return be;
}

ComplexMatrix BlockEncoding::prepare_adjoint_select_prepare() const {
  const int na = ancilla_dim();
  if (static_cast<long>(na) * dim > kMaxCircuitDim) throw DomainError("block encoding too large to build explicitly");
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix pre = kron(prepare, id);
  ComplexMatrix sel = ComplexMatrix::Zero(na * dim, na * dim);
  for (int a = 0; a < na; ++a) sel.block(a * dim, a * dim, dim, dim) = select_blocks[a];
  return pre.adjoint() * sel * pre;
}

std::vector<ComplexMatrix> BlockEncoding::first_block_column() const {
  const int na = ancilla_dim();
  std::vector<ComplexMatrix> out(na, ComplexMatrix::Zero(dim, dim));
  for (int i = 0; i < na; ++i) {
    const cplx p0 = prepare(i, 0);
    if (p0 == 0.0) continue;
    for (int a = 0; a < na; ++a) {
      const cplx w = std::conj(prepare(i, a)) * p0;
      if (w != 0.0) out[a] += w * select_blocks[i];
    }
  }
  return out;
}

ComplexMatrix build_controlled_pair(const BlockEncoding& lk, const BlockEncoding& lkp) {
  if (lk.dim != lkp.dim || lk.padded_qubits != lkp.padded_qubits)
    throw DomainError("controlled pair needs block encodings on the same registers");
  const ComplexMatrix a = lkp.unitary();
  const ComplexMatrix b = lk.unitary();
  const Eigen::Index n = a.rows();
  ComplexMatrix out = ComplexMatrix::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = a;
  out.bottomRightCorner(n, n) = b;
  return out;
}

HybridChannel::HybridChannel(LcuDecomposition dec, Partition part)
    : dec_(std::move(dec)), part_(std::move(part)), groups_(group_operators(dec_, part_)) {
  const int astar = part_.ancilla_width();
  encodings_.reserve(part_.size());
  for (int k = 0; k < part_.size(); ++k) encodings_.push_back(build_block_encoding(dec_, part_.group(k), astar));
}

namespace {
void check_instance(const HybridChannel& ch, const MixedState& rho, const Observable& o) {
  if (rho.dim() != ch.dim() || o.dim() != ch.dim()) throw DomainError("state/observable dimension does not match channel");
}
}  // namespace

double exact_expectation(const HybridChannel& ch, const MixedState& rho, const Observable& o, Backend backend) {
  check_instance(ch, rho, o);
  const int g = ch.num_groups();
  double total = 0.0;
  if (backend == Backend::analytic) {
    // X_B component of the projected state: symmetrized cross terms.
    for (int k = 0; k < g; ++k)
      for (int kp = 0; kp < g; ++kp) {
        const auto& a = ch.groups()[k];
        const auto& b = ch.groups()[kp];
        total += a.weight * b.weight * (o.matrix() * a.op * rho.matrix() * b.op.adjoint()).trace().real();
      }
    return total;
  }

  const int d = ch.dim();
  const int na = 1 << ch.ancilla_width();
  const int n = na * d;
  if (2 * n > kMaxCircuitDim) throw DomainError("instance too large for the circuit backend");
  // |0><0|_A (x) rho and the measured operator Pi_A (x) O on the ancilla+system registers.
  ComplexMatrix rho_as = ComplexMatrix::Zero(n, n);
  rho_as.topLeftCorner(d, d) = rho.matrix();
  ComplexMatrix meas_as = ComplexMatrix::Zero(n, n);
  meas_as.topLeftCorner(d, d) = o.matrix();
  const ComplexMatrix plus = ComplexMatrix::Constant(2, 2, 0.5);
  ComplexMatrix xb(2, 2);
  xb << 0, 1, 1, 0;
  const ComplexMatrix rho_in = kron(plus, rho_as);
  const ComplexMatrix meas = kron(xb, meas_as);

  std::vector<ComplexMatrix> units(g);
  for (int k = 0; k < g; ++k) units[k] = ch.encoding(k).unitary();
  for (int k = 0; k < g; ++k)
    for (int kp = 0; kp < g; ++kp) {
      const double w = ch.weight(k) * ch.weight(kp);
      double v;
      if (k == kp) {
        // control register untouched: <X_B> = 1 on |+>
        const ComplexMatrix out = units[k] * rho_as * units[k].adjoint();
        v = (meas_as * out).trace().real();
      } else {
        ComplexMatrix lc = ComplexMatrix::Zero(2 * n, 2 * n);
        lc.topLeftCorner(n, n) = units[kp];
        lc.bottomRightCorner(n, n) = units[k];
        const ComplexMatrix out = lc * rho_in * lc.adjoint();
        v = (meas * out).trace().real();
      }
      total += w * v;
    }
  return total;
}

double second_moment(const HybridChannel& ch, const MixedState& rho, const Observable& o) {
  check_instance(ch, rho, o);
  // Twice the I_B/2 component of the projected state, evaluated on O^2.
  const ComplexMatrix o2 = o.squared();
  ComplexMatrix ib_part = ComplexMatrix::Zero(ch.dim(), ch.dim());
  for (const auto& gk : ch.groups()) ib_part += gk.weight * gk.op * rho.matrix() * gk.op.adjoint();
  return (o2 * ib_part).trace().real();
}

std::vector<Outcome> outcome_distribution(const HybridChannel& ch, const MixedState& rho, const Observable& o, int k,
                                          int kprime) {
  check_instance(ch, rho, o);
  if (k < 0 || kprime < 0 || k >= ch.num_groups() || kprime >= ch.num_groups())
    throw DomainError("group index out of range");
  const int d = ch.dim();
  const auto col_k = ch.encoding(k).first_block_column();
  const auto col_kp = ch.encoding(kprime).first_block_column();
  const int na = static_cast<int>(col_k.size());
  const ComplexMatrix& v = o.eigen().vectors;
  const int nb = (k == kprime) ? 1 : 2;

  // probs[z][b][j]
  std::vector<double> probs(2 * 2 * d, 0.0);
  for (int a = 0; a < na; ++a) {
    const int z = a == 0 ? 0 : 1;
    for (int b = 0; b < nb; ++b) {
      ComplexMatrix c;
      double scale;
      if (k == kprime) {
        c = col_k[a];
        scale = 1.0;
      } else {
        c = (b == 0) ? ComplexMatrix(col_kp[a] + col_k[a]) : ComplexMatrix(col_kp[a] - col_k[a]);
        scale = 0.25;
      }
      const ComplexMatrix m = v.adjoint() * c;
      const ComplexMatrix mr = m * rho.matrix();
      for (int j = 0; j < d; ++j) {
        const double p = scale * (mr.row(j).dot(m.row(j))).real();  // dot conjugates the left operand
        probs[(z * 2 + b) * d + j] += p;
      }
    }
  }
  std::vector<Outcome> out;
  out.reserve(2 * nb * d);
  for (int z = 0; z < 2; ++z)
    for (int b = 0; b < nb; ++b)
      for (int j = 0; j < d; ++j) {
        const double p = std::max(0.0, probs[(z * 2 + b) * d + j]);
        const double g = (z == 0) ? ((b == 0) ? 1.0 : -1.0) * o.eigen().values(j) : 0.0;
        out.push_back({z, b, j, p, g});
      }
  return out;
}

namespace {
double exhaustive_moment(const HybridChannel& ch, const MixedState& rho, const Observable& o, int power) {
  double total = 0.0;
  for (int k = 0; k < ch.num_groups(); ++k)
    for (int kp = 0; kp < ch.num_groups(); ++kp) {
      double inner = 0.0;
      for (const auto& e : outcome_distribution(ch, rho, o, k, kp)) inner += e.prob * (power == 1 ? e.g : e.g * e.g);
      total += ch.weight(k) * ch.weight(kp) * inner;
    }
  return total;
}

std::vector<double> cumulative(const std::vector<double>& w) {
  std::vector<double> c(w.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) c[i] = (acc += w[i]);
  for (auto& x : c) x /= acc;
  c.back() = 1.0;
  return c;
}

int draw_index(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1));
}
}  // namespace

double exhaustive_expectation(const HybridChannel& ch, const MixedState& rho, const Observable& o) {
  return exhaustive_moment(ch, rho, o, 1);
}

double exhaustive_second_moment(const HybridChannel& ch, const MixedState& rho, const Observable& o) {
  return exhaustive_moment(ch, rho, o, 2);
}

HybridSampler::HybridSampler(const HybridChannel& ch, const MixedState& rho, const Observable& o) {
  const int g = ch.num_groups();
  std::vector<double> w(g);
  for (int k = 0; k < g; ++k) w[k] = ch.weight(k);
  group_cdf_ = cumulative(w);
  tables_.resize(static_cast<std::size_t>(g) * g);
  cdfs_.resize(tables_.size());
  for (int k = 0; k < g; ++k)
    for (int kp = 0; kp < g; ++kp) {
      auto table = outcome_distribution(ch, rho, o, k, kp);
      std::vector<double> p(table.size());
      for (std::size_t i = 0; i < table.size(); ++i) p[i] = table[i].prob;
      cdfs_[k * g + kp] = cumulative(p);
      tables_[k * g + kp] = std::move(table);
    }
}

ShotRecord HybridSampler::draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t shot) const {
  CounterRng rng(seed, stream, shot);
  const int g = num_groups();
  const int k = draw_index(group_cdf_, rng.next_double());
  const int kp = draw_index(group_cdf_, rng.next_double());
  const auto idx = static_cast<std::size_t>(k) * g + kp;
  const Outcome& e = tables_[idx][draw_index(cdfs_[idx], rng.next_double())];
  return {shot, k, kp, e.z, e.b, e.j, e.g};
}

RoundComposition compose_rounds(std::span<const std::vector<GroupOperator>> rounds, const MixedState& rho) {
  RoundComposition out;
  MixedState cur = rho.normalized();
  for (std::size_t mu = 0; mu < rounds.size(); ++mu) {
    out.states.push_back(cur);
    ComplexMatrix next = ComplexMatrix::Zero(cur.dim(), cur.dim());
    for (const auto& gk : rounds[mu]) {
      if (gk.op.rows() != cur.dim()) throw DomainError("round operator dimension mismatch");
      next += gk.weight * gk.op * cur.matrix() * gk.op.adjoint();
    }
    const double r = next.trace().real();
    if (!(r > 1e-300)) throw DegenerateRoundError(static_cast<int>(mu), r);
    out.round_factors.push_back(r);
    out.reduction_factor *= r;
    next /= r;
    next = 0.5 * (next + next.adjoint());
    cur = MixedState(std::move(next));
  }
  out.states.push_back(cur);
  return out;
}

}  // namespace hlcu
