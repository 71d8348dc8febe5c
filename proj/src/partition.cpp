#include "hlcu/partition.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace hlcu {

Partition Partition::validate(std::vector<std::vector<int>> groups, int m) {
  if (m < 1) throw DomainError("partition needs at least one term");
  std::vector<int> owner(m, -1);
  for (std::size_t k = 0; k < groups.size(); ++k) {
    if (groups[k].empty()) throw PartitionError(PartitionError::Kind::empty_group, "group " + std::to_string(k + 1) + " is empty");
    for (int i : groups[k]) {
      if (i < 0 || i >= m)
        throw PartitionError(PartitionError::Kind::out_of_range, "term index " + std::to_string(i + 1) + " out of range");
      if (owner[i] != -1)
        throw PartitionError(PartitionError::Kind::overlap, "term " + std::to_string(i + 1) + " appears in two groups");
      owner[i] = static_cast<int>(k);
    }
  }
  for (int i = 0; i < m; ++i)
    if (owner[i] == -1) throw PartitionError(PartitionError::Kind::gap, "term " + std::to_string(i + 1) + " is not covered");

  for (auto& g : groups) std::sort(g.begin(), g.end());
  std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  Partition p;
  p.m_ = m;
  p.groups_ = std::move(groups);
  p.owner_.assign(m, 0);
  for (std::size_t k = 0; k < p.groups_.size(); ++k)
    for (int i : p.groups_[k]) p.owner_[i] = static_cast<int>(k);
  return p;
}

Partition Partition::coarsest(int m) {
  std::vector<int> all(m);
  for (int i = 0; i < m; ++i) all[i] = i;
  return validate({all}, m);
}

Partition Partition::singletons(int m) {
  std::vector<std::vector<int>> g(m);
  for (int i = 0; i < m; ++i) g[i] = {i};
  return validate(std::move(g), m);
}

Partition Partition::parse(std::string_view text, int m) {
  std::vector<std::vector<int>> groups(1);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = text.find_first_of(",|", pos);
    const std::string_view tok = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      if (tok.empty()) throw PartitionError(PartitionError::Kind::empty_group, "empty entry in partition '" + std::string(text) + "'");
      throw DomainError("malformed partition token '" + std::string(tok) + "'");
    }
    groups.back().push_back(v - 1);
    if (end == std::string_view::npos) break;
    if (text[end] == '|') groups.emplace_back();
    pos = end + 1;
  }
  return validate(std::move(groups), m);
}

std::string Partition::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < groups_.size(); ++k) {
    if (k) s += '|';
    for (std::size_t j = 0; j < groups_[k].size(); ++j) {
      if (j) s += ',';
      s += std::to_string(groups_[k][j] + 1);
    }
  }
  return s;
}

int Partition::ancilla_width() const {
  int a = 0;
  for (const auto& g : groups_) a = std::max(a, ceil_log2(g.size()));
  return a;
}

std::vector<double> group_weights(const LcuDecomposition& dec, const Partition& part) {
  if (part.m() != dec.size()) throw DomainError("partition size does not match the number of LCU terms");
  std::vector<double> q(part.size(), 0.0);
  for (int k = 0; k < part.size(); ++k)
    for (int i : part.group(k)) q[k] += dec.prob(i);
  return q;
}

std::vector<GroupOperator> group_operators(const LcuDecomposition& dec, const Partition& part) {
  const auto q = group_weights(dec, part);
  std::vector<GroupOperator> out;
  out.reserve(part.size());
  for (int k = 0; k < part.size(); ++k) {
    ComplexMatrix op = ComplexMatrix::Zero(dec.dim(), dec.dim());
    for (int i : part.group(k)) op += (dec.prob(i) / q[k]) * dec.unitary(i);
    out.push_back({q[k], std::move(op)});
  }
  return out;
}

double reduction_factor(std::span<const GroupOperator> groups, const MixedState& rho) {
  double r = 0.0;
  for (const auto& g : groups) r += g.weight * (g.op * rho.matrix() * g.op.adjoint()).trace().real();
  return r;
}

double reduction_factor(const LcuDecomposition& dec, const Partition& part, const MixedState& rho) {
  return reduction_factor(group_operators(dec, part), rho);
}

double reduction_factor_obs(std::span<const GroupOperator> groups, const MixedState& rho, const Observable& o) {
  const ComplexMatrix o2 = o.squared();
  double r = 0.0;
  for (const auto& g : groups) r += g.weight * (o2 * g.op * rho.matrix() * g.op.adjoint()).trace().real();
  return r;
}

double reduction_factor_obs(const LcuDecomposition& dec, const Partition& part, const MixedState& rho,
                            const Observable& o) {
  return reduction_factor_obs(group_operators(dec, part), rho, o);
}

bool is_refinement(const Partition& fine, const Partition& coarse) {
  if (fine.m() != coarse.m()) return false;
  for (const auto& g : fine.groups()) {
    const int owner = coarse.group_of(g.front());
    for (int i : g)
      if (coarse.group_of(i) != owner) return false;
  }
  return true;
}

namespace {
std::vector<int> complement_in(const std::vector<int>& group, std::span<const int> subset) {
  std::vector<int> a(subset.begin(), subset.end());
  std::sort(a.begin(), a.end());
  for (int i : a)
    if (!std::binary_search(group.begin(), group.end(), i))
      throw DomainError("split subset contains term " + std::to_string(i + 1) + " outside the group");
  if (std::adjacent_find(a.begin(), a.end()) != a.end()) throw DomainError("split subset has repeated terms");
  std::vector<int> b;
  std::set_difference(group.begin(), group.end(), a.begin(), a.end(), std::back_inserter(b));
  if (a.empty() || b.empty()) throw DomainError("split must produce two non-empty subsets");
  return b;
}
}  // namespace

Partition split_group(const Partition& part, int group, std::span<const int> subset_a) {
  if (group < 0 || group >= part.size()) throw DomainError("group index out of range");
  const auto b = complement_in(part.group(group), subset_a);
  auto groups = part.groups();
  groups[group] = std::vector<int>(subset_a.begin(), subset_a.end());
  groups.push_back(b);
  return Partition::validate(std::move(groups), part.m());
}

Partition fragment_group(const Partition& part, int group) {
  if (group < 0 || group >= part.size()) throw DomainError("group index out of range");
  auto groups = part.groups();
  const auto members = groups[group];
  groups.erase(groups.begin() + group);
  for (int i : members) groups.push_back({i});
  return Partition::validate(std::move(groups), part.m());
}

double split_delta(const LcuDecomposition& dec, const Partition& part, int group, std::span<const int> subset_a,
                   const MixedState& rho, const Observable& o) {
  if (group < 0 || group >= part.size()) throw DomainError("group index out of range");
  const auto b = complement_in(part.group(group), subset_a);
  auto sub_op = [&](std::span<const int> idx, double& q) {
    q = 0.0;
    for (int i : idx) q += dec.prob(i);
    ComplexMatrix k = ComplexMatrix::Zero(dec.dim(), dec.dim());
    for (int i : idx) k += (dec.prob(i) / q) * dec.unitary(i);
    return k;
  };
  double qa = 0.0, qb = 0.0;
  const ComplexMatrix ka = sub_op(subset_a, qa);
  const ComplexMatrix kb = sub_op(b, qb);
  const ComplexMatrix diff = o.matrix() * (ka - kb);
  const double t = (diff * rho.matrix() * diff.adjoint()).trace().real();
  return qa * qb / (qa + qb) * t;
}

double fragment_bound(std::span<const double> weights, int group, const Observable& o) {
  if (group < 0 || group >= static_cast<int>(weights.size())) throw DomainError("group index out of range");
  return o.norm() * o.norm() * weights[group];
}

double harmonic_mean(double a, double b) {
  if (a + b == 0.0) return 0.0;
  return 2.0 * a * b / (a + b);
}

double tail_bound_r(double q_a, double q_b, double success_prob) {
  return success_prob + q_b + 2.0 * harmonic_mean(q_a, q_b);
}

std::vector<Partition> enumerate_partitions(int m) {
  if (m < 1 || m > 10) throw DomainError("enumerate_partitions supports 1 <= m <= 10");
  std::vector<Partition> out;
  std::vector<int> rgs(m, 0), maxv(m, 0);  // restricted growth string and prefix maxima
  while (true) {
    int blocks = maxv[m - 1] + 1;
    std::vector<std::vector<int>> groups(blocks);
    for (int i = 0; i < m; ++i) groups[rgs[i]].push_back(i);
    out.push_back(Partition::validate(std::move(groups), m));
    int i = m - 1;
    while (i > 0 && rgs[i] == maxv[i - 1] + 1) --i;
    if (i == 0) break;
    ++rgs[i];
    maxv[i] = std::max(maxv[i - 1], rgs[i]);
    for (int j = i + 1; j < m; ++j) {
      rgs[j] = 0;
      maxv[j] = maxv[i];
    }
  }
  return out;
}

}  // namespace hlcu
