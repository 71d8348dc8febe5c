#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hlcu/lcu.hpp"

namespace hlcu {

class PartitionError : public DomainError {
 public:
  enum class Kind { overlap, gap, empty_group, out_of_range };
  PartitionError(Kind kind, const std::string& what) : DomainError(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Set partition of the term indices {0..m-1}. Always canonical: groups sorted
// by least member, members ascending.
class Partition {
 public:
  static Partition validate(std::vector<std::vector<int>> groups, int m);
  static Partition coarsest(int m);
  static Partition singletons(int m);
  // 1-based text form, e.g. "1,2|3|4,5".
  static Partition parse(std::string_view text, int m);

  std::string to_string() const;
  int m() const { return m_; }
  int size() const { return static_cast<int>(groups_.size()); }
  const std::vector<int>& group(int k) const { return groups_[k]; }
  const std::vector<std::vector<int>>& groups() const { return groups_; }
  int group_of(int term) const { return owner_[term]; }
  // Padded ancilla width: max over groups of ceil(log2 |S_k|).
  int ancilla_width() const;

  bool operator==(const Partition& o) const { return m_ == o.m_ && groups_ == o.groups_; }

 private:
  int m_ = 0;
  std::vector<std::vector<int>> groups_;
  std::vector<int> owner_;
};

struct GroupOperator {
  double weight;         // q_k
  ComplexMatrix op;      // K_k = sum_{i in S_k} (p_i / q_k) U_i
};

std::vector<GroupOperator> group_operators(const LcuDecomposition& dec, const Partition& part);
std::vector<double> group_weights(const LcuDecomposition& dec, const Partition& part);

double reduction_factor(const LcuDecomposition& dec, const Partition& part, const MixedState& rho);
double reduction_factor(std::span<const GroupOperator> groups, const MixedState& rho);
double reduction_factor_obs(const LcuDecomposition& dec, const Partition& part, const MixedState& rho,
                            const Observable& o);
double reduction_factor_obs(std::span<const GroupOperator> groups, const MixedState& rho, const Observable& o);

// True when every group of `fine` lies inside one group of `coarse`.
bool is_refinement(const Partition& fine, const Partition& coarse);

// Exact change of the observable-weighted reduction factor when group
// `group` is split into subset_a and its complement.
double split_delta(const LcuDecomposition& dec, const Partition& part, int group, std::span<const int> subset_a,
                   const MixedState& rho, const Observable& o);
Partition split_group(const Partition& part, int group, std::span<const int> subset_a);
Partition fragment_group(const Partition& part, int group);

double fragment_bound(std::span<const double> weights, int group, const Observable& o);
double harmonic_mean(double a, double b);
// P + q_B + 2 H(q_A, q_B)
double tail_bound_r(double q_a, double q_b, double success_prob);

// All set partitions of {0..m-1} in restricted-growth order (m <= 10).
std::vector<Partition> enumerate_partitions(int m);

}  // namespace hlcu
