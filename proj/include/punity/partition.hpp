// partition.hpp -- finite partitions of unity made of locally constant members.
#pragma once

#include <optional>

#include "punity/budget.hpp"
#include "punity/subshift.hpp"

namespace punity {

// Members must sum to one on every admissible word within this tolerance.
inline constexpr double kPartitionSumTol = 1e-12;

struct PartitionReport {
  double max_residual = 0.0;        // max over words of |sum - 1|
  std::vector<double> residuals;    // per admissible word at the common depth
  bool pass = false;
};

// Report-only check of a raw member list (common system required; members are
// compared at the deepest member depth).  Does not throw on bad sums.
PartitionReport validate_members(const std::vector<LocallyConstantFunction>& members);

class PartitionOfUnity {
 public:
  // Members are refined to a common depth; construction rejects member lists
  // whose sum strays from 1 beyond kPartitionSumTol or whose values leave [0,1].
  explicit PartitionOfUnity(std::vector<LocallyConstantFunction> members);

  const SystemPtr& system() const { return system_; }
  int depth() const { return depth_; }
  int size() const { return static_cast<int>(members_.size()); }
  const LocallyConstantFunction& member(int i) const { return members_[i]; }
  const std::vector<LocallyConstantFunction>& members() const { return members_; }
  // True when every stored value is exactly 0 or 1.
  bool is_indicator() const { return indicator_; }
  // True when every stored value is strictly positive (full supports).
  bool is_positive() const { return positive_; }

  PartitionReport validate() const { return validate_members(members_); }
  PartitionOfUnity shift_pullback() const;

 private:
  SystemPtr system_;
  int depth_;
  std::vector<LocallyConstantFunction> members_;
  bool indicator_;
  bool positive_;
};

// Same partition with every member tabulated at a deeper word depth.
PartitionOfUnity refine_partition(const PartitionOfUnity& p, int depth);

// One indicator member per admissible word of `depth`, in word order.
PartitionOfUnity make_cylinder_partition(SystemPtr system, int depth);
// (1-lambda) * cylinder indicators + lambda * uniform 1/member_count.
PartitionOfUnity make_smoothed_partition(SystemPtr system, int depth, double lambda);
// Multiset of k copies of {member/k}; leaves all entropy quantities unchanged.
PartitionOfUnity scale_copies(const PartitionOfUnity& p, int k);

// Pairwise products at the common refined depth; members that vanish on every
// admissible word are pruned.
PartitionOfUnity join(const PartitionOfUnity& a, const PartitionOfUnity& b);

// Join of p, p over the shift, ..., p over the (n-1)-fold shift, at depth
// p.depth()+n-1.  The non-indicator path refuses upfront when the worst-case
// size()^n * word_count bound exceeds the budget; all paths charge actual work.
PartitionOfUnity iterate_join(const PartitionOfUnity& p, int n,
                              EvalBudget* budget = nullptr);

// Max over members of the support diameter in the word metric: 2^-L for a
// support with longest common prefix L, 2^-depth for a single cylinder, 1 for
// full support.  Throws on an identically zero member.
double diameter(const PartitionOfUnity& p);

}  // namespace punity
