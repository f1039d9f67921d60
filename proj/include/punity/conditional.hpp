// conditional.hpp -- conditional topological entropy of one partition given
// another, and the tail quantities built from families of partitions.
#pragma once

#include <span>
#include <vector>

#include "punity/budget.hpp"
#include "punity/entropy.hpp"
#include "punity/measure.hpp"
#include "punity/partition.hpp"
#include "punity/subadditive.hpp"

namespace punity {

// max c . a over the box-constrained simplex slice lower <= a <= upper,
// sum a = 1.  Requires sum(lower) <= 1 <= sum(upper); solved exactly by
// greedy filling in decreasing-coefficient order (ties by index).
struct BoxSimplexSolution {
  std::vector<double> argmax;
  double value = 0.0;
};
BoxSimplexSolution box_simplex_maximize(std::span<const double> c, std::span<const double> lower,
                                        std::span<const double> upper);

// log of the conditional count at horizons 1..N: each conditioning member psi
// of the n-fold join contributes c_psi = sum over measured members of the
// supremum over supp(psi), and the counts are combined through the box-simplex
// program over admissible weight vectors.  When the conditioning partition is
// strictly positive every support is full, the weights integrate to one, and
// the program collapses to the unconditioned count; that shortcut is exact.
// The sequence carries no subadditivity certificate, so the limit is reported
// through tail_ratio_estimate.
std::vector<double> conditional_entropy_values(const PartitionOfUnity& measured,
                                               const PartitionOfUnity& conditioning, int horizon,
                                               EvalBudget* budget = nullptr);
LimsupEstimate conditional_topological_entropy(const PartitionOfUnity& measured,
                                               const PartitionOfUnity& conditioning, int horizon,
                                               EvalBudget* budget = nullptr);

// Variant taking the max over conditioning members instead of the weighted
// combination; submultiplicative, so Fekete certification applies.
SubadditiveTrace conditional_entropy_max_trace(const PartitionOfUnity& measured,
                                               const PartitionOfUnity& conditioning, int horizon,
                                               EvalBudget* budget = nullptr);
LimitEstimate conditional_topological_entropy_max(const PartitionOfUnity& measured,
                                                  const PartitionOfUnity& conditioning,
                                                  int horizon, EvalBudget* budget = nullptr);

// Pressure-weighted counts: suprema of member * exp(Birkhoff sum of g).  With
// g identically zero this reduces entry for entry to the entropy version.
std::vector<double> conditional_pressure_values(const Potential& g,
                                                const PartitionOfUnity& measured,
                                                const PartitionOfUnity& conditioning, int horizon,
                                                EvalBudget* budget = nullptr);
LimsupEstimate conditional_topological_pressure(const Potential& g,
                                                const PartitionOfUnity& measured,
                                                const PartitionOfUnity& conditioning, int horizon,
                                                EvalBudget* budget = nullptr);

// entries[c][k]: conditional estimate of family[k] given family[c].  The
// family must be listed from coarse to fine: member support diameters must be
// nonincreasing along it.
struct TailMatrix {
  int horizon = 0;
  std::vector<std::vector<double>> entries;
};
TailMatrix tail_entropy_matrix(const std::vector<PartitionOfUnity>& family, int horizon,
                               EvalBudget* budget = nullptr);
TailMatrix tail_pressure_matrix(const Potential& g, const std::vector<PartitionOfUnity>& family,
                                int horizon, EvalBudget* budget = nullptr);

// tails[k][q]: entropy rate of measure q minus the trace difference estimate
// for family[k]; nonnegative up to estimator error and shrinking in k as the
// family refines.
struct MetricTailTable {
  int horizon = 0;
  std::vector<std::vector<double>> tails;
};
MetricTailTable metric_tail_table(const std::vector<ShiftMeasure>& mus,
                                  const std::vector<PartitionOfUnity>& family, int horizon,
                                  EvalBudget* budget = nullptr);

}  // namespace punity
