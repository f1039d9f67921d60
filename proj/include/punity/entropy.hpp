// entropy.hpp -- static and dynamical entropy quantities of partitions of
// unity: metric entropy against shift-invariant measures, topological counts,
// and pressure against a locally constant potential.
#pragma once

#include <cstdint>
#include <vector>

#include "punity/budget.hpp"
#include "punity/measure.hpp"
#include "punity/partition.hpp"
#include "punity/subadditive.hpp"

namespace punity {

// Static quantities at a single depth, no dynamics involved.
// Metric: sum over members of -eta(mu(phi)) + mu(eta o phi), eta(t) = t log t.
double static_metric_entropy(const ShiftMeasure& mu, const PartitionOfUnity& p);
// Conditional form: sum over psi of mu(psi) times the static entropy of phi
// against the conditioned measure; members with mu(psi) = 0 contribute zero.
double conditional_static_entropy(const ShiftMeasure& mu, const PartitionOfUnity& phi,
                                  const PartitionOfUnity& psi);
// Topological count: sum of member suprema; always at least one.
double static_topological_entropy(const PartitionOfUnity& p);

// Trace of static metric entropies of the n-fold joins, n = 1..horizon.
SubadditiveTrace metric_entropy_trace(const ShiftMeasure& mu, const PartitionOfUnity& p,
                                      int horizon, EvalBudget* budget = nullptr);
// Same joins evaluated once for a batch of measures.
std::vector<SubadditiveTrace> metric_entropy_traces(const std::vector<ShiftMeasure>& mus,
                                                    const PartitionOfUnity& p, int horizon,
                                                    EvalBudget* budget = nullptr);
LimitEstimate local_metric_entropy(const ShiftMeasure& mu, const PartitionOfUnity& p, int horizon,
                                   EvalBudget* budget = nullptr);

// a_n = log of the join's topological count.
SubadditiveTrace topological_entropy_trace(const PartitionOfUnity& p, int horizon,
                                           EvalBudget* budget = nullptr);
LimitEstimate local_topological_entropy(const PartitionOfUnity& p, int horizon,
                                        EvalBudget* budget = nullptr);

using Potential = LocallyConstantFunction;

// a_n = log sum over join members of sup(member * exp(Birkhoff sum of g)).
SubadditiveTrace pressure_trace(const Potential& g, const PartitionOfUnity& p, int horizon,
                                EvalBudget* budget = nullptr);
LimitEstimate topological_pressure(const Potential& g, const PartitionOfUnity& p, int horizon,
                                   EvalBudget* budget = nullptr);
// Local metric entropy estimate shifted by the integral of g.
LimitEstimate metric_pressure(const ShiftMeasure& mu, const Potential& g,
                              const PartitionOfUnity& p, int horizon,
                              EvalBudget* budget = nullptr);

// Product-system consistency: max(a^X_n, a^Y_n) <= a^{XxY}_n <= a^X_n + a^Y_n
// checked per horizon for the product measure and product partition.
struct ProductCheckReport {
  std::vector<double> left, right, product;  // metric traces a_1..a_N
  std::vector<uint8_t> lower_ok, upper_ok;   // per-n verdicts at 1e-9
  bool pass = false;
};
ProductCheckReport product_entropy_check(const ShiftMeasure& mu_x, const PartitionOfUnity& px,
                                         const ShiftMeasure& mu_y, const PartitionOfUnity& py,
                                         int horizon, EvalBudget* budget = nullptr);

// Building blocks for product checks, exposed for direct use.  Product symbol
// (a, b) is encoded as a * |alphabet_y| + b.  The product transition relation
// must itself be irreducible or construction throws.
SystemPtr product_system(const SystemPtr& x, const SystemPtr& y);
ShiftMeasure product_measure(const ShiftMeasure& mu_x, const ShiftMeasure& mu_y,
                             const SystemPtr& product);
PartitionOfUnity product_partition(const PartitionOfUnity& px, const PartitionOfUnity& py,
                                   const SystemPtr& product);

namespace detail {
// Sparse-support evaluation path without the match-count shortcut; exposed so
// tests can cross-check the two strategies on the same inputs.
std::vector<SubadditiveTrace> metric_entropy_traces_general(const std::vector<ShiftMeasure>& mus,
                                                            const PartitionOfUnity& p, int horizon,
                                                            EvalBudget* budget = nullptr);
}  // namespace detail

}  // namespace punity
