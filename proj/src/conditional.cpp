#include "punity/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "punity/join_kernel.hpp"
#include "punity/sum.hpp"

namespace punity {

BoxSimplexSolution box_simplex_maximize(std::span<const double> c, std::span<const double> lower,
                                        std::span<const double> upper) {
  const size_t n = c.size();
  if (lower.size() != n || upper.size() != n)
    throw std::invalid_argument("box_simplex_maximize: size mismatch");
  double lo_sum = 0.0, hi_sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    if (lower[i] > upper[i] + 1e-15)
      throw std::invalid_argument("box_simplex_maximize: empty box");
    lo_sum += lower[i];
    hi_sum += upper[i];
  }
  if (lo_sum > 1.0 + 1e-12 || hi_sum < 1.0 - 1e-12)
    throw std::invalid_argument("box_simplex_maximize: simplex slice is empty");
  BoxSimplexSolution sol;
  sol.argmax.assign(lower.begin(), lower.end());
  double slack = 1.0 - lo_sum;
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return c[a] > c[b]; });
  for (size_t i : order) {
    if (slack <= 0.0) break;
    const double room = upper[i] - lower[i];
    const double take = std::min(room, slack);
    sol.argmax[i] += take;
    slack -= take;
  }
  NeumaierSum v;
  for (size_t i = 0; i < n; ++i) v.add(c[i] * sol.argmax[i]);
  sol.value = v.value();
  return sol;
}

namespace {

// One horizon of the conditional count; a nonempty birkhoff table switches on
// the pressure weighting.
double conditional_count(const PartitionOfUnity& measured, const PartitionOfUnity& conditioning,
                         int n, const Potential* g, EvalBudget* budget, bool peak_only) {
  int D = std::max(measured.depth(), conditioning.depth()) + n - 1;
  if (g) D = std::max(D, g->depth() + n - 1);
  const SystemPtr sys = measured.system();
  const WordSet& words = sys->words(D);
  std::vector<double> weight;  // exp of the Birkhoff sum, empty for entropy
  if (g) {
    std::vector<double> birkhoff(words.count(), 0.0);
    const WordSet& gw = sys->words(g->depth());
    for (int j = 0; j < n; ++j) {
      std::vector<int32_t> map = words.window_map(gw, j);
      for (int w = 0; w < words.count(); ++w) birkhoff[w] += g->value_by_index(map[w]);
    }
    weight.resize(birkhoff.size());
    for (size_t w = 0; w < birkhoff.size(); ++w) weight[w] = std::exp(birkhoff[w]);
  }
  JoinEnumerator inner(measured, n, D, /*with_logs=*/false, budget);
  const auto count_over = [&](std::span<const int32_t> support) {
    NeumaierSum total;
    inner.for_each_from(support, [&](std::span<const int>, const JoinFrame& leaf) {
      double best = 0.0;
      if (weight.empty()) {
        for (double v : leaf.val) best = std::max(best, v);
      } else {
        for (size_t e = 0; e < leaf.idx.size(); ++e)
          best = std::max(best, leaf.val[e] * weight[leaf.idx[e]]);
      }
      total.add(best);
    });
    return total.value();
  };
  if (conditioning.is_positive()) {
    // full supports: the weights form a probability vector and every member
    // sees the same unconditioned count, so the program value equals it
    std::vector<int32_t> all(words.count());
    for (int w = 0; w < words.count(); ++w) all[w] = w;
    return count_over(all);
  }
  std::vector<double> c, lo, hi;
  JoinEnumerator outer(conditioning, n, D, /*with_logs=*/false, budget);
  outer.for_each([&](std::span<const int>, const JoinFrame& leaf) {
    double top = 0.0;
    double bottom = std::numeric_limits<double>::infinity();
    for (double v : leaf.val) {
      top = std::max(top, v);
      bottom = std::min(bottom, v);
    }
    if (leaf.idx.size() < static_cast<size_t>(words.count())) bottom = 0.0;
    c.push_back(count_over(leaf.idx));
    lo.push_back(bottom);
    hi.push_back(top);
  });
  if (peak_only) {
    double best = 0.0;
    for (double v : c) best = std::max(best, v);
    return best;
  }
  return box_simplex_maximize(c, lo, hi).value;
}

std::vector<double> conditional_values(const PartitionOfUnity& measured,
                                       const PartitionOfUnity& conditioning, int horizon,
                                       const Potential* g, EvalBudget* budget, bool peak_only) {
  if (measured.system() != conditioning.system())
    throw std::invalid_argument("conditional entropy: partitions on different systems");
  if (g && g->system() != measured.system())
    throw std::invalid_argument("conditional entropy: potential on a different system");
  if (horizon < 1) throw std::invalid_argument("conditional entropy: horizon must be >= 1");
  std::vector<double> values;
  values.reserve(horizon);
  for (int n = 1; n <= horizon; ++n)
    values.push_back(std::log(conditional_count(measured, conditioning, n, g, budget, peak_only)));
  return values;
}

}  // namespace

std::vector<double> conditional_entropy_values(const PartitionOfUnity& measured,
                                               const PartitionOfUnity& conditioning, int horizon,
                                               EvalBudget* budget) {
  return conditional_values(measured, conditioning, horizon, nullptr, budget, false);
}

LimsupEstimate conditional_topological_entropy(const PartitionOfUnity& measured,
                                               const PartitionOfUnity& conditioning, int horizon,
                                               EvalBudget* budget) {
  return tail_ratio_estimate(conditional_entropy_values(measured, conditioning, horizon, budget));
}

SubadditiveTrace conditional_entropy_max_trace(const PartitionOfUnity& measured,
                                               const PartitionOfUnity& conditioning, int horizon,
                                               EvalBudget* budget) {
  return SubadditiveTrace(conditional_values(measured, conditioning, horizon, nullptr, budget, true));
}

LimitEstimate conditional_topological_entropy_max(const PartitionOfUnity& measured,
                                                  const PartitionOfUnity& conditioning, int horizon,
                                                  EvalBudget* budget) {
  return fekete(conditional_entropy_max_trace(measured, conditioning, horizon, budget));
}

std::vector<double> conditional_pressure_values(const Potential& g,
                                                const PartitionOfUnity& measured,
                                                const PartitionOfUnity& conditioning, int horizon,
                                                EvalBudget* budget) {
  return conditional_values(measured, conditioning, horizon, &g, budget, false);
}

LimsupEstimate conditional_topological_pressure(const Potential& g,
                                                const PartitionOfUnity& measured,
                                                const PartitionOfUnity& conditioning, int horizon,
                                                EvalBudget* budget) {
  return tail_ratio_estimate(
      conditional_pressure_values(g, measured, conditioning, horizon, budget));
}

namespace {

void require_refining_order(const std::vector<PartitionOfUnity>& family) {
  if (family.empty()) throw std::invalid_argument("tail matrix: empty family");
  double prev = std::numeric_limits<double>::infinity();
  for (const PartitionOfUnity& p : family) {
    const double d = diameter(p);
    if (d > prev + 1e-15)
      throw std::invalid_argument("tail matrix: family diameters must be nonincreasing");
    prev = d;
  }
}

TailMatrix tail_matrix_impl(const Potential* g, const std::vector<PartitionOfUnity>& family,
                            int horizon, EvalBudget* budget) {
  require_refining_order(family);
  TailMatrix m;
  m.horizon = horizon;
  const size_t K = family.size();
  m.entries.assign(K, std::vector<double>(K, 0.0));
  for (size_t c = 0; c < K; ++c)
    for (size_t k = 0; k < K; ++k) {
      std::vector<double> vals =
          conditional_values(family[k], family[c], horizon, g, budget, false);
      m.entries[c][k] = tail_ratio_estimate(vals).tail_max_ratio;
    }
  return m;
}

}  // namespace

TailMatrix tail_entropy_matrix(const std::vector<PartitionOfUnity>& family, int horizon,
                               EvalBudget* budget) {
  return tail_matrix_impl(nullptr, family, horizon, budget);
}

TailMatrix tail_pressure_matrix(const Potential& g, const std::vector<PartitionOfUnity>& family,
                                int horizon, EvalBudget* budget) {
  return tail_matrix_impl(&g, family, horizon, budget);
}

MetricTailTable metric_tail_table(const std::vector<ShiftMeasure>& mus,
                                  const std::vector<PartitionOfUnity>& family, int horizon,
                                  EvalBudget* budget) {
  require_refining_order(family);
  if (mus.empty()) throw std::invalid_argument("metric tail table: no measures");
  MetricTailTable t;
  t.horizon = horizon;
  t.tails.assign(family.size(), std::vector<double>(mus.size(), 0.0));
  std::vector<double> rates(mus.size());
  for (size_t q = 0; q < mus.size(); ++q) rates[q] = mus[q].entropy_rate();
  for (size_t k = 0; k < family.size(); ++k) {
    std::vector<SubadditiveTrace> traces = metric_entropy_traces(mus, family[k], horizon, budget);
    for (size_t q = 0; q < mus.size(); ++q)
      t.tails[k][q] = rates[q] - fekete(traces[q]).last_difference;
  }
  return t;
}

}  // namespace punity
