#include "punity/subadditive.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace punity {

SubadditiveTrace::SubadditiveTrace(std::vector<double> values, double tol)
    : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("SubadditiveTrace: empty value list");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("SubadditiveTrace: non-finite value");
  }
  const int N = horizon();
  for (int n = 1; n <= N; ++n) {
    for (int m = n; n + m <= N; ++m) {
      double lhs = values_[n + m - 1];
      double rhs = values_[n - 1] + values_[m - 1];
      if (lhs > rhs + tol) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "SubadditiveTrace: a_%d = %.17g exceeds a_%d + a_%d = %.17g", n + m, lhs, n,
                      m, rhs);
        throw std::invalid_argument(buf);
      }
    }
  }
}

std::vector<double> SubadditiveTrace::ratios() const {
  std::vector<double> r(values_.size());
  for (size_t i = 0; i < values_.size(); ++i) r[i] = values_[i] / static_cast<double>(i + 1);
  return r;
}

std::vector<double> SubadditiveTrace::running_inf() const {
  std::vector<double> r = ratios();
  for (size_t i = 1; i < r.size(); ++i) r[i] = std::min(r[i], r[i - 1]);
  return r;
}

std::vector<double> SubadditiveTrace::differences() const {
  std::vector<double> d(values_.size());
  d[0] = values_[0];
  for (size_t i = 1; i < values_.size(); ++i) d[i] = values_[i] - values_[i - 1];
  return d;
}

LimitEstimate fekete(const SubadditiveTrace& t) {
  LimitEstimate e;
  e.horizon = t.horizon();
  std::vector<double> inf = t.running_inf();
  e.inf_ratio = inf.back();
  e.last_ratio = t.values().back() / static_cast<double>(e.horizon);
  e.last_difference = t.differences().back();
  if (e.horizon >= 2) {
    bool ok = true;
    int steps = std::min(2, e.horizon - 1);
    for (int s = 0; s < steps; ++s) {
      size_t i = inf.size() - 1 - s;
      if (std::fabs(inf[i] - inf[i - 1]) > kConvergenceTol) ok = false;
    }
    e.converged = ok;
  }
  return e;
}

LimsupEstimate tail_ratio_estimate(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("tail_ratio_estimate: empty value list");
  LimsupEstimate e;
  const int N = static_cast<int>(values.size());
  e.horizon = N;
  e.last_ratio = values.back() / static_cast<double>(N);
  int window = (N + 2) / 3;
  double best = e.last_ratio;
  for (int n = N - window + 1; n <= N; ++n) {
    best = std::max(best, values[n - 1] / static_cast<double>(n));
  }
  e.tail_max_ratio = best;
  return e;
}

}  // namespace punity
