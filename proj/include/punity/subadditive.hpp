// subadditive.hpp -- finite prefixes of subadditive sequences and the limit
// bookkeeping used by every entropy-style trace.
#pragma once

#include <vector>

namespace punity {

inline constexpr double kSubadditivityTol = 1e-9;
inline constexpr double kConvergenceTol = 1e-6;

struct LimitEstimate {
  // inf ratio over the recorded horizon; for a subadditive sequence this is a
  // certified upper bound of lim a_n/n.
  double inf_ratio = 0.0;
  double last_ratio = 0.0;
  double last_difference = 0.0;  // a_N - a_{N-1}; a_1 when N == 1
  int horizon = 0;
  // inf-ratio increments over the final two steps stayed below kConvergenceTol
  bool converged = false;
};

class SubadditiveTrace {
 public:
  // values = a_1..a_N.  Subadditivity a_{n+m} <= a_n + a_m is checked over all
  // recorded pairs; a violation beyond tol is a hard error, not a warning.
  explicit SubadditiveTrace(std::vector<double> values, double tol = kSubadditivityTol);

  const std::vector<double>& values() const { return values_; }
  int horizon() const { return static_cast<int>(values_.size()); }
  double value(int n) const { return values_[n - 1]; }  // 1-based

  std::vector<double> ratios() const;       // a_n / n
  std::vector<double> running_inf() const;  // prefix min of ratios
  std::vector<double> differences() const;  // a_n - a_{n-1}, first entry a_1

 private:
  std::vector<double> values_;
};

LimitEstimate fekete(const SubadditiveTrace& t);

// For sequences tracked as limsups (no subadditivity certificate): max ratio
// over the trailing ceil(N/3) horizons.
struct LimsupEstimate {
  double tail_max_ratio = 0.0;
  double last_ratio = 0.0;
  int horizon = 0;
};
LimsupEstimate tail_ratio_estimate(const std::vector<double>& values);

}  // namespace punity
