// interval.hpp -- grid-based approximation of the entropy quantities for
// piecewise-linear expanding circle maps.  Partitions are triangular hat
// functions; integrals and suprema are evaluated on a uniform grid with
// certified interval radii, so every reported value is an enclosure, not a
// point estimate.
#pragma once

#include <string>
#include <vector>

#include "punity/budget.hpp"

namespace punity {

// Full-branch piecewise-linear map of [0,1): branch i carries [b_i, b_{i+1})
// onto [0,1) with slope s_i (rising from 0 for s_i > 0, falling from 1 for
// s_i < 0).  Each |s_i| must equal the reciprocal branch width and exceed 1.
// Full branches make Lebesgue measure invariant, which is the density used
// throughout.
class IntervalSystem {
 public:
  static IntervalSystem doubling();  // slopes (2, 2)
  static IntervalSystem tent();      // slopes (2, -2)
  static IntervalSystem pwl(std::vector<double> breakpoints, std::vector<double> slopes);

  double apply(double x) const;
  int branch_count() const { return static_cast<int>(slopes_.size()); }
  double max_slope() const;  // max |s_i|
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& slopes() const { return slopes_; }

 private:
  IntervalSystem(std::vector<double> b, std::vector<double> s);
  std::vector<double> breakpoints_, slopes_;
};

struct SampledFunction {
  int grid = 0;
  std::vector<double> values;  // at g / grid, g = 0..grid-1
  double lipschitz = 0.0;
};

// m >= 2: circle hats centered at j/m with support width 2/m; adjacent values
// at each grid point are stored as exact complements, so the pointwise sum is
// exactly one with no tolerance.  m == 1 denotes the trivial partition {1}.
// Requires m <= grid/4 so supports stay well resolved.
std::vector<SampledFunction> hat_partition(int m, int grid);
// Max over grid points of |sum - 1|; zero for hat partitions by construction.
double partition_sum_residual(const std::vector<SampledFunction>& members);

struct ValueInterval {
  double value = 0.0;
  double radius = 0.0;
  double lower() const { return value - radius; }
  double upper() const { return value + radius; }
};

struct IntervalEntropyReport {
  ValueInterval metric;     // static metric entropy of the n-fold join
  ValueInterval top_count;  // sum of member suprema
  ValueInterval top_log;    // log of the count
  long long members = 0;    // join members with nonempty grid support
  std::string caveat;       // which error model produced the radii
};

// Joins the hat partition with itself n times along the map and evaluates the
// static quantities on the grid.  When every breakpoint of every join member
// lands on a grid point (integer slopes, grid divisible by m * slope^(n-1))
// the radii come from second-order bounds; otherwise first-order bounds are
// used and flagged in the caveat.
IntervalEntropyReport approx_static_entropies(const IntervalSystem& map, int m, int n, int grid,
                                              EvalBudget* budget = nullptr);

}  // namespace punity
