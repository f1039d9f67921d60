#include "punity/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "punity/sum.hpp"

namespace punity {

namespace {
constexpr double kOnto = 1e-9;  // branch-width times slope must equal 1 within this
}

IntervalSystem::IntervalSystem(std::vector<double> b, std::vector<double> s)
    : breakpoints_(std::move(b)), slopes_(std::move(s)) {
  if (breakpoints_.size() < 2 || slopes_.size() + 1 != breakpoints_.size())
    throw std::invalid_argument("IntervalSystem: need M+1 breakpoints for M slopes");
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0)
    throw std::invalid_argument("IntervalSystem: breakpoints must run from 0 to 1");
  for (size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    const double w = breakpoints_[i + 1] - breakpoints_[i];
    if (w <= 0.0) throw std::invalid_argument("IntervalSystem: breakpoints must increase");
    if (std::fabs(std::fabs(slopes_[i]) * w - 1.0) > kOnto)
      throw std::invalid_argument("IntervalSystem: each branch must map onto the full circle");
    if (std::fabs(slopes_[i]) <= 1.0)
      throw std::invalid_argument("IntervalSystem: map must be expanding");
  }
}

IntervalSystem IntervalSystem::doubling() { return IntervalSystem({0.0, 0.5, 1.0}, {2.0, 2.0}); }

IntervalSystem IntervalSystem::tent() { return IntervalSystem({0.0, 0.5, 1.0}, {2.0, -2.0}); }

IntervalSystem IntervalSystem::pwl(std::vector<double> breakpoints, std::vector<double> slopes) {
  return IntervalSystem(std::move(breakpoints), std::move(slopes));
}

double IntervalSystem::apply(double x) const {
  x -= std::floor(x);
  size_t i = std::upper_bound(breakpoints_.begin() + 1, breakpoints_.end() - 1, x) -
             breakpoints_.begin() - 1;
  const double s = slopes_[i];
  double y = s > 0.0 ? s * (x - breakpoints_[i]) : 1.0 + s * (x - breakpoints_[i]);
  return y - std::floor(y);
}

double IntervalSystem::max_slope() const {
  double m = 0.0;
  for (double s : slopes_) m = std::max(m, std::fabs(s));
  return m;
}

namespace {

// Values of the two hats covering y, stored as exact complements so their sum
// is exactly one.
struct HatPair {
  int left, right;       // hat indices j and j+1 mod m
  double vleft, vright;  // vleft + vright == 1 exactly
};

HatPair hat_pair(double y, int m) {
  const double t = y * m;
  int j = static_cast<int>(t);
  if (j >= m) j = m - 1;  // guard against t == m from rounding
  double u = t - j;
  HatPair h;
  h.left = j;
  h.right = (j + 1) % m;
  if (u <= 0.5) {
    h.vleft = 1.0 - u;        // in [0.5, 1]
    h.vright = 1.0 - h.vleft;  // exact by Sterbenz
  } else {
    h.vright = u;
    h.vleft = 1.0 - h.vright;
  }
  return h;
}

double eta_modulus(double s) {
  // |eta(x) - eta(y)| <= s (1 - log s) for |x - y| <= s <= 1/e, eta(t) = t log t
  if (s <= 0.0) return 0.0;
  if (s >= std::exp(-1.0)) return s + std::exp(-1.0);
  return s * (1.0 - std::log(s));
}

// Exact range of eta over [a, b] inside [0, 1]; eta dips to -1/e at 1/e.
void eta_range(double a, double b, double& lo, double& hi) {
  const double ea = xlogx(a), eb = xlogx(b);
  lo = std::min(ea, eb);
  hi = std::max(ea, eb);
  const double v = std::exp(-1.0);
  if (a <= v && v <= b) lo = std::min(lo, -v);
}

struct Frame {
  std::vector<int32_t> idx;
  std::vector<double> val;
};

}  // namespace

std::vector<SampledFunction> hat_partition(int m, int grid) {
  if (grid < 8) throw std::invalid_argument("hat_partition: grid too small");
  if (m < 1) throw std::invalid_argument("hat_partition: need at least one member");
  if (m == 1) {
    SampledFunction f;
    f.grid = grid;
    f.values.assign(grid, 1.0);
    f.lipschitz = 0.0;
    return {f};
  }
  if (m > grid / 4) throw std::invalid_argument("hat_partition: supports need at least 4 cells");
  std::vector<SampledFunction> hats(m);
  for (SampledFunction& f : hats) {
    f.grid = grid;
    f.values.assign(grid, 0.0);
    f.lipschitz = m;
  }
  for (int g = 0; g < grid; ++g) {
    const HatPair h = hat_pair(static_cast<double>(g) / grid, m);
    hats[h.left].values[g] = h.vleft;
    hats[h.right].values[g] = h.vright;
  }
  return hats;
}

double partition_sum_residual(const std::vector<SampledFunction>& members) {
  if (members.empty()) throw std::invalid_argument("partition_sum_residual: no members");
  const int grid = members[0].grid;
  double worst = 0.0;
  for (int g = 0; g < grid; ++g) {
    double s = 0.0;
    for (const SampledFunction& f : members) s += f.values[g];
    worst = std::max(worst, std::fabs(s - 1.0));
  }
  return worst;
}

IntervalEntropyReport approx_static_entropies(const IntervalSystem& map, int m, int n, int grid,
                                              EvalBudget* budget) {
  if (n < 1) throw std::invalid_argument("approx_static_entropies: horizon must be >= 1");
  if (grid < 8) throw std::invalid_argument("approx_static_entropies: grid too small");
  IntervalEntropyReport rep;
  if (m == 1) {
    rep.metric = {0.0, 0.0};
    rep.top_count = {1.0, 0.0};
    rep.top_log = {0.0, 0.0};
    rep.members = 1;
    rep.caveat = "trivial partition, exact";
    return rep;
  }
  if (m < 2 || m > grid / 4)
    throw std::invalid_argument("approx_static_entropies: invalid member count");

  const double h = 1.0 / grid;
  const double lam = map.max_slope();

  // orbit positions per level; exact index dynamics when the map permutes the
  // grid (the doubling and tent maps on power-of-two grids)
  bool grid_exact = true;
  std::vector<int32_t> step(grid);
  for (int g = 0; g < grid && grid_exact; ++g) {
    const double y = map.apply(static_cast<double>(g) / grid) * grid;
    const double r = std::round(y);
    if (std::fabs(y - r) > 1e-9) grid_exact = false;
    step[g] = static_cast<int32_t>(r) % grid;
  }
  std::vector<std::vector<double>> orbit(n, std::vector<double>(grid));
  if (grid_exact) {
    std::vector<int32_t> cur(grid);
    for (int g = 0; g < grid; ++g) cur[g] = g;
    for (int j = 0; j < n; ++j) {
      for (int g = 0; g < grid; ++g) orbit[j][g] = static_cast<double>(cur[g]) / grid;
      if (j + 1 < n)
        for (int g = 0; g < grid; ++g) cur[g] = step[cur[g]];
    }
  } else {
    for (int g = 0; g < grid; ++g) orbit[0][g] = static_cast<double>(g) / grid;
    for (int j = 1; j < n; ++j)
      for (int g = 0; g < grid; ++g) orbit[j][g] = map.apply(orbit[j - 1][g]);
  }

  // kink alignment: integer slopes and breakpoints on the grid put every join
  // member breakpoint on a grid point once grid % (m * slope^(n-1)) == 0
  bool aligned = grid_exact;
  for (double s : map.slopes())
    if (std::fabs(s - std::round(s)) > 1e-12) aligned = false;
  for (double b : map.breakpoints())
    if (std::fabs(b * grid - std::round(b * grid)) > 1e-12) aligned = false;
  if (aligned) {
    long long kinks = m;
    for (int j = 0; j + 1 < n && aligned; ++j) {
      kinks *= static_cast<long long>(std::llround(lam));
      if (kinks > grid) aligned = false;
    }
    if (aligned && grid % kinks != 0) aligned = false;
  }

  // first-order Lipschitz bound for a join member and a crude curvature bound
  double l1 = 0.0, pw = 1.0;
  for (int j = 0; j < n; ++j) {
    l1 += m * pw;
    pw *= lam;
  }
  const double lsq = l1 * l1;

  // per-level hat coverage at each grid point
  std::vector<std::vector<HatPair>> cover(n, std::vector<HatPair>(grid));
  for (int j = 0; j < n; ++j)
    for (int g = 0; g < grid; ++g) cover[j][g] = hat_pair(orbit[j][g], m);

  NeumaierSum metric_lo, metric_hi, count_lo, count_hi;
  long long alive = 0;

  std::vector<Frame> frames(n + 1);
  frames[0].idx.resize(grid);
  for (int g = 0; g < grid; ++g) frames[0].idx[g] = g;
  frames[0].val.assign(grid, 1.0);

  const auto leaf = [&](const Frame& f) {
    ++alive;
    NeumaierSum mass_sum, eta_sum;
    double sup = 0.0;
    double r_mean = 0.0, r_eta = 0.0;
    double prev_val = 0.0;
    int32_t prev_idx = std::numeric_limits<int32_t>::min();
    const auto cell = [&](double v0, double v1) {
      const double d = std::fabs(v1 - v0);
      // oscillation of the member over one cell
      const double osc = aligned ? d + h * h * lsq / 8.0 : std::min(d + h * l1, 1.0);
      r_mean += std::min(h * osc, h * h * h / 12.0 * lsq);
      // eta over the cell: curvature form away from the support edge, modulus
      // of continuity at it
      const double vmin = std::max(std::min(v0, v1) - (aligned ? h * h * lsq / 8.0 : h * l1), 0.0);
      double e = h * eta_modulus(osc);
      if (aligned && vmin > osc) {
        const double dphi = d / h + h * lsq / 2.0;
        const double curb = dphi * dphi / vmin + (1.0 - std::log(vmin)) * lsq;
        e = std::min(e, h * h * h / 12.0 * curb);
      }
      r_eta += e;
    };
    for (size_t e = 0; e < f.idx.size(); ++e) {
      const double v = f.val[e];
      mass_sum.add(v);
      eta_sum.add(xlogx(v));
      sup = std::max(sup, v);
      if (f.idx[e] == prev_idx + 1) {
        cell(prev_val, v);
      } else {
        if (prev_idx != std::numeric_limits<int32_t>::min()) cell(prev_val, 0.0);
        cell(0.0, v);
      }
      prev_idx = f.idx[e];
      prev_val = v;
    }
    cell(prev_val, 0.0);
    const double mass = mass_sum.value() * h;
    const double eta_int = eta_sum.value() * h;
    const double a = std::max(mass - r_mean, 0.0);
    const double b = std::min(mass + r_mean, 1.0);
    double elo, ehi;
    eta_range(a, b, elo, ehi);
    metric_lo.add(-ehi);
    metric_lo.add(eta_int - r_eta);
    metric_hi.add(-elo);
    metric_hi.add(eta_int + r_eta);
    const double r_sup = aligned ? h * h * lsq / 8.0 : h * l1 / 2.0;
    count_lo.add(sup);
    count_hi.add(std::min(sup + r_sup, 1.0));
  };

  const auto dfs = [&](auto&& self, int level) -> void {
    const Frame& parent = frames[level];
    if (level == n) {
      leaf(parent);
      return;
    }
    const std::vector<HatPair>& cov = cover[level];
    for (int i = 0; i < m; ++i) {
      if (budget) budget->charge(static_cast<long long>(parent.idx.size()));
      Frame& child = frames[level + 1];
      child.idx.clear();
      child.val.clear();
      for (size_t e = 0; e < parent.idx.size(); ++e) {
        const int32_t g = parent.idx[e];
        const HatPair& hp = cov[g];
        double f = 0.0;
        if (hp.left == i)
          f = hp.vleft;
        else if (hp.right == i)
          f = hp.vright;
        if (f == 0.0) continue;
        const double v = parent.val[e] * f;
        if (v > 0.0) {
          child.idx.push_back(g);
          child.val.push_back(v);
        }
      }
      if (!child.idx.empty()) self(self, level + 1);
    }
  };
  dfs(dfs, 0);

  rep.members = alive;
  rep.metric.value = 0.5 * (metric_lo.value() + metric_hi.value());
  rep.metric.radius = 0.5 * (metric_hi.value() - metric_lo.value());
  rep.top_count.value = 0.5 * (count_lo.value() + count_hi.value());
  rep.top_count.radius = 0.5 * (count_hi.value() - count_lo.value());
  const double llo = std::log(count_lo.value()), lhi = std::log(count_hi.value());
  rep.top_log.value = 0.5 * (llo + lhi);
  rep.top_log.radius = 0.5 * (lhi - llo);
  rep.caveat = aligned ? "second-order bars (grid-aligned kinks)"
                       : "first-order bars (kinks between grid points)";
  return rep;
}

}  // namespace punity
