// test_acceptance.cpp -- end-to-end acceptance gate.  Each numbered check
// prints exactly one [PASS]/[FAIL] line and the process exits nonzero when
// any of them fails.  Tolerances, horizons and runtime caps are pinned here
// on purpose; loosening them is a library regression, not a test tweak.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "punity/conditional.hpp"
#include "punity/entropy.hpp"
#include "punity/interval.hpp"
#include "punity/measure.hpp"
#include "punity/partition.hpp"
#include "punity/structures.hpp"
#include "punity/subshift.hpp"

namespace {

using namespace punity;
using Clock = std::chrono::steady_clock;

const double kLog2 = std::log(2.0);

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Verdict {
  bool ok = false;
  std::string detail;
};

// 01: Bernoulli(1/2,1/2) on the full 2-shift with depth-1 cylinder indicators
// has a_n/n equal to log 2 at every horizon.
Verdict check_full_shift_ratios() {
  const Clock::time_point t0 = Clock::now();
  SystemPtr sys = SubshiftSystem::full_shift(2);
  ShiftMeasure mu = ShiftMeasure::bernoulli(sys, {0.5, 0.5});
  SubadditiveTrace tr = metric_entropy_trace(mu, make_cylinder_partition(sys, 1), 15);
  double err = 0.0;
  for (double r : tr.ratios()) err = std::max(err, std::fabs(r - kLog2));
  const double secs = seconds_since(t0);
  return {err <= 1e-12 && secs < 1.0,
          "ratio err " + num(err) + " vs log 2, n <= 15, " + num(secs) + " s (cap 1 s)"};
}

// 02: the golden-mean Markov measure with P = [[1/2,1/2],[1,0]] has entropy
// increments a_n - a_{n-1} equal to (2/3) log 2 from n = 2 on.
Verdict check_markov_differences() {
  SystemPtr sys = SubshiftSystem::golden_mean();
  ShiftMeasure mu = ShiftMeasure::markov(sys, {{0.5, 0.5}, {1.0, 0.0}});
  SubadditiveTrace tr = metric_entropy_trace(mu, make_cylinder_partition(sys, 1), 15);
  const double rate = (2.0 / 3.0) * kLog2;
  std::vector<double> d = tr.differences();
  double err = 0.0;
  for (size_t i = 1; i < d.size(); ++i) err = std::max(err, std::fabs(d[i] - rate));
  return {err <= 1e-9, "increment err " + num(err) + " vs (2/3) log 2, n = 2..15"};
}

// 03: golden-mean topological entropy from word counts lands near the log of
// the golden ratio.
Verdict check_golden_mean_topological() {
  const Clock::time_point t0 = Clock::now();
  SystemPtr sys = SubshiftSystem::golden_mean();
  LimitEstimate est = local_topological_entropy(make_cylinder_partition(sys, 1), 20);
  const double target = std::log((1.0 + std::sqrt(5.0)) / 2.0);
  const double err = std::fabs(est.inf_ratio - target);
  const double secs = seconds_since(t0);
  return {err <= 0.02 && secs < 5.0,
          "inf ratio off by " + num(err) + " at N = 20, " + num(secs) + " s (cap 5 s)"};
}

// 04: pressure of the symbol-1 indicator potential on the full 2-shift; every
// ratio equals log(1 + e).
Verdict check_full_shift_pressure() {
  SystemPtr sys = SubshiftSystem::full_shift(2);
  Potential g = LocallyConstantFunction::cylinder_indicator(sys, Word{{1}});
  SubadditiveTrace tr = pressure_trace(g, make_cylinder_partition(sys, 1), 10);
  const double target = std::log(1.0 + std::exp(1.0));
  double err = 0.0;
  for (double r : tr.ratios()) err = std::max(err, std::fabs(r - target));
  return {err <= 1e-9, "ratio err " + num(err) + " vs log(1+e), n <= 10"};
}

// 05: static identity suite on randomized smoothed partitions: the chain rule,
// its conditional form, monotonicity under finer conditioning, nonnegativity,
// and the bound by the log of the topological count.
Verdict check_static_identities() {
  SystemPtr sys = SubshiftSystem::full_shift(2);
  const std::vector<ShiftMeasure> mus = {
      ShiftMeasure::bernoulli(sys, {0.5, 0.5}),
      ShiftMeasure::bernoulli(sys, {0.2, 0.8}),
      ShiftMeasure::markov(sys, {{0.3, 0.7}, {0.6, 0.4}})};
  std::mt19937 rng(20260823u);
  std::uniform_int_distribution<int> depth_dist(1, 3);
  std::uniform_real_distribution<double> lambda_dist(0.1, 0.9);
  const auto draw = [&]() {
    return make_smoothed_partition(sys, depth_dist(rng), lambda_dist(rng));
  };
  double identity_err = 0.0, mono_slack = 0.0, neg = 0.0, bound_slack = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const PartitionOfUnity phi = draw(), phi2 = draw(), psi = draw(), psi2 = draw();
    const PartitionOfUnity phi_psi = join(phi, psi);
    for (const ShiftMeasure& mu : mus) {
      const double chain = static_metric_entropy(mu, phi_psi) -
                           static_metric_entropy(mu, psi) -
                           conditional_static_entropy(mu, phi, psi);
      const double cond_chain = conditional_static_entropy(mu, join(phi, phi2), psi) -
                                conditional_static_entropy(mu, phi, psi) -
                                conditional_static_entropy(mu, phi2, phi_psi);
      identity_err = std::max({identity_err, std::fabs(chain), std::fabs(cond_chain)});
      mono_slack = std::max(mono_slack, conditional_static_entropy(mu, phi, join(psi, psi2)) -
                                            conditional_static_entropy(mu, phi, psi));
      neg = std::min({neg, static_metric_entropy(mu, phi),
                      conditional_static_entropy(mu, phi, psi)});
      bound_slack = std::max(bound_slack, static_metric_entropy(mu, phi) -
                                              std::log(static_topological_entropy(phi)));
      bound_slack = std::max(bound_slack, static_metric_entropy(mu, phi_psi) -
                                              std::log(static_topological_entropy(phi_psi)));
    }
  }
  const bool ok = identity_err <= 1e-9 && mono_slack <= 1e-9 && neg >= -1e-12 &&
                  bound_slack <= 1e-9;
  return {ok, "identity err " + num(identity_err) + ", count-bound slack " + num(bound_slack) +
                  ", 100 trials x 3 measures"};
}

// brute-force companion for 06: every vertex of the box-constrained simplex
// slice has at most one coordinate strictly between its bounds.
double brute_box_value(const std::vector<double>& c, const std::vector<double>& lo,
                       const std::vector<double>& hi) {
  const int d = static_cast<int>(c.size());
  double best = -1e300;
  for (int f = -1; f < d; ++f) {
    for (int mask = 0; mask < (1 << d); ++mask) {
      if (f >= 0 && ((mask >> f) & 1)) continue;
      double sum = 0.0, val = 0.0;
      for (int i = 0; i < d; ++i) {
        if (i == f) continue;
        const double a = ((mask >> i) & 1) ? hi[i] : lo[i];
        sum += a;
        val += c[i] * a;
      }
      if (f < 0) {
        if (std::fabs(sum - 1.0) <= 1e-14) best = std::max(best, val);
      } else {
        const double a = 1.0 - sum;
        if (a >= lo[f] - 1e-14 && a <= hi[f] + 1e-14) best = std::max(best, val + c[f] * a);
      }
    }
  }
  return best;
}

// 06: greedy box-simplex maximizer agrees with vertex enumeration.
Verdict check_box_simplex() {
  std::mt19937 rng(7u);
  std::uniform_int_distribution<int> dim_dist(1, 6);
  std::uniform_real_distribution<double> coef_dist(-2.0, 2.0), unit(0.0, 1.0);
  double err = 0.0;
  for (int inst = 0; inst < 200; ++inst) {
    int d = 0;
    std::vector<double> c, lo, hi;
    for (;;) {
      d = dim_dist(rng);
      c.assign(d, 0.0);
      lo.assign(d, 0.0);
      hi.assign(d, 0.0);
      double sl = 0.0, sh = 0.0;
      for (int i = 0; i < d; ++i) {
        c[i] = coef_dist(rng);
        if (rng() % 3 == 0) c[i] = std::round(c[i]);  // integer coefficients force ties
        lo[i] = unit(rng) / d;
        hi[i] = lo[i] + 2.0 * unit(rng) / d;
        sl += lo[i];
        sh += hi[i];
      }
      if (sl <= 1.0 && sh >= 1.0) break;
    }
    const BoxSimplexSolution sol = box_simplex_maximize(c, lo, hi);
    err = std::max(err, std::fabs(sol.value - brute_box_value(c, lo, hi)));
    double sum = 0.0, dot = 0.0;
    for (int i = 0; i < d; ++i) {
      sum += sol.argmax[i];
      dot += c[i] * sol.argmax[i];
      if (sol.argmax[i] < lo[i] - 1e-12 || sol.argmax[i] > hi[i] + 1e-12) err = 1.0;
    }
    err = std::max({err, std::fabs(sum - 1.0), std::fabs(dot - sol.value)});
  }
  return {err <= 1e-12, "max discrepancy " + num(err) + " over 200 instances, dim <= 6"};
}

// 07: conditional counts of a coarse cylinder partition given a finer one
// vanish identically, and the metric tails of a smoothed golden-mean family
// are small by depth 4.
Verdict check_subshift_tails() {
  SystemPtr sys = SubshiftSystem::golden_mean();
  bool exact_zero = true;
  for (int a = 1; a <= 6; ++a)
    for (int b = a; b <= 6; ++b) {
      const std::vector<double> vals = conditional_entropy_values(
          make_cylinder_partition(sys, a), make_cylinder_partition(sys, b), 6);
      for (double v : vals) exact_zero = exact_zero && v == 0.0;
    }
  const std::vector<ShiftMeasure> mus = {
      ShiftMeasure::markov(sys, {{0.5, 0.5}, {1.0, 0.0}}),
      ShiftMeasure::markov(sys, {{0.7, 0.3}, {1.0, 0.0}}),
      ShiftMeasure::markov(sys, {{0.2, 0.8}, {1.0, 0.0}})};
  std::vector<PartitionOfUnity> family;
  for (int k = 1; k <= 4; ++k) family.push_back(make_smoothed_partition(sys, k, 0.25));
  EvalBudget budget(4'000'000'000LL);
  const MetricTailTable table = metric_tail_table(mus, family, 8, &budget);
  double worst = -1e300;
  for (double t : table.tails[3]) worst = std::max(worst, t);
  return {exact_zero && worst <= 0.05,
          std::string("conditional zeros ") + (exact_zero ? "exact" : "BROKEN") +
              ", depth-4 tail max " + num(worst) + " (cap 0.05) at N = 8"};
}

// 08: splitting every member into k equal copies leaves each conditional
// count unchanged, per horizon.
Verdict check_copy_splitting() {
  SystemPtr sys = SubshiftSystem::golden_mean();
  const PartitionOfUnity phi = make_smoothed_partition(sys, 1, 0.25);
  const PartitionOfUnity psi = make_cylinder_partition(sys, 2);
  const std::vector<double> base = conditional_entropy_values(phi, psi, 6);
  double err = 0.0;
  for (int k = 2; k <= 3; ++k) {
    const std::vector<double> split = conditional_entropy_values(scale_copies(phi, k), psi, 6);
    for (size_t n = 0; n < base.size(); ++n) err = std::max(err, std::fabs(split[n] - base[n]));
  }
  return {err <= 1e-9, "per-horizon err " + num(err) + " for 2 and 3 copies, n <= 6"};
}

// staircase ladder on points q_1..q_I below a limit point p: level k leaves a
// unit tail at q_i exactly when i >= k, and no tail at p.
void staircase_ladder(int I, int K, TopologicalFamily& fam, Candidate& cand) {
  fam.labels.clear();
  for (int i = 1; i <= I; ++i) fam.labels.push_back("q" + std::to_string(i));
  fam.labels.push_back("p");
  FamilySequence seq;
  for (int i = 0; i < I; ++i) seq.members.push_back(i);
  seq.limit = I;
  fam.sequences = {seq};
  cand.limit.assign(I + 1, 1.0);
  cand.tolerance = 1.0;
  cand.levels.clear();
  for (int k = 1; k <= K; ++k) {
    PointVector h(I + 1, 1.0);
    for (int i = 0; i < I; ++i)
      if (i + 1 >= k) h[i] = 0.0;
    cand.levels.push_back(h);
  }
}

// 09: transfinite repair on hand-checkable ladders: the one-level staircase
// stabilizes after one step with a unit bump at the limit point, the two-level
// version needs a second step, and the repaired limit is the least usable
// superenvelope.
Verdict check_repair_hand_cases() {
  TopologicalFamily fam;
  Candidate cand;
  staircase_ladder(6, 4, fam, cand);
  const TransfiniteTrace tr = transfinite_sequence(fam, cand);
  double err = 0.0;
  bool shape = tr.order == 1 && tr.stabilized && tr.u.size() == 3;
  if (shape) {
    for (int i = 0; i < 6; ++i) err = std::max(err, std::fabs(tr.u[1][i]));
    err = std::max(err, std::fabs(tr.u[1][6] - 1.0));
    for (int i = 0; i <= 6; ++i) err = std::max(err, std::fabs(tr.u[2][i] - tr.u[1][i]));
  }

  // the declared limit alone is not a superenvelope, limit + repair is
  const PointVector ones(7, 1.0);
  const SuperenvelopeVerdict bare = check_superenvelope(fam, cand, ones, 1e-12);
  PointVector repaired = ones;
  if (shape)
    for (int i = 0; i <= 6; ++i) repaired[i] += tr.u[1][i];
  const SuperenvelopeVerdict fixed = check_superenvelope(fam, cand, repaired, 1e-12);
  const bool envelopes = !bare.pass && bare.dominates &&
                         std::fabs(bare.defect_sup.back() - 1.0) <= 1e-12 && fixed.pass;
  const TailVariationalReport tv = tail_variational_check(fam, cand, 1.0, 1e-12);

  // two levels of sequences: rows q_{i1}..q_{i6} -> q_i -> p, staircase tails
  // in both indices; the bump reaches 2 at the top and takes two steps
  TopologicalFamily fam2;
  const int I = 6, J = 6, K = 4, top = I * J + I;
  for (int i = 1; i <= I; ++i)
    for (int j = 1; j <= J; ++j)
      fam2.labels.push_back("q" + std::to_string(i) + "_" + std::to_string(j));
  for (int i = 1; i <= I; ++i) fam2.labels.push_back("q" + std::to_string(i));
  fam2.labels.push_back("p");
  for (int i = 0; i < I; ++i) {
    FamilySequence row;
    for (int j = 0; j < J; ++j) row.members.push_back(i * J + j);
    row.limit = I * J + i;
    fam2.sequences.push_back(row);
  }
  FamilySequence summit;
  for (int i = 0; i < I; ++i) summit.members.push_back(I * J + i);
  summit.limit = top;
  fam2.sequences.push_back(summit);
  Candidate cand2;
  cand2.limit.assign(top + 1, 1.0);
  cand2.tolerance = 1.0;
  for (int k = 1; k <= K; ++k) {
    PointVector h(top + 1, 1.0);
    for (int i = 0; i < I; ++i)
      for (int j = 0; j < J; ++j)
        if (j + 1 >= k) h[i * J + j] = 0.0;
    for (int i = 0; i < I; ++i)
      if (i + 1 >= k) h[I * J + i] = 0.0;
    cand2.levels.push_back(h);
  }
  const TransfiniteTrace tr2 = transfinite_sequence(fam2, cand2);
  const bool shape2 = tr2.order == 2 && tr2.stabilized && tr2.u.size() == 4;
  if (shape2) {
    err = std::max(err, std::fabs(tr2.u[1][top] - 1.0));
    err = std::max(err, std::fabs(tr2.u[2][top] - 2.0));
    for (int i = 0; i < I; ++i) err = std::max(err, std::fabs(tr2.u[1][I * J + i] - 1.0));
  }
  const bool ok = shape && shape2 && envelopes && tv.pass && err <= 1e-12;
  return {ok, "orders " + std::to_string(tr.order) + "/" + std::to_string(tr2.order) +
                  ", bump err " + num(err) + ", envelope verdicts " +
                  (envelopes ? "as expected" : "WRONG")};
}

// 10: the per-level smoothed partitions and their running joins give weakly
// equivalent level ladders: mutual domination at small gamma and identical
// repair traces.
Verdict check_candidate_equivalence() {
  SystemPtr sys = SubshiftSystem::full_shift(2);
  const std::vector<ShiftMeasure> mus = {
      ShiftMeasure::bernoulli(sys, {0.5, 0.5}),
      ShiftMeasure::bernoulli(sys, {0.25, 0.75}),
      ShiftMeasure::markov(sys, {{0.4, 0.6}, {0.55, 0.45}})};
  // deliberately non-monotone smoothing schedule: entropy dips at the third
  // and fifth level while the joins can only refine
  const std::vector<double> lambdas = {0.5, 0.125, 0.25, 0.03125, 0.0625, 0.0078125};
  EvalBudget budget(4'000'000'000LL);
  const int horizon = 4;
  Candidate plain, joined;
  plain.tolerance = joined.tolerance = 0.08;
  for (const ShiftMeasure& mu : mus) {
    plain.limit.push_back(mu.entropy_rate());
    joined.limit.push_back(mu.entropy_rate());
  }
  PartitionOfUnity folded = make_smoothed_partition(sys, 1, lambdas[0]);
  for (size_t k = 0; k < lambdas.size(); ++k) {
    const PartitionOfUnity psi = make_smoothed_partition(sys, 1, lambdas[k]);
    if (k > 0) folded = join(folded, psi);
    const std::vector<SubadditiveTrace> ta = metric_entropy_traces(mus, psi, horizon, &budget);
    const std::vector<SubadditiveTrace> tb =
        metric_entropy_traces(mus, folded, horizon, &budget);
    PointVector la, lb;
    for (size_t q = 0; q < mus.size(); ++q) {
      la.push_back(ta[q].differences().back());
      lb.push_back(tb[q].differences().back());
    }
    plain.levels.push_back(la);
    joined.levels.push_back(lb);
  }
  TopologicalFamily fam;
  fam.labels = {"mu1", "mu2", "mu3"};  // isolated points, no declared sequences
  validate_candidate(fam, plain);
  validate_candidate(fam, joined);
  const std::vector<double> gammas = {0.05, 0.1};
  const WitnessTable over = weakly_dominates(fam, plain, joined, gammas);
  const WitnessTable under = weakly_dominates(fam, joined, plain, gammas);
  const TransfiniteTrace tp = transfinite_sequence(fam, plain);
  const TransfiniteTrace tj = transfinite_sequence(fam, joined);
  double trace_err = 0.0;
  bool same = tp.order == tj.order && tp.u.size() == tj.u.size();
  if (same)
    for (size_t r = 0; r < tp.u.size(); ++r)
      for (size_t q = 0; q < tp.u[r].size(); ++q)
        trace_err = std::max(trace_err, std::fabs(tp.u[r][q] - tj.u[r][q]));
  const bool ok = over.pass && under.pass && same && trace_err <= 1e-9;
  return {ok, std::string("mutual domination ") +
                  (over.pass && under.pass ? "holds" : "FAILS") +
                  " at gamma 0.05/0.1, trace diff " + num(trace_err)};
}

// 11: grid backend for the doubling map with eight hats: the entropy
// increment stays near log 2 even after widening by the certified radii, and
// the metric value never exceeds the log of the count once bars are included.
Verdict check_interval_backend() {
  const IntervalSystem map = IntervalSystem::doubling();
  std::vector<IntervalEntropyReport> reps;
  for (int n = 1; n <= 6; ++n) reps.push_back(approx_static_entropies(map, 8, n, 32768));
  const double diff = reps[5].metric.value - reps[4].metric.value;
  const double rad = reps[5].metric.radius + reps[4].metric.radius;
  const bool rate_ok = std::fabs(diff - kLog2) + rad <= 0.1;
  bool bound_ok = true;
  const auto bound_holds = [&](const IntervalEntropyReport& r) {
    return r.metric.value <= r.top_log.value + 1e-12 &&
           r.metric.lower() <= r.top_log.upper() + 1e-12;
  };
  for (const IntervalEntropyReport& r : reps) bound_ok = bound_ok && bound_holds(r);
  for (int n = 1; n <= 3; ++n)  // off-grid kinks switch to first-order bars
    bound_ok = bound_ok && bound_holds(approx_static_entropies(map, 8, n, 1000));
  return {rate_ok && bound_ok, "increment " + num(diff) + " +/- " + num(rad) +
                                   " vs log 2 (cap 0.1), count bound " +
                                   (bound_ok ? "holds" : "FAILS")};
}

struct Entry {
  const char* name;
  Verdict (*run)();
};

}  // namespace

int main() {
  const Entry entries[] = {
      {"full-shift Bernoulli entropy ratios", &check_full_shift_ratios},
      {"Markov entropy increments", &check_markov_differences},
      {"golden-mean topological entropy", &check_golden_mean_topological},
      {"full-shift pressure ratios", &check_full_shift_pressure},
      {"static entropy identity suite", &check_static_identities},
      {"box-simplex greedy vs enumeration", &check_box_simplex},
      {"subshift tail entropies", &check_subshift_tails},
      {"copy-splitting invariance", &check_copy_splitting},
      {"transfinite repair hand cases", &check_repair_hand_cases},
      {"weak equivalence of level ladders", &check_candidate_equivalence},
      {"interval backend doubling map", &check_interval_backend},
  };
  const int total = static_cast<int>(sizeof entries / sizeof entries[0]);
  int passed = 0;
  for (int i = 0; i < total; ++i) {
    Verdict v;
    try {
      v = entries[i].run();
    } catch (const std::exception& ex) {
      v = {false, std::string("exception: ") + ex.what()};
    }
    std::printf("[%s] %02d %-36s %s\n", v.ok ? "PASS" : "FAIL", i + 1, entries[i].name,
                v.detail.c_str());
    std::fflush(stdout);
    if (v.ok) ++passed;
  }
  std::printf("acceptance: %d/%d checks passed\n", passed, total);
  return passed == total ? 0 : 1;
}
