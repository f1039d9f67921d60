#include "punity/structures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace punity {

void TopologicalFamily::validate() const {
  if (labels.empty()) throw std::invalid_argument("family: no points");
  for (const FamilySequence& s : sequences) {
    if (s.members.empty()) throw std::invalid_argument("family: sequence without members");
    if (s.limit < 0 || s.limit >= size())
      throw std::invalid_argument("family: sequence limit out of range");
    for (int m : s.members)
      if (m < 0 || m >= size()) throw std::invalid_argument("family: sequence member out of range");
  }
}

double tail_limsup(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("tail_limsup: empty sequence");
  const size_t n = values.size();
  const size_t window = (n + 2) / 3;
  double best = values[n - window];
  for (size_t i = n - window; i < n; ++i) best = std::max(best, values[i]);
  return best;
}

namespace {

void check_sizes(const TopologicalFamily& family, const PointVector& f, const char* who) {
  family.validate();
  if (static_cast<int>(f.size()) != family.size())
    throw std::invalid_argument(std::string(who) + ": vector size does not match point count");
}

// One Jacobi sweep of sequence raises; returns true when something rose.
bool raise_once(const TopologicalFamily& family, PointVector& f) {
  bool changed = false;
  std::vector<double> buf;
  PointVector next = f;
  for (const FamilySequence& s : family.sequences) {
    buf.clear();
    for (int m : s.members) buf.push_back(f[m]);
    const double cand = tail_limsup(buf);
    if (cand > next[s.limit]) {
      next[s.limit] = cand;
      changed = true;
    }
  }
  f = std::move(next);
  return changed;
}

}  // namespace

PointVector usc_envelope(const TopologicalFamily& family, const PointVector& f) {
  check_sizes(family, f, "usc_envelope");
  PointVector g = f;
  // every raise copies an existing value upward, so this terminates
  while (raise_once(family, g)) {
  }
  return g;
}

PointVector usc_defect(const TopologicalFamily& family, const PointVector& f) {
  PointVector g = usc_envelope(family, f);
  for (size_t i = 0; i < g.size(); ++i) g[i] -= f[i];
  return g;
}

void validate_candidate(const TopologicalFamily& family, const Candidate& c) {
  family.validate();
  if (c.levels.empty()) throw std::invalid_argument("candidate: no levels");
  if (static_cast<int>(c.limit.size()) != family.size())
    throw std::invalid_argument("candidate: limit size does not match point count");
  for (const PointVector& h : c.levels)
    if (static_cast<int>(h.size()) != family.size())
      throw std::invalid_argument("candidate: level size does not match point count");
  for (size_t p = 0; p < c.limit.size(); ++p) {
    if (std::fabs(c.levels.back()[p] - c.limit[p]) > c.tolerance)
      throw std::invalid_argument("candidate: last level strays from the declared limit");
  }
}

WitnessTable almost_increasing_certificate(const std::vector<PointVector>& levels,
                                           std::span<const double> gammas) {
  if (levels.empty()) throw std::invalid_argument("almost_increasing_certificate: no levels");
  const size_t K = levels.size();
  const size_t P = levels[0].size();
  for (const PointVector& h : levels)
    if (h.size() != P) throw std::invalid_argument("almost_increasing_certificate: ragged levels");
  // suffix pointwise minima
  std::vector<PointVector> suffix(K);
  suffix[K - 1] = levels[K - 1];
  for (size_t l = K - 1; l-- > 0;) {
    suffix[l] = suffix[l + 1];
    for (size_t p = 0; p < P; ++p) suffix[l][p] = std::min(suffix[l][p], levels[l][p]);
  }
  WitnessTable table;
  table.gammas.assign(gammas.begin(), gammas.end());
  table.witness.assign(gammas.size(), std::vector<int>(K, -1));
  table.pass = true;
  for (size_t g = 0; g < gammas.size(); ++g)
    for (size_t k = 0; k < K; ++k) {
      for (size_t l = 0; l < K; ++l) {
        bool ok = true;
        for (size_t p = 0; p < P; ++p)
          if (levels[k][p] > suffix[l][p] + gammas[g]) {
            ok = false;
            break;
          }
        if (ok) {
          table.witness[g][k] = static_cast<int>(l);
          break;
        }
      }
      if (table.witness[g][k] < 0) table.pass = false;
    }
  return table;
}

WitnessTable weakly_dominates(const TopologicalFamily& family, const Candidate& dominator,
                              const Candidate& dominated, std::span<const double> gammas) {
  validate_candidate(family, dominator);
  validate_candidate(family, dominated);
  const size_t P = dominated.limit.size();
  WitnessTable table;
  table.gammas.assign(gammas.begin(), gammas.end());
  table.witness.assign(gammas.size(), std::vector<int>(dominated.levels.size(), -1));
  table.pass = true;
  for (size_t g = 0; g < gammas.size(); ++g)
    for (size_t k = 0; k < dominated.levels.size(); ++k) {
      for (size_t l = 0; l < dominator.levels.size(); ++l) {
        bool ok = true;
        for (size_t p = 0; p < P; ++p)
          if (dominated.levels[k][p] > dominator.levels[l][p] + gammas[g]) {
            ok = false;
            break;
          }
        if (ok) {
          table.witness[g][k] = static_cast<int>(l);
          break;
        }
      }
      if (table.witness[g][k] < 0) table.pass = false;
    }
  return table;
}

namespace {

std::vector<PointVector> candidate_tails(const Candidate& c) {
  std::vector<PointVector> theta(c.levels.size(), PointVector(c.limit.size()));
  for (size_t k = 0; k < c.levels.size(); ++k)
    for (size_t p = 0; p < c.limit.size(); ++p) theta[k][p] = c.limit[p] - c.levels[k][p];
  return theta;
}

}  // namespace

TransfiniteTrace transfinite_sequence(const TopologicalFamily& family, const Candidate& c,
                                      int max_steps, double fix_tol) {
  validate_candidate(family, c);
  std::vector<PointVector> theta = candidate_tails(c);
  const PointVector& last_tail = theta.back();

  TransfiniteTrace trace;
  trace.tails_certified = true;
  for (size_t p = 0; p < last_tail.size(); ++p) {
    if (std::fabs(last_tail[p]) > c.tolerance) trace.tails_certified = false;
    for (const PointVector& t : theta)
      if (last_tail[p] > t[p] + c.tolerance) trace.tails_certified = false;
  }

  PointVector u(family.size(), 0.0);
  trace.u.push_back(u);
  for (int step = 0; step < max_steps; ++step) {
    PointVector w = u;
    for (size_t p = 0; p < w.size(); ++p) w[p] += last_tail[p];
    const PointVector closed = usc_envelope(family, w);
    // point term snapped to the declared limit of the tails, i.e. u itself
    PointVector next = u;
    std::vector<double> buf;
    for (const FamilySequence& s : family.sequences) {
      buf.clear();
      for (int m : s.members) buf.push_back(closed[m]);
      next[s.limit] = std::max(next[s.limit], tail_limsup(buf));
    }
    double delta = 0.0;
    for (size_t p = 0; p < next.size(); ++p) delta = std::max(delta, std::fabs(next[p] - u[p]));
    trace.u.push_back(next);
    if (delta <= fix_tol) {
      trace.order = step;
      trace.stabilized = true;
      break;
    }
    u = std::move(next);
  }
  return trace;
}

SuperenvelopeVerdict check_superenvelope(const TopologicalFamily& family, const Candidate& c,
                                         const PointVector& envelope, double tol) {
  validate_candidate(family, c);
  if (envelope.size() != c.limit.size())
    throw std::invalid_argument("check_superenvelope: envelope size mismatch");
  SuperenvelopeVerdict v;
  v.dominates = true;
  for (size_t p = 0; p < envelope.size(); ++p)
    if (envelope[p] < c.limit[p] - tol) v.dominates = false;
  v.defect_sup.reserve(c.levels.size());
  for (const PointVector& h : c.levels) {
    PointVector diff(envelope.size());
    for (size_t p = 0; p < envelope.size(); ++p) diff[p] = envelope[p] - h[p];
    PointVector defect = usc_defect(family, diff);
    double sup = 0.0;
    for (double d : defect) sup = std::max(sup, d);
    v.defect_sup.push_back(sup);
  }
  v.defect_vanishes = v.defect_sup.back() <= tol;
  v.pass = v.dominates && v.defect_vanishes;
  return v;
}

TailVariationalReport tail_variational_check(const TopologicalFamily& family, const Candidate& c,
                                             double reference, double tol) {
  TransfiniteTrace trace = transfinite_sequence(family, c, /*max_steps=*/1);
  TailVariationalReport rep;
  rep.reference = reference;
  const PointVector& u1 = trace.u.back();
  for (double v : u1) rep.u1_peak = std::max(rep.u1_peak, v);
  rep.pass = std::fabs(rep.u1_peak - reference) <= tol;
  return rep;
}

}  // namespace punity
