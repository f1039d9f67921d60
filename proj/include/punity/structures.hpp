// structures.hpp -- calculus on finite families of nonnegative functions over
// a finite point set with declared convergent sequences: upper semicontinuous
// envelopes, almost-increasing certificates, weak domination, transfinite
// repair sequences and superenvelope checks.  Everything here is exact finite
// bookkeeping; limits along declared sequences are read from trailing windows.
#pragma once

#include <span>
#include <string>
#include <vector>

namespace punity {

using PointVector = std::vector<double>;

// A declared convergent sequence: ordered member points and their limit point.
struct FamilySequence {
  std::vector<int> members;
  int limit = -1;
};

struct TopologicalFamily {
  std::vector<std::string> labels;
  std::vector<FamilySequence> sequences;

  int size() const { return static_cast<int>(labels.size()); }
  void validate() const;  // throws on out-of-range indices or empty sequences
};

// Surrogate for a limsup along a declared sequence: max over the trailing
// ceil(len/3) member values.
double tail_limsup(std::span<const double> values);

// Least pointwise-larger vector closed under sequence raises: each limit point
// dominates the tail limsup of its sequences.  Iterated to an exact fixpoint,
// so applying it twice changes nothing and chained sequences propagate.
PointVector usc_envelope(const TopologicalFamily& family, const PointVector& f);
PointVector usc_defect(const TopologicalFamily& family, const PointVector& f);

// A level ladder h_1..h_K with its declared pointwise limit.  The last level
// must sit within `tolerance` of the limit at every point.
struct Candidate {
  std::vector<PointVector> levels;
  PointVector limit;
  double tolerance = 0.05;
};
void validate_candidate(const TopologicalFamily& family, const Candidate& c);

// Certificates quantified per (gamma, level): witness index or -1.
struct WitnessTable {
  std::vector<double> gammas;
  std::vector<std::vector<int>> witness;  // [gamma][level]
  bool pass = false;
};

// For each gamma and k, the smallest L such that h_k <= h_l + gamma pointwise
// for every l >= L.
WitnessTable almost_increasing_certificate(const std::vector<PointVector>& levels,
                                           std::span<const double> gammas);

// For each gamma and level k of `dominated`, the smallest l with
// dominated.h_k <= dominator.h_l + gamma pointwise.
WitnessTable weakly_dominates(const TopologicalFamily& family, const Candidate& dominator,
                              const Candidate& dominated, std::span<const double> gammas);

// Transfinite repair sequence u_0 = 0, u_{alpha+1} = the sequence raises of
// the envelope of u_alpha + theta_K (theta_k = limit - h_k; the point term is
// snapped to the declared limit, which the candidate tolerance justifies).
// order is the least alpha with u_{alpha+1} = u_alpha, or -1 if the cap was
// hit first.
struct TransfiniteTrace {
  std::vector<PointVector> u;  // u_0 .. u_{order+1} (or the capped prefix)
  int order = -1;
  bool stabilized = false;
  // last tail within tolerance of every earlier tail and of zero, pointwise
  bool tails_certified = false;
};
TransfiniteTrace transfinite_sequence(const TopologicalFamily& family, const Candidate& c,
                                      int max_steps = 8, double fix_tol = 1e-12);

// E is a superenvelope when it dominates the limit and the defect of E - h_k
// dies out along the ladder.
struct SuperenvelopeVerdict {
  bool dominates = false;
  std::vector<double> defect_sup;  // per level
  bool defect_vanishes = false;
  bool pass = false;
};
SuperenvelopeVerdict check_superenvelope(const TopologicalFamily& family, const Candidate& c,
                                         const PointVector& envelope, double tol);

// Compares the peak of u_1 with a reference tail entropy value.
struct TailVariationalReport {
  double u1_peak = 0.0;
  double reference = 0.0;
  bool pass = false;
};
TailVariationalReport tail_variational_check(const TopologicalFamily& family, const Candidate& c,
                                             double reference, double tol);

}  // namespace punity
