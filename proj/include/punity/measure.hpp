// measure.hpp -- shift-invariant measures given by cylinder weights, and
// conditioning by a nonnegative observable.
#pragma once

#include "punity/subshift.hpp"

namespace punity {

inline constexpr double kStochasticTol = 1e-12;
// Residual target for the stationary vector solve.
inline constexpr double kStationaryTol = 1e-14;

class ShiftMeasure {
 public:
  enum class Kind { Bernoulli, Markov };

  // Product measure; only defined on full shifts.
  static ShiftMeasure bernoulli(SystemPtr system, std::vector<double> p);
  // Stationary Markov chain.  P must be row stochastic and supported on
  // allowed transitions.  If pi is given it is verified (pi P = pi within
  // kStochasticTol); otherwise it is computed by damped power iteration to a
  // kStationaryTol residual.
  static ShiftMeasure markov(SystemPtr system, std::vector<std::vector<double>> P,
                             std::vector<double> pi = {});

  Kind kind() const { return kind_; }
  const SystemPtr& system() const { return system_; }
  // Stationary symbol distribution (the parameter vector for Bernoulli).
  const std::vector<double>& stationary() const { return pi_; }
  double transition(int i, int j) const { return P_[static_cast<size_t>(i) * alphabet_ + j]; }

  // Weight of the cylinder of w; 0 for words leaving the transition relation.
  double cylinder_weight(std::span<const int> w) const;
  // Weights of every admissible word of `depth`, in WordSet order.
  std::vector<double> word_weights(int depth) const;

  double integrate(const LocallyConstantFunction& f) const;

  // Classical entropy of the process (symbol entropy for Bernoulli,
  // -sum pi_i P_ij log P_ij for Markov).
  double entropy_rate() const;

 private:
  ShiftMeasure(Kind kind, SystemPtr system, std::vector<double> P, std::vector<double> pi);

  Kind kind_;
  SystemPtr system_;
  int alphabet_;
  std::vector<double> P_;   // row-major transition kernel (rows of p for Bernoulli)
  std::vector<double> pi_;
};

// mu_psi(f) = mu(f psi) / mu(psi).  Construction throws std::domain_error when
// mu(psi) vanishes; callers owning a zero-mass branch apply the 0 * H = 0
// convention themselves.
class ConditionalMeasure {
 public:
  ConditionalMeasure(const ShiftMeasure& base, const LocallyConstantFunction& psi);

  double mass() const { return mass_; }
  double integrate(const LocallyConstantFunction& f) const;

 private:
  const ShiftMeasure* base_;
  LocallyConstantFunction psi_;
  double mass_;
};

}  // namespace punity
