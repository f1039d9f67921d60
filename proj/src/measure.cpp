#include "punity/measure.hpp"

#include <cmath>

#include "punity/sum.hpp"

namespace punity {

namespace {

void check_rows(const std::vector<double>& P, int n) {
  for (int i = 0; i < n; ++i) {
    NeumaierSum row;
    for (int j = 0; j < n; ++j) {
      double v = P[static_cast<size_t>(i) * n + j];
      if (v < 0.0) throw std::invalid_argument("negative transition probability");
      row.add(v);
    }
    if (std::abs(row.value() - 1.0) > kStochasticTol)
      throw std::invalid_argument("transition row does not sum to one");
  }
}

double residual(const std::vector<double>& pi, const std::vector<double>& P, int n) {
  double r = 0.0;
  for (int j = 0; j < n; ++j) {
    NeumaierSum s;
    for (int i = 0; i < n; ++i) s.add(pi[i] * P[static_cast<size_t>(i) * n + j]);
    r = std::max(r, std::abs(s.value() - pi[j]));
  }
  return r;
}

// Damped iteration pi <- (pi + pi P)/2; the damping removes periodicity while
// keeping the fixed point, so the plain residual pi P = pi still certifies.
std::vector<double> stationary_vector(const std::vector<double>& P, int n) {
  std::vector<double> pi(n, 1.0 / n), next(n);
  for (int it = 0; it < 500000; ++it) {
    for (int j = 0; j < n; ++j) {
      NeumaierSum s;
      for (int i = 0; i < n; ++i) s.add(pi[i] * P[static_cast<size_t>(i) * n + j]);
      next[j] = 0.5 * (pi[j] + s.value());
    }
    double norm = 0.0;
    for (double v : next) norm += v;
    for (int j = 0; j < n; ++j) pi[j] = next[j] / norm;
    if (residual(pi, P, n) <= kStationaryTol) return pi;
  }
  throw std::runtime_error("stationary vector iteration did not reach tolerance");
}

}  // namespace

ShiftMeasure::ShiftMeasure(Kind kind, SystemPtr system, std::vector<double> P,
                           std::vector<double> pi)
    : kind_(kind),
      system_(std::move(system)),
      alphabet_(system_->alphabet_size()),
      P_(std::move(P)),
      pi_(std::move(pi)) {}

ShiftMeasure ShiftMeasure::bernoulli(SystemPtr system, std::vector<double> p) {
  if (!system->is_full_shift())
    throw std::invalid_argument("Bernoulli measures require a full shift");
  int n = system->alphabet_size();
  if (static_cast<int>(p.size()) != n) throw std::invalid_argument("parameter size mismatch");
  NeumaierSum s;
  for (double v : p) {
    if (v < 0.0) throw std::invalid_argument("negative Bernoulli parameter");
    s.add(v);
  }
  if (std::abs(s.value() - 1.0) > kStochasticTol)
    throw std::invalid_argument("Bernoulli parameters do not sum to one");
  std::vector<double> P(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) P[static_cast<size_t>(i) * n + j] = p[j];
  return ShiftMeasure(Kind::Bernoulli, std::move(system), std::move(P), std::move(p));
}

ShiftMeasure ShiftMeasure::markov(SystemPtr system, std::vector<std::vector<double>> P,
                                  std::vector<double> pi) {
  int n = system->alphabet_size();
  if (static_cast<int>(P.size()) != n) throw std::invalid_argument("transition matrix size mismatch");
  std::vector<double> flat(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(P[i].size()) != n)
      throw std::invalid_argument("transition matrix row size mismatch");
    for (int j = 0; j < n; ++j) {
      if (P[i][j] > 0.0 && !system->allowed(i, j))
        throw std::invalid_argument("transition mass on a forbidden pair");
      flat[static_cast<size_t>(i) * n + j] = P[i][j];
    }
  }
  check_rows(flat, n);
  if (pi.empty()) {
    pi = stationary_vector(flat, n);
  } else {
    if (static_cast<int>(pi.size()) != n)
      throw std::invalid_argument("stationary vector size mismatch");
    NeumaierSum s;
    for (double v : pi) {
      if (v < 0.0) throw std::invalid_argument("negative stationary mass");
      s.add(v);
    }
    if (std::abs(s.value() - 1.0) > kStochasticTol || residual(pi, flat, n) > kStochasticTol)
      throw std::invalid_argument("supplied vector is not stationary");
  }
  return ShiftMeasure(Kind::Markov, std::move(system), std::move(flat), std::move(pi));
}

double ShiftMeasure::cylinder_weight(std::span<const int> w) const {
  if (!system_->admissible(w)) return 0.0;
  double m = pi_[w[0]];
  for (size_t i = 1; i < w.size(); ++i) m *= transition(w[i - 1], w[i]);
  return m;
}

std::vector<double> ShiftMeasure::word_weights(int depth) const {
  const WordSet& ws = system_->words(depth);
  std::vector<double> out(ws.count());
  for (int i = 0; i < ws.count(); ++i) {
    auto w = ws.word(i);
    double m = pi_[w[0]];
    for (int j = 1; j < depth; ++j) m *= transition(w[j - 1], w[j]);
    out[i] = m;
  }
  return out;
}

double ShiftMeasure::integrate(const LocallyConstantFunction& f) const {
  if (f.system() != system_) throw std::invalid_argument("integrate: system mismatch");
  std::vector<double> w = word_weights(f.depth());
  NeumaierSum s;
  for (size_t i = 0; i < w.size(); ++i) s.add(w[i] * f.values()[i]);
  return s.value();
}

double ShiftMeasure::entropy_rate() const {
  NeumaierSum s;
  if (kind_ == Kind::Bernoulli) {
    for (double v : pi_) s.add(-xlogx(v));
  } else {
    for (int i = 0; i < alphabet_; ++i)
      for (int j = 0; j < alphabet_; ++j) s.add(-pi_[i] * xlogx(transition(i, j)));
  }
  return s.value();
}

ConditionalMeasure::ConditionalMeasure(const ShiftMeasure& base,
                                       const LocallyConstantFunction& psi)
    : base_(&base), psi_(psi), mass_(base.integrate(psi)) {
  if (mass_ == 0.0) throw std::domain_error("conditioning on a zero-mass observable");
}

double ConditionalMeasure::integrate(const LocallyConstantFunction& f) const {
  int depth = std::max(f.depth(), psi_.depth());
  auto fr = f.refine_to_depth(depth);
  auto pr = psi_.refine_to_depth(depth);
  std::vector<double> w = base_->word_weights(depth);
  NeumaierSum s;
  for (size_t i = 0; i < w.size(); ++i) s.add(w[i] * fr.values()[i] * pr.values()[i]);
  return s.value() / mass_;
}

}  // namespace punity
