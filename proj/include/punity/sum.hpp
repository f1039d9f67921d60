// sum.hpp -- Neumaier compensated accumulation; reductions merge partials in a
// fixed order so results do not depend on thread count.
#pragma once

#include <cmath>

namespace punity {

struct NeumaierSum {
  double s = 0.0;
  double c = 0.0;

  void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  void merge(const NeumaierSum& o) {
    add(o.s);
    add(o.c);
  }
  double value() const { return s + c; }
};

// x log x with the 0 log 0 = 0 convention.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace punity
