#pragma once

// Reference implementations used to freeze expected values: direct
// transcriptions of the defining formulas at long double precision, kept
// independent of the library code paths they check.

#include <cmath>
#include <vector>

namespace oracle {

inline long double xlog2x(long double p) {
  return p > 0.0L ? -p * std::log2(p) : 0.0L;
}

inline long double entropy(const std::vector<long double>& p) {
  long double h = 0.0L;
  for (const long double v : p) h += xlog2x(v);
  return h;
}

inline long double binary_entropy(long double x) {
  return xlog2x(x) + xlog2x(1.0L - x);
}

// H(Y|X) = H(X,Y) - H(X) for a 2x2 row-major table.
inline long double cond_entropy_2x2(long double p00, long double p01,
                                    long double p10, long double p11) {
  return entropy({p00, p01, p10, p11}) - entropy({p00 + p01, p10 + p11});
}

}  // namespace oracle
