#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "realsep/exactnum/upoly.hpp"

namespace realsep {

using cdouble = std::complex<double>;

template <OrderedField K>
cdouble eval_complex(const UPoly<K>& p, cdouble z) {
  cdouble acc(0);
  for (int i = p.degree(); i >= 0; --i) acc = acc * z + to_double(p.coeff(i));
  return acc;
}

/// Approximate complex roots (Aberth iteration). Not certified: used only
/// to report locations of non-real points whose count is known exactly.
template <OrderedField K>
std::vector<cdouble> approximate_roots(const UPoly<K>& p) {
  const int n = p.degree();
  std::vector<cdouble> z;
  if (n < 1) return z;
  std::vector<cdouble> c(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) c[static_cast<size_t>(i)] = to_double(p.coeff(i)) / to_double(p.lc());
  double radius = 0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::pow(std::abs(c[static_cast<size_t>(i)]), 1.0 / (n - i)));
  radius = std::max(radius, 1e-3);
  for (int i = 0; i < n; ++i) z.push_back(std::polar(radius, 2 * M_PI * (i + 0.25) / n));
  auto eval = [&](cdouble x, cdouble& d) {
    cdouble v = c[static_cast<size_t>(n)];
    d = 0;
    for (int i = n - 1; i >= 0; --i) {
      d = d * x + v;
      v = v * x + c[static_cast<size_t>(i)];
    }
    return v;
  };
  for (int it = 0; it < 500; ++it) {
    double change = 0;
    for (int i = 0; i < n; ++i) {
      cdouble d;
      cdouble v = eval(z[i], d);
      if (v == cdouble(0)) continue;
      cdouble ratio = v / d;
      cdouble sum(0);
      for (int j = 0; j < n; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      cdouble step = ratio / (1.0 - ratio * sum);
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15) break;
  }
  return z;
}

}  // namespace realsep
