#pragma once

#include <vector>

#include "realsep/exactnum/bipoly.hpp"

namespace realsep {

/// Determinant over a field by Gaussian elimination (the matrix is consumed).
template <OrderedField K>
K determinant(std::vector<std::vector<K>> m) {
  const size_t n = m.size();
  K det(1);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && is_zero(m[piv][col])) ++piv;
    if (piv == n) return K(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    K inv = inverse(m[col][col]);
    for (size_t r = col + 1; r < n; ++r) {
      if (is_zero(m[r][col])) continue;
      K f = m[r][col] * inv;
      for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

/// Coefficients (v^0 .. v^j) of the j-th subresultant of two univariate
/// polynomials given with formal degrees p = a.size()-1, q = b.size()-1.
/// j = 0 yields the Sylvester resultant as the single entry.
template <OrderedField K>
std::vector<K> subresultant(const std::vector<K>& a, const std::vector<K>& b, int j) {
  const int p = static_cast<int>(a.size()) - 1, q = static_cast<int>(b.size()) - 1;
  if (p < 0 || q < 0 || j < 0 || j > std::min(p, q) || (j > 0 && j == std::min(p, q) && p == q))
    fail(ErrorCode::invalid_input, "subresultant: invalid index");
  const int rows = p + q - 2 * j, cols = p + q - j;
  std::vector<std::vector<K>> m(static_cast<size_t>(rows), std::vector<K>(static_cast<size_t>(cols), K(0)));
  int r = 0;
  auto fill = [&](const std::vector<K>& poly, int deg, int shifts) {
    for (int s = shifts - 1; s >= 0; --s, ++r)
      for (int e = 0; e <= deg; ++e) {
        int power = e + s;
        int c = cols - 1 - power;
        m[static_cast<size_t>(r)][static_cast<size_t>(c)] = poly[static_cast<size_t>(e)];
      }
  };
  fill(a, p, q - j);
  fill(b, q, p - j);
  std::vector<K> out;
  for (int i = 0; i <= j; ++i) {
    std::vector<std::vector<K>> mi(static_cast<size_t>(rows), std::vector<K>(static_cast<size_t>(rows), K(0)));
    for (int rr = 0; rr < rows; ++rr) {
      for (int c = 0; c < rows - 1; ++c) mi[rr][c] = m[rr][c];
      mi[rr][rows - 1] = m[rr][cols - 1 - i];
    }
    out.push_back(determinant(std::move(mi)));
  }
  return out;
}

/// Newton interpolation through (xs[i], ys[i]).
template <OrderedField K>
UPoly<K> interpolate(const std::vector<K>& xs, std::vector<K> ys) {
  const size_t n = xs.size();
  for (size_t level = 1; level < n; ++level)
    for (size_t i = n - 1; i >= level; --i) ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - level]);
  UPoly<K> r;
  for (size_t i = n; i-- > 0;) {
    r = r * UPoly<K>::linear_root(xs[i]) + UPoly<K>::constant(ys[i]);
  }
  return r;
}

namespace detail {
inline long sample_point(size_t i) {
  // 0, 1, -1, 2, -2, ...
  long k = static_cast<long>((i + 1) / 2);
  return i % 2 == 1 ? k : -k;
}

template <OrderedField K>
std::vector<K> coeffs_at(const BiPoly<K>& f, int formal_deg, const K& u) {
  std::vector<K> c(static_cast<size_t>(formal_deg) + 1, K(0));
  for (int j = 0; j <= f.degree_v(); ++j) c[static_cast<size_t>(j)] = f.coeff_v(j).eval(u);
  return c;
}
}  // namespace detail

/// Subresultant S_j(u, v) = sum_i s_i(u) v^i of P and Q with respect to v,
/// computed by evaluation at integer points and interpolation in u.
template <OrderedField K>
std::vector<UPoly<K>> subresultant_in_v(const BiPoly<K>& P, const BiPoly<K>& Q, int j) {
  const int p = P.degree_v(), q = Q.degree_v();
  if (p < 0 || q < 0) fail(ErrorCode::invalid_input, "resultant of zero polynomial");
  const int bound = (q - j) * P.total_degree() + (p - j) * Q.total_degree();
  const size_t npts = static_cast<size_t>(std::max(bound, 0)) + 1;
  std::vector<K> xs;
  std::vector<std::vector<K>> vals(static_cast<size_t>(j) + 1);
  for (size_t s = 0; s < npts; ++s) {
    K u(detail::sample_point(s));
    xs.push_back(u);
    auto sr = subresultant(detail::coeffs_at(P, p, u), detail::coeffs_at(Q, q, u), j);
    for (int i = 0; i <= j; ++i) vals[static_cast<size_t>(i)].push_back(sr[static_cast<size_t>(i)]);
  }
  std::vector<UPoly<K>> out;
  for (auto& v : vals) out.push_back(interpolate(xs, v));
  return out;
}

template <OrderedField K>
UPoly<K> resultant_in_v(const BiPoly<K>& P, const BiPoly<K>& Q) {
  return subresultant_in_v(P, Q, 0).front();
}

/// Resultant of two ternary forms with respect to variable `var`, returned
/// as a ternary form not involving `var`, homogeneous of degree
/// deg f * deg g - (deg f - p)(deg g - q) with p, q the degrees in `var`.
template <OrderedField K>
Form<K> resultant(const Form<K>& f, const Form<K>& g, int var) {
  if (f.nvars() != 3 || g.nvars() != 3) fail(ErrorCode::invalid_input, "resultant expects ternary forms");
  if (var < 0 || var > 2) fail(ErrorCode::invalid_input, "resultant: variable index out of range");
  const int p = f.degree_in(var), q = g.degree_in(var);
  if (f.is_zero() || g.is_zero()) fail(ErrorCode::invalid_input, "resultant of zero form");
  if (p <= 0 && q <= 0)
    fail(ErrorCode::invalid_input, "resultant: both forms are free of the eliminated variable");
  // Reorder variables to (a, var, b) and dehomogenize at b = 1.
  int a = var == 0 ? 1 : 0;
  int b = 3 - var - a;
  Mat3 perm{};
  // new (u, v, w) = (x_a, x_var, x_b): x_i = sum_j perm[i][j] * new_j
  perm[a][0] = 1;
  perm[var][1] = 1;
  perm[b][2] = 1;
  BiPoly<K> P = BiPoly<K>::dehomogenize(f.substitute_linear(perm));
  BiPoly<K> Q = BiPoly<K>::dehomogenize(g.substitute_linear(perm));
  UPoly<K> r = resultant_in_v(P, Q);
  const int D = f.degree() * g.degree() - (f.degree() - p) * (g.degree() - q);
  Form<K> out(3, D);
  for (int i = 0; i <= r.degree(); ++i) {
    if (is_zero(r.coeff(i))) continue;
    Exponent e(3, 0);
    e[static_cast<size_t>(a)] = i;
    e[static_cast<size_t>(b)] = D - i;
    if (D - i < 0) fail(ErrorCode::internal, "resultant degree exceeds homogeneous bound");
    out.add_term(e, r.coeff(i));
  }
  return out;
}

}  // namespace realsep
