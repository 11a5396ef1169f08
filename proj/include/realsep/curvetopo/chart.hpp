#pragma once

#include <array>
#include <string>
#include <vector>

#include "realsep/exactnum/parse.hpp"
#include "realsep/exactnum/resultant.hpp"
#include "realsep/exactnum/roots.hpp"

namespace realsep {

using QPoly = UPoly<Qsqrt>;
using QBiPoly = BiPoly<Qsqrt>;

/// Projective coordinate change (u, v, w) = N (x, y, z). Rows of N are
/// u = e_p + t e_q, v = e_q, w = line. The affine chart is w = 1, the
/// projection direction is the point (0:1:0) in new coordinates.
struct Chart {
  std::array<Rational, 3> line;  // w as a linear form in x, y, z
  int p = 0, q = 1;
  Rational shear;
  Mat3 N, M;  // M = N^{-1}: old = M new

  PlaneForm to_chart(const PlaneForm& f) const { return f.substitute_linear(M); }
  PlaneForm from_chart(const PlaneForm& f) const { return f.substitute_linear(N); }
  /// The projection center (0:1:0) in original coordinates.
  std::array<Rational, 3> center() const { return {M[0][1], M[1][1], M[2][1]}; }

  std::string describe() const {
    auto lin = [](const std::array<Rational, 3>& c) {
      std::vector<Qsqrt> k{Qsqrt(c[0]), Qsqrt(c[1]), Qsqrt(c[2])};
      return PlaneForm::linear(k).str(xyz_names());
    };
    std::array<Rational, 3> u{}, v{};
    for (int i = 0; i < 3; ++i) {
      u[i] = N[0][i];
      v[i] = N[1][i];
    }
    return "u=" + lin(u) + ", v=" + lin(v) + ", w=" + lin(line);
  }
};

inline Chart make_chart(const std::array<Rational, 3>& line, int p, int q, const Rational& t) {
  Chart c;
  c.line = line;
  c.p = p;
  c.q = q;
  c.shear = t;
  for (int j = 0; j < 3; ++j) {
    c.N[0][j] = (j == p ? 1 : 0) + (j == q ? t : Rational(0));
    c.N[1][j] = j == q ? 1 : 0;
    c.N[2][j] = line[j];
  }
  c.M = inverse3(c.N);
  return c;
}

/// Candidate lines a x + b y + c z with |a|,|b|,|c| <= bound, z, x, y first,
/// then by max |coefficient|, then lexicographically; one representative
/// per projective class (first nonzero coefficient positive).
inline std::vector<std::array<Rational, 3>> candidate_lines(int bound = 3) {
  std::vector<std::array<int, 3>> raw;
  for (int a = -bound; a <= bound; ++a)
    for (int b = -bound; b <= bound; ++b)
      for (int c = -bound; c <= bound; ++c) {
        std::array<int, 3> v{a, b, c};
        int first = a != 0 ? a : (b != 0 ? b : c);
        if (first <= 0) continue;
        if (std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c)) != 1) continue;
        raw.push_back(v);
      }
  auto rank = [](const std::array<int, 3>& v) {
    int m = std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
    int nz = (v[0] != 0) + (v[1] != 0) + (v[2] != 0);
    // z, x, y
    int unit = v == std::array<int, 3>{0, 0, 1} ? 0 : v == std::array<int, 3>{1, 0, 0} ? 1
               : v == std::array<int, 3>{0, 1, 0}                                 ? 2
                                                                                  : 3;
    return std::array<int, 4>{unit, m, nz, 0};
  };
  std::stable_sort(raw.begin(), raw.end(), [&](const auto& x, const auto& y) {
    auto rx = rank(x), ry = rank(y);
    if (rx != ry) return rx < ry;
    return x > y;
  });
  std::vector<std::array<Rational, 3>> out;
  for (const auto& v : raw) out.push_back({Rational(v[0]), Rational(v[1]), Rational(v[2])});
  return out;
}

/// Basis vectors e_p, e_q completing the line to a coordinate system.
inline std::pair<int, int> complement_axes(const std::array<Rational, 3>& line) {
  // pick the coordinate with the largest |coefficient| to be replaced by the line
  int drop = 0;
  for (int i = 1; i < 3; ++i)
    if (abs(line[i]) > abs(line[drop])) drop = i;
  int p = drop == 0 ? 1 : 0;
  int q = 3 - drop - p;
  return {p, q};
}

/// Deterministic shear sequence 0, 1, -1, 2, -2, 1/2, -1/2, 3, -3, 1/3, ...
inline Rational shear_value(unsigned index) {
  if (index == 0) return Rational(0);
  std::vector<Rational> seq;
  for (long k = 1; seq.size() < index; ++k) {
    seq.emplace_back(k);
    seq.emplace_back(-k);
    if (k >= 2) {
      seq.emplace_back(1, k);
      seq.emplace_back(-1, k);
    }
  }
  Rational r = seq[index - 1];
  r.canonicalize();
  return r;
}

/// Simplest rational (smallest denominator, then numerator) strictly inside (a, b).
inline Rational simplest_between(const Rational& a, const Rational& b) {
  if (!(a < b)) fail(ErrorCode::internal, "simplest_between: empty interval");
  Integer fa;
  mpz_fdiv_q(fa.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  Integer cand = fa + 1;
  if (Rational(cand) < b) {
    // an integer lies inside: choose the one of least magnitude
    Integer fb;
    mpz_cdiv_q(fb.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    Integer hi = fb - 1;
    if (cand <= 0 && hi >= 0) return Rational(0);
    return Rational(cand > 0 ? cand : hi);
  }
  // a and b within the same unit interval: continued-fraction recursion
  Rational fr_a = a - Rational(fa), fr_b = b - Rational(fa);
  if (fr_a == 0) {
    // interval (fa, fa + fr_b): 1/m for the least m with 1/m < fr_b
    Rational inv = 1 / fr_b;
    Integer m;
    mpz_fdiv_q(m.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
    m += 1;
    Rational r = Rational(fa) + Rational(1) / Rational(m);
    r.canonicalize();
    return r;
  }
  Rational inner = simplest_between(1 / fr_b, 1 / fr_a);
  Rational r = Rational(fa) + 1 / inner;
  r.canonicalize();
  return r;
}

/// Numerator after substituting v = -s0/s1 into a bivariate polynomial:
/// sum_j g_j(u) (-s0)^j s1^(d-j) with d = deg_v g.
inline QPoly substitute_fiber_point(const QBiPoly& g, const QPoly& s0, const QPoly& s1) {
  const int d = g.degree_v();
  QPoly acc;
  if (d < 0) return acc;
  std::vector<QPoly> pw_s0{QPoly::constant(Qsqrt(1))}, pw_s1{QPoly::constant(Qsqrt(1))};
  for (int j = 1; j <= d; ++j) {
    pw_s0.push_back(pw_s0.back() * (-s0));
    pw_s1.push_back(pw_s1.back() * s1);
  }
  for (int j = 0; j <= d; ++j) acc += g.coeff_v(j) * pw_s0[j] * pw_s1[d - j];
  return acc;
}

}  // namespace realsep
