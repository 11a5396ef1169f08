#pragma once

#include <memory>

#include "realsep/curvetopo/chart.hpp"

namespace realsep {

using Box3 = std::array<Ball, 3>;

/// Shared fiber data of a solve chart: square-free polynomial r(u) whose
/// roots are the u-coordinates, and the first subresultant s1 v + s0 whose
/// root is the unique v over each of them.
struct FiberData {
  Chart chart;
  QPoly r, s0, s1;
};

/// A real point of the curve, exactly represented in a solve chart by a root
/// of r (isolating interval) and v = -s0(u)/s1(u), w = 1.
class CurvePoint {
 public:
  CurvePoint() = default;
  CurvePoint(std::shared_ptr<const FiberData> data, IsolatingInterval iv)
      : data_(std::move(data)), iv_(std::move(iv)) {}

  const FiberData& data() const { return *data_; }
  const IsolatingInterval& interval() const { return iv_; }
  bool is_exact() const { return iv_.exact(); }

  CurvePoint refined(unsigned bits) const {
    CurvePoint c = *this;
    refine_interval_bits(data_->r, c.iv_, bits);
    return c;
  }

  /// Chart-coordinate enclosure (u, v) from the current interval.
  std::pair<Ball, Ball> chart_box(unsigned prec) const {
    Ball u(iv_.lo, iv_.hi, prec);
    Ball s1 = data_->s1.eval(u);
    if (s1.contains_zero()) fail(ErrorCode::undetermined, "fiber subresultant not separated from zero");
    Ball v = -(data_->s0.eval(u) / s1);
    return {u, v};
  }

  /// Enclosure of the projective coordinates (x, y, z) in the normalization
  /// w_chart = 1, with the interval refined to about `bits` bits.
  Box3 enclose(unsigned bits) const {
    for (unsigned b = bits;; b += 16) {
      CurvePoint c = refined(b);
      try {
        auto [u, v] = c.chart_box(b + 8);
        Ball one(Rational(1), b + 8);
        return apply3<Ball>(data_->chart.M, {u, v, one});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::undetermined || b > 8192) throw;
      }
    }
  }

  /// Exact coordinates when the chart root is rational.
  std::array<Qsqrt, 3> exact_coords() const {
    if (!iv_.exact()) fail(ErrorCode::internal, "exact_coords on irrational point");
    Qsqrt u(iv_.lo);
    Qsqrt v = -(data_->s0.eval(u) / data_->s1.eval(u));
    std::array<Qsqrt, 3> out;
    for (int i = 0; i < 3; ++i)
      out[i] = Qsqrt(data_->chart.M[i][0]) * u + Qsqrt(data_->chart.M[i][1]) * v + Qsqrt(data_->chart.M[i][2]);
    return out;
  }

  /// Exact test G(point) == 0 for a form in original coordinates.
  bool vanishes(const PlaneForm& g) const {
    if (g.is_zero()) return true;
    if (iv_.exact()) {
      auto c = exact_coords();
      return g.eval({c[0], c[1], c[2]}).is_zero();
    }
    QBiPoly gd = QBiPoly::dehomogenize(data_->chart.to_chart(g));
    QPoly h = substitute_fiber_point(gd, data_->s0, data_->s1);
    if (h.is_zero()) return true;
    QPoly common = gcd(data_->r, h);
    if (common.degree() < 1) return false;
    return count_real_roots_in(common, iv_.lo, iv_.hi).count > 0;
  }

  /// Exact sign of G at the point (in the normalization w_chart = 1).
  Sign sign_of(const PlaneForm& g, const PrecisionLadder& ladder = {}) const {
    if (iv_.exact()) {
      auto c = exact_coords();
      return g.eval({c[0], c[1], c[2]}).sign();
    }
    for (unsigned b = 32; b < ladder.start_bits; b *= 2) {
      Box3 x = enclose(b);
      if (auto s = g.eval({x[0], x[1], x[2]}, b + 8).sign()) return *s;
    }
    if (vanishes(g)) return Sign::zero;
    return validated_sign(
        [&](unsigned p) {
          Box3 x = enclose(p);
          return g.eval({x[0], x[1], x[2]}, p + 8);
        },
        ladder);
  }

  /// Midpoint approximation in double precision.
  std::array<double, 3> approx() const {
    Box3 b = enclose(60);
    return {b[0].mid().get_d(), b[1].mid().get_d(), b[2].mid().get_d()};
  }

 private:
  std::shared_ptr<const FiberData> data_;
  IsolatingInterval iv_;
};

}  // namespace realsep
