#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <string>

#include "realsep/exactnum/qsqrt.hpp"

namespace realsep {

/// Process-wide cap on working precision (bits) for all refinement loops.
inline std::atomic<unsigned>& precision_cap() {
  static std::atomic<unsigned> cap{4096};
  return cap;
}

/// Precision ladder used by every validated computation.
struct PrecisionLadder {
  unsigned start_bits = 128;
  unsigned cap_bits = precision_cap();
};

namespace detail {
inline Rational floor_dyadic(const Rational& q, unsigned bits) {
  Rational s = mul_2exp(q, bits);
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  return mul_2exp(Rational(f), -static_cast<long>(bits));
}
inline Rational ceil_dyadic(const Rational& q, unsigned bits) {
  Rational s = mul_2exp(q, bits);
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  return mul_2exp(Rational(c), -static_cast<long>(bits));
}
}  // namespace detail

/// Validated real enclosure with dyadic endpoints.
///
/// Stored as [lo, hi]; midpoint/radius are derived. After every operation the
/// endpoints are rounded outward to `prec` fractional bits (prec == 0 keeps
/// the exact rational endpoints), so the ball always contains the exact
/// image of its inputs.
class Ball {
 public:
  Ball() = default;
  explicit Ball(const Rational& exact, unsigned prec = 0) : lo_(exact), hi_(exact), prec_(prec) {
    round();
  }
  Ball(const Rational& lo, const Rational& hi, unsigned prec) : lo_(lo), hi_(hi), prec_(prec) {
    if (lo_ > hi_) std::swap(lo_, hi_);
    round();
  }
  static Ball from_mid_rad(const Rational& mid, const Rational& rad, unsigned prec) {
    Rational r = ::abs(rad);
    return Ball(mid - r, mid + r, prec);
  }
  static Ball enclose(const Qsqrt& x, unsigned prec) {
    if (x.is_rational()) return Ball(x.rational_part(), prec);
    Rational lo, hi;
    x.enclose(std::max(prec, 8u) + 4, lo, hi);
    return Ball(lo, hi, prec);
  }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  unsigned precision() const { return prec_; }
  Rational mid() const { return (lo_ + hi_) / 2; }
  Rational rad() const { return (hi_ - lo_) / 2; }
  Rational width() const { return hi_ - lo_; }
  bool contains(const Rational& q) const { return lo_ <= q && q <= hi_; }
  bool contains_zero() const { return sgn(lo_) <= 0 && sgn(hi_) >= 0; }
  bool overlaps(const Ball& o) const { return !(hi_ < o.lo_ || o.hi_ < lo_); }

  /// Definite sign, or nullopt when the ball straddles zero.
  std::optional<Sign> sign() const {
    if (sgn(lo_) > 0) return Sign::positive;
    if (sgn(hi_) < 0) return Sign::negative;
    if (sgn(lo_) == 0 && sgn(hi_) == 0) return Sign::zero;
    return std::nullopt;
  }

  Ball operator-() const { return Ball(-hi_, -lo_, prec_); }
  friend Ball operator+(const Ball& a, const Ball& b) {
    return Ball(a.lo_ + b.lo_, a.hi_ + b.hi_, std::max(a.prec_, b.prec_));
  }
  friend Ball operator-(const Ball& a, const Ball& b) { return a + (-b); }
  friend Ball operator*(const Ball& a, const Ball& b) {
    unsigned p = std::max(a.prec_, b.prec_);
    if (a.lo_ == a.hi_ && b.lo_ == b.hi_) return Ball(a.lo_ * b.lo_, p);
    Rational c1 = a.lo_ * b.lo_, c2 = a.lo_ * b.hi_, c3 = a.hi_ * b.lo_, c4 = a.hi_ * b.hi_;
    Rational lo = std::min({c1, c2, c3, c4}), hi = std::max({c1, c2, c3, c4});
    return Ball(lo, hi, p);
  }
  friend Ball operator/(const Ball& a, const Ball& b) {
    if (b.contains_zero()) fail(ErrorCode::undetermined, "ball division by a ball containing zero");
    Ball inv(1 / b.hi_, 1 / b.lo_, b.prec_);
    return a * inv;
  }
  Ball& operator+=(const Ball& o) { return *this = *this + o; }
  Ball& operator*=(const Ball& o) { return *this = *this * o; }

  /// Hull with another ball.
  Ball join(const Ball& o) const {
    return Ball(std::min(lo_, o.lo_), std::max(hi_, o.hi_), std::max(prec_, o.prec_));
  }

  std::string str() const { return "[" + lo_.get_str() + ", " + hi_.get_str() + "]"; }

 private:
  void round() {
    if (prec_ == 0) return;
    if (lo_.get_den() != 1) lo_ = detail::floor_dyadic(lo_, prec_);
    if (hi_.get_den() != 1) hi_ = detail::ceil_dyadic(hi_, prec_);
  }

  Rational lo_{0}, hi_{0};
  unsigned prec_ = 0;
};

/// Exact sign of a field element.
inline Sign validated_sign(const Qsqrt& x) { return x.sign(); }

/// Sign of a ball-valued expression: evaluate at increasing precision until
/// zero is excluded, or fail with `undetermined` at the ladder cap.
inline Sign validated_sign(const std::function<Ball(unsigned)>& expr,
                           const PrecisionLadder& ladder = {}) {
  for (unsigned p = ladder.start_bits; p <= ladder.cap_bits; p *= 2) {
    Ball b = expr(p);
    if (auto s = b.sign()) return *s;
  }
  fail(ErrorCode::undetermined, "sign undetermined at precision cap " +
                                    std::to_string(ladder.cap_bits) + " bits");
}

/// A fixed ball (no way to tighten it): definite sign or undetermined.
inline Sign validated_sign(const Ball& b) {
  if (auto s = b.sign()) return *s;
  fail(ErrorCode::undetermined, "ball " + b.str() + " contains zero");
}

}  // namespace realsep
