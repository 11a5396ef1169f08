#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>

#include "realsep/error.hpp"

namespace realsep {

using Rational = mpq_class;
using Integer = mpz_class;

enum class Sign : int { negative = -1, zero = 0, positive = 1 };

inline Sign sign_of(int s) {
  return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
}
inline int to_int(Sign s) { return static_cast<int>(s); }
inline Sign operator*(Sign a, Sign b) { return sign_of(to_int(a) * to_int(b)); }
inline Sign operator-(Sign a) { return sign_of(-to_int(a)); }

inline Sign sign(const Rational& q) { return sign_of(sgn(q)); }

/// Largest square divisor removal: returns (k, m) with n = k^2 * m, m square-free.
inline std::pair<Integer, Integer> split_square(const Integer& n) {
  Integer k = 1, m = n;
  for (Integer p = 2; p * p <= m; ++p) {
    while (m % (p * p) == 0) {
      m /= p * p;
      k *= p;
    }
  }
  return {k, m};
}

/// Element a + b*sqrt(n) of Q(sqrt(n)), n a square-free integer > 1.
///
/// An element with b == 0 is a plain rational and is compatible with every
/// extension; mixing two different non-trivial radicands is an error.
class Qsqrt {
 public:
  Qsqrt() = default;
  Qsqrt(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Qsqrt(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  Qsqrt(Rational a, Rational b, long radicand) : a_(std::move(a)), b_(std::move(b)), n_(radicand) {
    a_.canonicalize();
    b_.canonicalize();
    if (b_ == 0) {
      n_ = 0;
    } else if (n_ <= 1) {
      fail(ErrorCode::invalid_input, "surd radicand must be a square-free integer > 1");
    }
  }

  /// sqrt(m) for a positive integer m, reduced to k*sqrt(n) with n square-free.
  static Qsqrt sqrt_of(const Integer& m) {
    if (m <= 0) fail(ErrorCode::invalid_input, "sqrt() argument must be a positive integer");
    auto [k, sf] = split_square(m);
    if (sf == 1) return Qsqrt(Rational(k));
    if (!sf.fits_slong_p()) fail(ErrorCode::invalid_input, "sqrt() radicand too large");
    return Qsqrt(Rational(0), Rational(k), sf.get_si());
  }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  long radicand() const { return n_; }
  bool is_rational() const { return n_ == 0; }
  bool is_zero() const { return n_ == 0 && a_ == 0; }

  Sign sign() const {
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sign_of(sa);
    if (sa == 0) return sign_of(sb);
    if (sa == sb) return sign_of(sa);
    Rational lhs = a_ * a_, rhs = b_ * b_ * n_;
    return cmp(lhs, rhs) > 0 ? sign_of(sa) : sign_of(sb);
  }

  Qsqrt conjugate() const { return n_ == 0 ? *this : Qsqrt(a_, -b_, n_); }
  /// Field norm a^2 - n b^2 (rational).
  Rational norm() const { return n_ == 0 ? Rational(a_ * a_) : Rational(a_ * a_ - b_ * b_ * n_); }

  Qsqrt inverse() const {
    if (is_zero()) fail(ErrorCode::invalid_input, "division by zero in Q(sqrt n)");
    if (n_ == 0) return Qsqrt(Rational(1 / a_));
    Rational d = norm();
    return Qsqrt(Rational(a_ / d), Rational(-b_ / d), n_);
  }

  Qsqrt abs() const { return sign() == Sign::negative ? -*this : *this; }

  /// Upper bound on |x| as a rational.
  Rational abs_bound() const {
    if (n_ == 0) return ::abs(a_);
    Integer r;
    mpz_sqrt(r.get_mpz_t(), Integer(n_).get_mpz_t());
    return ::abs(a_) + ::abs(b_) * Rational(r + 1);
  }

  /// Rational enclosure [lo, hi] of the value with width <= 2^-bits * |b|-ish.
  void enclose(unsigned bits, Rational& lo, Rational& hi) const {
    if (n_ == 0) {
      lo = a_;
      hi = a_;
      return;
    }
    Integer scaled = Integer(n_) << (2 * bits);
    Integer r;
    mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
    Rational s_lo(r), s_hi(r + 1);
    mpq_div_2exp(s_lo.get_mpq_t(), s_lo.get_mpq_t(), bits);
    mpq_div_2exp(s_hi.get_mpq_t(), s_hi.get_mpq_t(), bits);
    if (b_ > 0) {
      lo = a_ + b_ * s_lo;
      hi = a_ + b_ * s_hi;
    } else {
      lo = a_ + b_ * s_hi;
      hi = a_ + b_ * s_lo;
    }
  }

  double to_double() const {
    return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(n_));
  }

  std::string str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Qsqrt& x) {
    if (x.n_ == 0) return os << x.a_.get_str();
    if (x.a_ != 0) os << x.a_.get_str() << (x.b_ > 0 ? "+" : "-");
    else if (x.b_ < 0) os << "-";
    Rational ab = ::abs(x.b_);
    if (ab != 1) os << ab.get_str() << "*";
    return os << "sqrt(" << x.n_ << ")";
  }

  Qsqrt operator-() const { return n_ == 0 ? Qsqrt(Rational(-a_)) : Qsqrt(-a_, -b_, n_); }

  Qsqrt& operator+=(const Qsqrt& o) {
    if (o.n_ == 0) {
      a_ += o.a_;
      return *this;
    }
    long n = join(o);
    a_ += o.a_;
    b_ += o.b_;
    n_ = b_ == 0 ? 0 : n;
    return *this;
  }
  Qsqrt& operator-=(const Qsqrt& o) { return *this += -o; }
  Qsqrt& operator*=(const Qsqrt& o) {
    if (n_ == 0 && o.n_ == 0) {
      a_ *= o.a_;
      return *this;
    }
    long n = join(o);
    Rational na = a_ * o.a_ + b_ * o.b_ * n;
    Rational nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    n_ = b_ == 0 ? 0 : n;
    return *this;
  }
  Qsqrt& operator/=(const Qsqrt& o) {
    if (o.n_ == 0) {
      if (o.a_ == 0) fail(ErrorCode::invalid_input, "division by zero in Q(sqrt n)");
      a_ /= o.a_;
      b_ /= o.a_;
      return *this;
    }
    return *this *= o.inverse();
  }

  friend Qsqrt operator+(Qsqrt a, const Qsqrt& b) { return a += b; }
  friend Qsqrt operator-(Qsqrt a, const Qsqrt& b) { return a -= b; }
  friend Qsqrt operator*(Qsqrt a, const Qsqrt& b) { return a *= b; }
  friend Qsqrt operator/(Qsqrt a, const Qsqrt& b) { return a /= b; }

  friend bool operator==(const Qsqrt& x, const Qsqrt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.n_ == y.n_ || x.b_ == 0);
  }
  friend std::strong_ordering operator<=>(const Qsqrt& x, const Qsqrt& y) {
    Sign s = (x - y).sign();
    return s == Sign::negative ? std::strong_ordering::less
           : s == Sign::zero   ? std::strong_ordering::equal
                               : std::strong_ordering::greater;
  }

 private:
  long join(const Qsqrt& o) const {
    if (n_ == 0) return o.n_;
    if (o.n_ == 0 || o.n_ == n_) return n_;
    fail(ErrorCode::invalid_input,
         "mixing sqrt(" + std::to_string(n_) + ") and sqrt(" + std::to_string(o.n_) +
             "): only a single quadratic extension is supported");
  }

  Rational a_{0};
  Rational b_{0};
  long n_{0};
};

inline Sign sign(const Qsqrt& x) { return x.sign(); }

/// Decimal literal to exact rational ("1.25" -> 5/4, "-3e-2" not supported).
inline Rational parse_decimal(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(Integer(text));
  std::string ip = text.substr(0, dot), fp = text.substr(dot + 1);
  if (ip.empty()) ip = "0";
  Integer num(ip + fp);
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Exact rational from a double (every finite double is a dyadic rational).
inline Rational rational_from_double(double d) {
  Rational q;
  mpq_set_d(q.get_mpq_t(), d);
  return q;
}

inline Rational mul_2exp(const Rational& q, long e) {
  Rational r;
  if (e >= 0) mpq_mul_2exp(r.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(e));
  else mpq_div_2exp(r.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-e));
  return r;
}

}  // namespace realsep
