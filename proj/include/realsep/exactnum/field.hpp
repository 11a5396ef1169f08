#pragma once

#include "realsep/exactnum/ball.hpp"
#include "realsep/exactnum/qsqrt.hpp"

// Uniform accessors so the polynomial templates work over both Q and Q(sqrt n).
namespace realsep {

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const Qsqrt& x) { return x.is_zero(); }

inline Rational abs_bound(const Rational& q) { return ::abs(q); }
inline Rational abs_bound(const Qsqrt& x) { return x.abs_bound(); }

inline Ball to_ball(const Rational& q, unsigned prec) { return Ball(q, prec); }
inline Ball to_ball(const Qsqrt& x, unsigned prec) { return Ball::enclose(x, prec); }

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(const Qsqrt& x) { return x.to_double(); }

inline std::string to_text(const Rational& q) { return q.get_str(); }
inline std::string to_text(const Qsqrt& x) { return x.str(); }

inline Rational inverse(const Rational& q) {
  if (sgn(q) == 0) fail(ErrorCode::invalid_input, "division by zero");
  return 1 / q;
}
inline Qsqrt inverse(const Qsqrt& x) { return x.inverse(); }

inline Rational abs_value(const Rational& q) { return ::abs(q); }
inline Qsqrt abs_value(const Qsqrt& x) { return x.abs(); }

template <class K>
concept OrderedField = requires(const K& a, const K& b) {
  { a + b } -> std::convertible_to<K>;
  { a * b } -> std::convertible_to<K>;
  { is_zero(a) } -> std::convertible_to<bool>;
  { sign(a) } -> std::convertible_to<Sign>;
  { to_ball(a, 0u) } -> std::convertible_to<Ball>;
};

}  // namespace realsep
