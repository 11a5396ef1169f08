#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "realsep/exactnum/field.hpp"

namespace realsep {

/// Dense univariate polynomial over an exact ordered field, coefficients
/// stored low degree first. The zero polynomial has no coefficients.
template <OrderedField K>
class UPoly {
 public:
  using Coeff = K;

  UPoly() = default;
  explicit UPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
  UPoly(std::initializer_list<K> coeffs) : c_(coeffs) { trim(); }
  static UPoly constant(const K& k) { return UPoly(std::vector<K>{k}); }
  static UPoly monomial(const K& k, int deg) {
    std::vector<K> c(static_cast<size_t>(deg) + 1, K(0));
    c.back() = k;
    return UPoly(std::move(c));
  }
  /// t - r
  static UPoly linear_root(const K& r) { return UPoly({-r, K(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : K(0); }
  const K& lc() const { return c_.back(); }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) { return *this += -o; }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (realsep::is_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const K& k, UPoly a) {
    if (realsep::is_zero(k)) return {};
    for (auto& x : a.c_) x *= k;
    return a;
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<K> r(c_.size() - 1, K(0));
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * K(static_cast<long>(i));
    return UPoly(std::move(r));
  }

  /// Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) fail(ErrorCode::invalid_input, "polynomial division by zero");
    if (degree() < d.degree()) return {UPoly(), *this};
    std::vector<K> r = c_;
    std::vector<K> q(c_.size() - d.c_.size() + 1, K(0));
    K inv = inverse(d.lc());
    const int dd = d.degree();
    for (int i = degree(); i >= dd; --i) {
      if (realsep::is_zero(r[i])) continue;
      K f = r[i] * inv;
      q[i - dd] = f;
      for (int j = 0; j <= dd; ++j) r[i - dd + j] -= f * d.c_[j];
    }
    r.resize(static_cast<size_t>(dd));
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }
  UPoly rem(const UPoly& d) const { return divmod(d).second; }
  /// Exact quotient; fails if d does not divide *this.
  UPoly exact_div(const UPoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) fail(ErrorCode::internal, "exact_div: nonzero remainder");
    return q;
  }

  UPoly monic() const {
    if (is_zero()) return {};
    return inverse(lc()) * *this;
  }
  /// Divide by |lc| so the leading coefficient is +-1; preserves signs.
  UPoly sign_normalized() const {
    if (is_zero()) return {};
    return inverse(abs_value(lc())) * *this;
  }

  K eval(const K& x) const {
    K acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  Sign sign_at(const Rational& x) const { return sign(eval(K(x))); }

  Ball eval(const Ball& x) const {
    const unsigned p = x.precision();
    if (c_.empty()) return Ball(Rational(0), p);
    Ball acc = to_ball(c_.back(), p);
    for (int i = degree() - 1; i >= 0; --i) acc = acc * x + to_ball(c_[i], p);
    return acc;
  }

  /// Sign at +infinity / -infinity.
  Sign sign_at_pos_inf() const { return is_zero() ? Sign::zero : sign(lc()); }
  Sign sign_at_neg_inf() const {
    if (is_zero()) return Sign::zero;
    Sign s = sign(lc());
    return degree() % 2 == 0 ? s : -s;
  }

  /// p(x) -> p(a x + b)
  UPoly compose_linear(const K& a, const K& b) const {
    UPoly r, pw = constant(K(1)), lin({b, a});
    for (size_t i = 0; i < c_.size(); ++i) {
      r += c_[i] * pw;
      pw = pw * lin;
    }
    return r;
  }

  std::string str(const std::string& var = "t") const {
    if (c_.empty()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      if (realsep::is_zero(c_[i])) continue;
      std::string cs = to_text(c_[i]);
      if (!s.empty()) s += " + ";
      s += "(" + cs + ")";
      if (i > 0) s += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
  }

  /// Upper bound on the modulus of every complex root (Cauchy).
  Rational root_bound() const {
    if (degree() < 1) return Rational(1);
    UPoly m = monic();
    Rational b(0);
    for (int i = 0; i < m.degree(); ++i) b = std::max(b, abs_bound(m.c_[i]));
    return b + 1;
  }

 private:
  void trim() {
    while (!c_.empty() && realsep::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<K> c_;
};

template <OrderedField K>
UPoly<K> gcd(UPoly<K> a, UPoly<K> b) {
  while (!b.is_zero()) {
    UPoly<K> r = a.rem(b);
    a = std::move(b);
    b = r.is_zero() ? r : r.monic();
  }
  return a.is_zero() ? a : a.monic();
}

template <OrderedField K>
struct SquarefreeFactor {
  UPoly<K> factor;   // monic, square-free
  int multiplicity;  // >= 1
};

/// Yun's square-free decomposition: p = lc * prod f_i^i.
template <OrderedField K>
std::vector<SquarefreeFactor<K>> squarefree_decomposition(const UPoly<K>& p) {
  if (p.is_zero()) fail(ErrorCode::invalid_input, "square-free decomposition of zero polynomial");
  std::vector<SquarefreeFactor<K>> out;
  if (p.degree() == 0) return out;
  UPoly<K> a = p.monic();
  UPoly<K> da = a.derivative();
  UPoly<K> g = gcd(a, da);
  UPoly<K> b = a.exact_div(g);
  UPoly<K> c = da.exact_div(g);
  UPoly<K> d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    UPoly<K> f = gcd(b, d);
    if (f.degree() > 0) out.push_back({f, i});
    b = b.exact_div(f);
    c = d.exact_div(f);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

/// p / gcd(p, p'), monic.
template <OrderedField K>
UPoly<K> squarefree_part(const UPoly<K>& p) {
  if (p.is_zero()) fail(ErrorCode::invalid_input, "square-free part of zero polynomial");
  if (p.degree() == 0) return UPoly<K>::constant(K(1));
  return p.monic().exact_div(gcd(p, p.derivative()));
}

}  // namespace realsep
