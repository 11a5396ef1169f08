#pragma once

#include <array>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "realsep/exactnum/upoly.hpp"

namespace realsep {

using Exponent = std::vector<int>;

/// Homogeneous polynomial in `nvars` variables with exact coefficients.
///
/// Terms are kept in a sorted map, so iteration order (and therefore every
/// printed or serialized form) is canonical. Invariants: every exponent sums
/// to degree(); no explicit zero coefficients.
template <OrderedField K>
class Form {
 public:
  Form() = default;
  Form(int nvars, int degree) : nvars_(nvars), degree_(degree) {}

  static Form variable(int nvars, int index) {
    Form f(nvars, 1);
    Exponent e(static_cast<size_t>(nvars), 0);
    e[static_cast<size_t>(index)] = 1;
    f.terms_[e] = K(1);
    return f;
  }
  static Form constant(int nvars, const K& k) {
    Form f(nvars, 0);
    if (!realsep::is_zero(k)) f.terms_[Exponent(static_cast<size_t>(nvars), 0)] = k;
    return f;
  }
  /// Linear form sum_i coeffs[i] * x_i.
  static Form linear(const std::vector<K>& coeffs) {
    Form f(static_cast<int>(coeffs.size()), 1);
    for (size_t i = 0; i < coeffs.size(); ++i) {
      Exponent e(coeffs.size(), 0);
      e[i] = 1;
      f.add_term(e, coeffs[i]);
    }
    return f;
  }

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, K>& terms() const { return terms_; }

  void add_term(const Exponent& e, const K& k) {
    if (static_cast<int>(e.size()) != nvars_)
      fail(ErrorCode::invalid_input, "exponent length does not match variable count");
    if (std::accumulate(e.begin(), e.end(), 0) != degree_)
      fail(ErrorCode::invalid_input, "term degree does not match form degree");
    if (realsep::is_zero(k)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, k);
      return;
    }
    it->second += k;
    if (realsep::is_zero(it->second)) terms_.erase(it);
  }
  K coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? K(0) : it->second;
  }

  Form operator-() const {
    Form r = *this;
    for (auto& [e, k] : r.terms_) k = -k;
    return r;
  }
  Form& operator+=(const Form& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && degree_ != o.degree_) return *this = o;
    check_compatible(o);
    for (const auto& [e, k] : o.terms_) add_term(e, k);
    return *this;
  }
  Form& operator-=(const Form& o) { return *this += -o; }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const Form& a, const Form& b) {
    if (a.nvars_ != b.nvars_) fail(ErrorCode::invalid_input, "form variable count mismatch");
    Form r(a.nvars_, a.degree_ + b.degree_);
    for (const auto& [ea, ka] : a.terms_)
      for (const auto& [eb, kb] : b.terms_) {
        Exponent e(ea.size());
        for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ka * kb);
      }
    return r;
  }
  friend Form operator*(const K& k, const Form& a) {
    Form r(a.nvars_, a.degree_);
    for (const auto& [e, c] : a.terms_) r.add_term(e, k * c);
    return r;
  }
  friend bool operator==(const Form& a, const Form& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_ && (a.degree_ == b.degree_ || a.is_zero());
  }

  Form pow(int e) const {
    Form r = constant(nvars_, K(1));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  Form derivative(int var) const {
    Form r(nvars_, degree_ > 0 ? degree_ - 1 : 0);
    for (const auto& [e, k] : terms_) {
      if (e[static_cast<size_t>(var)] == 0) continue;
      Exponent d = e;
      --d[static_cast<size_t>(var)];
      r.add_term(d, K(static_cast<long>(e[static_cast<size_t>(var)])) * k);
    }
    return r;
  }

  int degree_in(int var) const {
    int d = -1;
    for (const auto& [e, k] : terms_) d = std::max(d, e[static_cast<size_t>(var)]);
    return d;
  }

  K eval(const std::vector<K>& x) const {
    K acc(0);
    for (const auto& [e, k] : terms_) {
      K t = k;
      for (size_t i = 0; i < e.size(); ++i)
        for (int j = 0; j < e[i]; ++j) t *= x[i];
      acc += t;
    }
    return acc;
  }
  Ball eval(const std::vector<Ball>& x, unsigned prec) const {
    Ball acc(Rational(0), prec);
    for (const auto& [e, k] : terms_) {
      Ball t = to_ball(k, prec);
      for (size_t i = 0; i < e.size(); ++i)
        for (int j = 0; j < e[i]; ++j) t = t * x[i];
      acc = acc + t;
    }
    return acc;
  }

  /// Substitute x_i = sum_j m[i][j] * y_j (m has nvars rows).
  template <class M>
  Form substitute_linear(const M& m) const {
    std::vector<Form> lin;
    for (int i = 0; i < nvars_; ++i) {
      std::vector<K> row;
      for (int j = 0; j < nvars_; ++j) row.push_back(K(m[static_cast<size_t>(i)][static_cast<size_t>(j)]));
      lin.push_back(linear(row));
    }
    Form r(nvars_, degree_);
    for (const auto& [e, k] : terms_) {
      Form t = constant(nvars_, k);
      for (int i = 0; i < nvars_; ++i) t = t * lin[static_cast<size_t>(i)].pow(e[static_cast<size_t>(i)]);
      r += t;
    }
    r.degree_ = degree_;
    return r;
  }

  /// Restrict to a univariate polynomial by setting x_i = values[i] for all
  /// variables except `free_var` (whose slot in `values` is ignored).
  UPoly<K> restrict_to(int free_var, const std::vector<K>& values) const {
    std::vector<K> c(static_cast<size_t>(std::max(degree_, 0)) + 1, K(0));
    for (const auto& [e, k] : terms_) {
      K t = k;
      for (size_t i = 0; i < e.size(); ++i) {
        if (static_cast<int>(i) == free_var) continue;
        for (int j = 0; j < e[i]; ++j) t *= values[i];
      }
      c[static_cast<size_t>(e[static_cast<size_t>(free_var)])] += t;
    }
    return UPoly<K>(std::move(c));
  }

  /// True if some radicand other than 1 appears (surd coefficients).
  long radicand() const {
    if constexpr (std::is_same_v<K, Qsqrt>) {
      for (const auto& [e, k] : terms_)
        if (!k.is_rational()) return k.radicand();
    }
    return 0;
  }

  /// `*this == c * o` for some nonzero scalar c.
  bool proportional_to(const Form& o) const {
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    if (it->first != jt->first) return false;
    K ratio = it->second / jt->second;
    for (; it != terms_.end(); ++it, ++jt) {
      if (it->first != jt->first) return false;
      if (!(it->second == ratio * jt->second)) return false;
    }
    return true;
  }

  /// Human-readable text in the input grammar (re-parsable).
  std::string str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    // Descending lexicographic exponent order: x^n first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, k] = *it;
      bool neg = sign(k) == Sign::negative;
      K a = neg ? -k : k;
      std::string cs = to_text(a);
      bool is_one = a == K(1);
      bool has_var = std::any_of(e.begin(), e.end(), [](int x) { return x > 0; });
      if (s.empty()) s += neg ? "-" : "";
      else s += neg ? " - " : " + ";
      bool compound = cs.find_first_of("+-") != std::string::npos;
      if (!is_one || !has_var) s += compound ? "(" + cs + ")" : cs;
      bool first_var = is_one;
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first_var) s += "*";
        first_var = false;
        s += names[i];
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
      }
    }
    return s;
  }

 private:
  void check_compatible(const Form& o) const {
    if (nvars_ != o.nvars_ || degree_ != o.degree_)
      fail(ErrorCode::invalid_input, "adding forms of different degree or variable count");
  }

  int nvars_ = 3;
  int degree_ = 0;
  std::map<Exponent, K> terms_;
};

using PlaneForm = Form<Qsqrt>;

inline const std::vector<std::string>& xyz_names() {
  static const std::vector<std::string> n{"x", "y", "z"};
  return n;
}
inline std::vector<std::string> indexed_names(int nvars) {
  std::vector<std::string> n;
  for (int i = 0; i < nvars; ++i) n.push_back("x" + std::to_string(i));
  return n;
}

/// 3x3 rational matrix helpers for projective coordinate changes.
using Mat3 = std::array<std::array<Rational, 3>, 3>;

inline Mat3 identity3() {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = i == j ? 1 : 0;
  return m;
}
inline Rational det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}
inline Mat3 inverse3(const Mat3& m) {
  Rational d = det3(m);
  if (d == 0) fail(ErrorCode::internal, "singular coordinate change");
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      r[i][j] = (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) / d;
    }
  return r;
}
inline Mat3 mul3(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      r[i][j] = 0;
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}
template <class T>
std::array<T, 3> apply3(const Mat3& m, const std::array<T, 3>& v) {
  std::array<T, 3> r;
  for (int i = 0; i < 3; ++i) {
    T acc = T(m[i][0]) * v[0];
    acc = acc + T(m[i][1]) * v[1];
    acc = acc + T(m[i][2]) * v[2];
    r[i] = acc;
  }
  return r;
}

}  // namespace realsep
