#pragma once

#include <vector>

#include "realsep/exactnum/form.hpp"

namespace realsep {

/// Bivariate polynomial in (u, v), stored as coefficients of v^j, each a
/// univariate polynomial in u. Produced by dehomogenizing a plane form.
template <OrderedField K>
class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(std::vector<UPoly<K>> by_v) : by_v_(std::move(by_v)) { trim(); }

  /// F(u, v, 1) where the form's variables are (u, v, w).
  static BiPoly dehomogenize(const Form<K>& f) {
    if (f.nvars() != 3) fail(ErrorCode::invalid_input, "dehomogenize expects a ternary form");
    std::vector<std::vector<K>> c;
    for (const auto& [e, k] : f.terms()) {
      size_t j = static_cast<size_t>(e[1]), i = static_cast<size_t>(e[0]);
      if (c.size() <= j) c.resize(j + 1);
      if (c[j].size() <= i) c[j].resize(i + 1, K(0));
      c[j][i] += k;
    }
    std::vector<UPoly<K>> by_v;
    for (auto& col : c) by_v.emplace_back(std::move(col));
    BiPoly b(std::move(by_v));
    b.total_degree_ = f.degree();
    return b;
  }

  int degree_v() const { return static_cast<int>(by_v_.size()) - 1; }
  int degree_u() const {
    int d = -1;
    for (const auto& p : by_v_) d = std::max(d, p.degree());
    return d;
  }
  /// Total degree of the originating form (upper bound on u^i v^j degree).
  int total_degree() const { return total_degree_ >= 0 ? total_degree_ : degree_u() + degree_v(); }
  bool is_zero() const { return by_v_.empty(); }
  const std::vector<UPoly<K>>& coeffs_v() const { return by_v_; }
  const UPoly<K>& coeff_v(int j) const {
    static const UPoly<K> zero;
    return j >= 0 && j <= degree_v() ? by_v_[static_cast<size_t>(j)] : zero;
  }

  /// Polynomial in v after fixing u.
  UPoly<K> at_u(const K& u) const {
    std::vector<K> c;
    for (const auto& p : by_v_) c.push_back(p.eval(u));
    return UPoly<K>(std::move(c));
  }
  /// Polynomial in u after fixing v.
  UPoly<K> at_v(const K& v) const {
    UPoly<K> acc;
    for (int j = degree_v(); j >= 0; --j) acc = UPoly<K>::constant(v) * acc + by_v_[static_cast<size_t>(j)];
    return acc;
  }
  K eval(const K& u, const K& v) const { return at_u(u).eval(v); }
  Ball eval(const Ball& u, const Ball& v) const {
    unsigned p = std::max(u.precision(), v.precision());
    Ball acc(Rational(0), p);
    for (int j = degree_v(); j >= 0; --j) acc = acc * v + by_v_[static_cast<size_t>(j)].eval(u);
    return acc;
  }

  BiPoly d_du() const {
    std::vector<UPoly<K>> r;
    for (const auto& p : by_v_) r.push_back(p.derivative());
    BiPoly b(std::move(r));
    b.total_degree_ = total_degree() - 1;
    return b;
  }
  BiPoly d_dv() const {
    std::vector<UPoly<K>> r;
    for (size_t j = 1; j < by_v_.size(); ++j) r.push_back(K(static_cast<long>(j)) * by_v_[j]);
    BiPoly b(std::move(r));
    b.total_degree_ = total_degree() - 1;
    return b;
  }

  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<UPoly<K>> r(a.by_v_.size() + b.by_v_.size() - 1);
    for (size_t i = 0; i < a.by_v_.size(); ++i)
      for (size_t j = 0; j < b.by_v_.size(); ++j) r[i + j] += a.by_v_[i] * b.by_v_[j];
    BiPoly out(std::move(r));
    out.total_degree_ = a.total_degree() + b.total_degree();
    return out;
  }
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
    std::vector<UPoly<K>> r(std::max(a.by_v_.size(), b.by_v_.size()));
    for (size_t i = 0; i < a.by_v_.size(); ++i) r[i] += a.by_v_[i];
    for (size_t i = 0; i < b.by_v_.size(); ++i) r[i] -= b.by_v_[i];
    BiPoly out(std::move(r));
    out.total_degree_ = std::max(a.total_degree(), b.total_degree());
    return out;
  }

 private:
  void trim() {
    while (!by_v_.empty() && by_v_.back().is_zero()) by_v_.pop_back();
  }
  std::vector<UPoly<K>> by_v_;
  int total_degree_ = -1;
};

}  // namespace realsep
