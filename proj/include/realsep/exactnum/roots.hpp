#pragma once

#include <memory>
#include <vector>

#include "realsep/exactnum/upoly.hpp"

namespace realsep {

/// Isolating interval for one distinct real root.
///
/// Either lo == hi (the root is that rational number), or lo < hi with the
/// root strictly inside and the square-free defining polynomial nonzero with
/// opposite signs at both endpoints.
struct IsolatingInterval {
  Rational lo, hi;
  int multiplicity = 1;

  bool exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool disjoint_from(const IsolatingInterval& o) const { return hi < o.lo || o.hi < lo; }
};

template <OrderedField K>
class SturmSequence {
 public:
  /// `p` must be square-free (checked loosely by callers).
  explicit SturmSequence(const UPoly<K>& p) {
    if (p.is_zero()) fail(ErrorCode::invalid_input, "Sturm sequence of zero polynomial");
    seq_.push_back(p.sign_normalized());
    UPoly<K> d = p.derivative();
    if (d.is_zero()) return;
    seq_.push_back(d.sign_normalized());
    while (true) {
      UPoly<K> r = seq_[seq_.size() - 2].rem(seq_.back());
      if (r.is_zero()) break;
      seq_.push_back((-r).sign_normalized());
    }
  }

  const UPoly<K>& poly() const { return seq_.front(); }
  const std::vector<UPoly<K>>& members() const { return seq_; }

  int variations_at(const Rational& x) const {
    std::vector<Sign> s;
    s.reserve(seq_.size());
    for (const auto& q : seq_) s.push_back(q.sign_at(x));
    return count(s);
  }
  int variations_at_neg_inf() const {
    std::vector<Sign> s;
    for (const auto& q : seq_) s.push_back(q.sign_at_neg_inf());
    return count(s);
  }
  int variations_at_pos_inf() const {
    std::vector<Sign> s;
    for (const auto& q : seq_) s.push_back(q.sign_at_pos_inf());
    return count(s);
  }
  /// Distinct roots in the half-open interval (a, b].
  int count_half_open(const Rational& a, const Rational& b) const {
    return variations_at(a) - variations_at(b);
  }
  int count_all() const { return variations_at_neg_inf() - variations_at_pos_inf(); }

 private:
  static int count(const std::vector<Sign>& s) {
    int v = 0;
    Sign prev = Sign::zero;
    for (Sign x : s) {
      if (x == Sign::zero) continue;
      if (prev != Sign::zero && x != prev) ++v;
      prev = x;
    }
    return v;
  }
  std::vector<UPoly<K>> seq_;
};

/// Bisect a sign-change interval of a square-free polynomial until its width
/// is at most `width` (or it collapses onto an exact rational root).
template <OrderedField K>
void refine_interval(const UPoly<K>& p, IsolatingInterval& iv, const Rational& width) {
  if (iv.exact()) return;
  Sign slo = p.sign_at(iv.lo);
  while (iv.hi - iv.lo > width) {
    Rational m = iv.mid();
    Sign sm = p.sign_at(m);
    if (sm == Sign::zero) {
      iv.lo = iv.hi = m;
      return;
    }
    if (sm == slo) iv.lo = m;
    else iv.hi = m;
  }
}

template <OrderedField K>
void refine_interval_bits(const UPoly<K>& p, IsolatingInterval& iv, unsigned bits) {
  refine_interval(p, iv, mul_2exp(Rational(1), -static_cast<long>(bits)));
}

namespace detail {
template <OrderedField K>
void isolate_rec(const UPoly<K>& p, const SturmSequence<K>& st, Rational lo, Rational hi, int vlo,
                 int vhi, std::vector<IsolatingInterval>& out) {
  int cnt = vlo - vhi;  // roots in (lo, hi]
  if (cnt <= 0) return;
  if (cnt == 1) {
    while (true) {
      if (p.sign_at(hi) == Sign::zero) {
        out.push_back({hi, hi, 1});
        return;
      }
      if (p.sign_at(lo) != Sign::zero) {
        out.push_back({lo, hi, 1});
        return;
      }
      Rational m = (lo + hi) / 2;
      int vm = st.variations_at(m);
      if (vlo - vm == 1) {
        hi = m;
        vhi = vm;
      } else {
        lo = m;
        vlo = vm;
      }
    }
  }
  Rational m = (lo + hi) / 2;
  int vm = st.variations_at(m);
  isolate_rec(p, st, lo, m, vlo, vm, out);
  isolate_rec(p, st, m, hi, vm, vhi, out);
}
}  // namespace detail

/// Isolate the real roots of a square-free polynomial, sorted ascending.
template <OrderedField K>
std::vector<IsolatingInterval> isolate_squarefree(const UPoly<K>& p) {
  std::vector<IsolatingInterval> out;
  if (p.degree() < 1) return out;
  SturmSequence<K> st(p);
  Rational b = p.root_bound();
  detail::isolate_rec(st.poly(), st, Rational(-b), b, st.variations_at(-b), st.variations_at(b), out);
  return out;
}

/// All distinct real roots with multiplicities, pairwise disjoint, ascending.
template <OrderedField K>
std::vector<IsolatingInterval> isolate_real_roots(const UPoly<K>& p) {
  if (p.is_zero()) fail(ErrorCode::invalid_input, "isolate_real_roots: zero polynomial");
  struct Tagged {
    IsolatingInterval iv;
    size_t factor;
  };
  auto factors = squarefree_decomposition(p);
  std::vector<Tagged> all;
  for (size_t f = 0; f < factors.size(); ++f) {
    for (auto iv : isolate_squarefree(factors[f].factor)) {
      iv.multiplicity = factors[f].multiplicity;
      all.push_back({iv, f});
    }
  }
  // Roots of different factors are distinct: refine overlapping pairs apart.
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < all.size(); ++i)
      for (size_t j = i + 1; j < all.size(); ++j) {
        if (all[i].iv.disjoint_from(all[j].iv)) continue;
        changed = true;
        for (auto* t : {&all[i], &all[j]}) {
          if (!t->iv.exact())
            refine_interval(factors[t->factor].factor, t->iv, t->iv.width() / 4);
        }
      }
  }
  std::sort(all.begin(), all.end(), [](const Tagged& a, const Tagged& b) { return a.iv.lo < b.iv.lo; });
  std::vector<IsolatingInterval> out;
  for (auto& t : all) out.push_back(t.iv);
  return out;
}

/// Result of counting roots on a closed interval.
struct RootCount {
  int count = 0;                 // distinct roots in [a, b]
  bool lower_endpoint_root = false;
  bool upper_endpoint_root = false;
};

/// Exact number of distinct real roots in the closed interval [a, b].
/// Endpoint roots are divided out exactly and reported in the metadata.
template <OrderedField K>
RootCount count_real_roots_in(const UPoly<K>& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) fail(ErrorCode::invalid_input, "count_real_roots_in: zero polynomial");
  if (a > b) fail(ErrorCode::invalid_input, "count_real_roots_in: empty interval");
  RootCount rc;
  UPoly<K> q = squarefree_part(p);
  if (q.sign_at(a) == Sign::zero) {
    rc.lower_endpoint_root = true;
    q = q.exact_div(UPoly<K>::linear_root(K(a)));
    ++rc.count;
  }
  if (b != a && q.sign_at(b) == Sign::zero) {
    rc.upper_endpoint_root = true;
    q = q.exact_div(UPoly<K>::linear_root(K(b)));
    ++rc.count;
  }
  if (a == b || q.degree() < 1) return rc;
  SturmSequence<K> st(q);
  rc.count += st.count_half_open(a, b);
  return rc;
}

/// Number of distinct real roots on the whole line.
template <OrderedField K>
int count_real_roots(const UPoly<K>& p) {
  UPoly<K> q = squarefree_part(p);
  if (q.degree() < 1) return 0;
  return SturmSequence<K>(q).count_all();
}

/// A real algebraic number: a root of a square-free polynomial, pinned by an
/// isolating interval. Refinement is explicit and returns a copy.
template <OrderedField K>
struct RealRoot {
  std::shared_ptr<const UPoly<K>> poly;
  IsolatingInterval iv;

  RealRoot refined(unsigned bits) const {
    RealRoot r = *this;
    refine_interval_bits(*poly, r.iv, bits);
    return r;
  }
  /// Enclosure at `prec` bits (interval refined to at least that width).
  Ball ball(unsigned prec) const {
    RealRoot r = refined(prec);
    return Ball(r.iv.lo, r.iv.hi, prec);
  }
};

}  // namespace realsep
