#pragma once

#include <map>
#include <numeric>
#include <set>

#include "realsep/pencil/pencil.hpp"

namespace realsep {

struct CombineResult {
  Pencil pencil;
  SeparationCertificate certificate;
  bool flipped = false;  // second pencil used as (B0, -B1)
};

/// Product of two separating pencils, (A0 B0 - A1 B1 : A0 B1 + A1 B0). The
/// orientation of the second pencil is resolved by trying both signs.
inline CombineResult combine(const Pencil& p, const Pencil& q, const DivisorOptions& opt = {}) {
  if (p.topo.get() != q.topo.get() && !(p.F() == q.F()))
    fail(ErrorCode::invalid_input, "combine: pencils live on different curves");
  auto cp = check_separating(p), cq = check_separating(q);
  if (!cp.separating || !cq.separating) fail(ErrorCode::not_separating, "combine needs two separating pencils");
  std::vector<int> expected = cp.partition;
  for (size_t i = 0; i < expected.size(); ++i) expected[i] += cq.partition[i];
  for (bool flip : {false, true}) {
    PlaneForm B1 = flip ? -q.G1 : q.G1;
    PlaneForm H0 = p.G0 * q.G0 - p.G1 * B1, H1 = p.G0 * B1 + p.G1 * q.G0;
    CombineResult r{make_pencil(p.topo, H0, H1, opt), {}, flip};
    r.certificate = check_separating(r.pencil);
    if (!r.certificate.separating) continue;
    if (r.certificate.partition != expected) fail(ErrorCode::internal, "combined partition is not the sum of the inputs");
    return r;
  }
  fail(ErrorCode::internal, "neither orientation of the product pencil is separating");
}

/// Sep(X) of an M-curve of genus g is all of N^(g+1).
inline bool mcurve_sep_membership(int g, const std::vector<int>& d) {
  if (static_cast<int>(d.size()) != g + 1) return false;
  return std::all_of(d.begin(), d.end(), [](int x) { return x >= 1; });
}

/// Hyp(X) of an M-curve: N for g = 0, N^2 minus (1,1) for g = 1, and
/// {d : |d| >= g + 3} for g > 1.
inline bool mcurve_hyp_membership(int g, const std::vector<int>& d) {
  if (g < 0 || static_cast<int>(d.size()) != g + 1)
    fail(ErrorCode::invalid_input, "mcurve_hyp_membership: expected " + std::to_string(g + 1) + " entries");
  if (!std::all_of(d.begin(), d.end(), [](int x) { return x >= 1; })) return false;
  if (g == 0) return true;
  if (g == 1) return !(d[0] == 1 && d[1] == 1);
  return std::accumulate(d.begin(), d.end(), 0) >= g + 3;
}

/// d + N^r lies in Sep(X) when |d| + (number of odd entries) >= 2g - 1.
inline bool orthant_guarantee(int g, const std::vector<int>& d) {
  int sum = 0, odd = 0;
  for (int x : d) {
    sum += x;
    odd += x % 2 != 0;
  }
  return sum + odd >= 2 * g - 1;
}

enum class SemigroupKind { sep, hyp };
enum class Membership { verified, implied, unknown };

inline std::string to_string(SemigroupKind k) { return k == SemigroupKind::sep ? "sep" : "hyp"; }
inline std::string to_string(Membership m) {
  return m == Membership::verified ? "Verified" : m == Membership::implied ? "Implied" : "Unknown";
}

struct SemigroupElement {
  std::vector<int> d;
  SemigroupKind kind = SemigroupKind::sep;
  std::string id;          // certificate id
  std::string provenance;  // verified(...), implied(...), oracle(...)
};

struct LedgerAnswer {
  Membership status = Membership::unknown;
  std::string provenance;
};

/// Verified elements of Sep(X) and Hyp(X) for one curve, with queries over
/// their additive closure. Mutations are single-writer; queries are const.
class SemigroupLedger {
 public:
  SemigroupLedger() = default;
  SemigroupLedger(std::string curve, int genus, int components)
      : curve_(std::move(curve)), genus_(genus), r_(components) {}

  const std::string& curve() const { return curve_; }
  int genus() const { return genus_; }
  int components() const { return r_; }
  const std::vector<SemigroupElement>& elements() const { return elements_; }

  void add(SemigroupElement e) {
    if (static_cast<int>(e.d.size()) != r_)
      fail(ErrorCode::invalid_input, "ledger element has " + std::to_string(e.d.size()) + " entries, curve has " +
                                         std::to_string(r_) + " components");
    if (!std::all_of(e.d.begin(), e.d.end(), [](int x) { return x >= 1; }))
      fail(ErrorCode::invalid_input, "ledger entries must be positive");
    for (const auto& x : elements_)
      if (x.id == e.id && x.kind == e.kind) fail(ErrorCode::invalid_input, "duplicate ledger id " + e.id);
    if (e.provenance.empty()) e.provenance = "verified(" + e.id + ")";
    elements_.push_back(std::move(e));
  }

  /// Record a separating certificate; also records it in Hyp when the
  /// pencil is base-point-free on X and the line bundle has degree n k >= 2g + 1.
  void add_certificate(const SeparationCertificate& c, const std::string& id) {
    if (!c.separating) fail(ErrorCode::not_separating, "only separating certificates enter the ledger");
    add({c.partition, SemigroupKind::sep, id, ""});
    if (c.base_multiplicity == 0 && c.curve_degree * c.k >= 2 * genus_ + 1)
      add({c.partition, SemigroupKind::hyp, id, "verified(" + id + ", very ample)"});
  }

  LedgerAnswer query(const std::vector<int>& d, SemigroupKind kind = SemigroupKind::sep) const {
    if (static_cast<int>(d.size()) != r_)
      fail(ErrorCode::invalid_input, "query has " + std::to_string(d.size()) + " entries, curve has " +
                                         std::to_string(r_) + " components");
    std::vector<const SemigroupElement*> gens;
    for (const auto& e : elements_)
      if (e.kind == kind) gens.push_back(&e);
    for (const auto* e : gens)
      if (e->d == d) return {Membership::verified, e->provenance};
    std::map<std::vector<int>, std::optional<std::vector<std::string>>> memo;
    if (auto ids = decompose(d, gens, memo)) return {Membership::implied, "implied(sum " + join(*ids) + ")"};
    if (kind == SemigroupKind::sep) {
      // an element of the closure below d carrying the orthant guarantee
      for (const auto& [v, ids] : closure_below(d, gens))
        if (orthant_guarantee(genus_, v))
          return {Membership::implied, "implied(orthant from sum " + join(ids) + ")"};
    }
    return {Membership::unknown, ""};
  }

 private:
  static bool dominated(const std::vector<int>& a, const std::vector<int>& b) {
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] > b[i]) return false;
    return true;
  }
  static std::string join(const std::vector<std::string>& ids) {
    std::string s;
    for (const auto& id : ids) s += (s.empty() ? "" : " + ") + id;
    return s;
  }
  static std::optional<std::vector<std::string>> decompose(
      const std::vector<int>& d, const std::vector<const SemigroupElement*>& gens,
      std::map<std::vector<int>, std::optional<std::vector<std::string>>>& memo) {
    if (std::all_of(d.begin(), d.end(), [](int x) { return x == 0; })) return std::vector<std::string>{};
    if (auto it = memo.find(d); it != memo.end()) return it->second;
    memo[d] = std::nullopt;
    for (const auto* e : gens) {
      if (!dominated(e->d, d)) continue;
      std::vector<int> rest = d;
      for (size_t i = 0; i < d.size(); ++i) rest[i] -= e->d[i];
      if (auto ids = decompose(rest, gens, memo)) {
        ids->insert(ids->begin(), e->id);
        memo[d] = ids;
        return ids;
      }
    }
    return std::nullopt;
  }
  static std::map<std::vector<int>, std::vector<std::string>> closure_below(
      const std::vector<int>& d, const std::vector<const SemigroupElement*>& gens) {
    std::map<std::vector<int>, std::vector<std::string>> seen;
    std::vector<std::vector<int>> frontier;
    for (const auto* e : gens)
      if (dominated(e->d, d) && !seen.count(e->d)) {
        seen[e->d] = {e->id};
        frontier.push_back(e->d);
      }
    while (!frontier.empty()) {
      auto v = frontier.back();
      frontier.pop_back();
      for (const auto* e : gens) {
        std::vector<int> w = v;
        for (size_t i = 0; i < w.size(); ++i) w[i] += e->d[i];
        if (!dominated(w, d) || seen.count(w)) continue;
        auto ids = seen[v];
        ids.push_back(e->id);
        seen[w] = ids;
        frontier.push_back(w);
      }
    }
    return seen;
  }

  std::string curve_;
  int genus_ = 0;
  int r_ = 0;
  std::vector<SemigroupElement> elements_;
};

}  // namespace realsep
