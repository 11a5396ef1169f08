#pragma once

#include <set>

#include "realsep/io/json.hpp"

namespace realsep::io {

/// Replays a stored certificate from its witness data alone. Returns the
/// list of problems found; an empty list means the certificate checks out.
class Verifier {
 public:
  std::vector<std::string> problems;

  void verify(const json& j) {
    if (!j.is_object() || !j.contains("schema") || !j["schema"].is_string()) {
      problem("", "missing schema field");
      return;
    }
    const std::string schema = j["schema"];
    if (schema == "realsep.separation/1")
      separation(j, "");
    else if (schema == "realsep.hyperbolic/1")
      hyperbolic(j);
    else
      problem("schema", "unsupported schema " + schema);
  }

 private:
  void problem(const std::string& where, const std::string& what) {
    problems.push_back((where.empty() ? "" : where + ": ") + what);
  }

  bool keys(const json& j, const std::string& where, const std::set<std::string>& required,
            const std::set<std::string>& optional = {}) {
    if (!j.is_object()) {
      problem(where, "expected an object");
      return false;
    }
    bool ok = true;
    for (const auto& [k, v] : j.items())
      if (!required.count(k) && !optional.count(k)) {
        problem(where, "unknown field '" + k + "'");
        ok = false;
      }
    for (const auto& k : required)
      if (!j.contains(k)) {
        problem(where, "missing field '" + k + "'");
        ok = false;
      }
    return ok;
  }

  bool box(const json& b, const std::string& where) {
    if (!b.is_array() || b.size() != 3) {
      problem(where, "box must have three coordinates");
      return false;
    }
    for (const auto& c : b) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string()) {
        problem(where, "box coordinate must be [lo, hi]");
        return false;
      }
      try {
        if (parse_rat(c[0]) > parse_rat(c[1])) problem(where, "box coordinate with lo > hi");
      } catch (const Error& e) {
        problem(where, e.what());
        return false;
      }
    }
    return true;
  }

  void point(const json& p, const std::string& where, bool sequence) {
    std::set<std::string> req{"real", "multiplicity", "approx"};
    if (sequence) req.insert("form");
    if (!keys(p, where, req, {"component", "box"})) return;
    if (p["real"].get<bool>() && (!p.contains("box") || !p.contains("component")))
      problem(where, "real point without box or component");
    if (p.contains("box")) box(p["box"], where);
  }

  int separation(const json& j, const std::string& where) {
    if (!keys(j, where, {"schema", "curve", "pencil", "verdict", "partition", "genus", "r", "r_plus_g_odd", "degrees",
                         "components", "component_order", "base_points", "sequences", "refutation", "toolchain"}))
      return -1;
    const json& deg = j["degrees"];
    if (!keys(deg, where + "degrees", {"curve", "forms", "base_multiplicity", "residual"})) return -1;
    const int residual = deg["residual"];
    if (residual != deg["curve"].get<int>() * deg["forms"].get<int>() - deg["base_multiplicity"].get<int>())
      problem(where + "degrees", "residual degree is not n*k minus the base multiplicity");
    const int r = j["r"], g = j["genus"];
    if (j["r_plus_g_odd"].get<bool>() != ((r + g) % 2 == 1)) problem(where + "r_plus_g_odd", "inconsistent parity flag");
    if (!j["components"].is_array() || static_cast<int>(j["components"].size()) != r)
      problem(where + "components", "component table does not have r entries");
    for (size_t i = 0; i < j["base_points"].size(); ++i)
      point(j["base_points"][i], where + "base_points[" + std::to_string(i) + "]", false);
    const std::string verdict = j["verdict"];
    if (verdict == "not_separating") {
      if (j["refutation"].is_null()) problem(where + "refutation", "refuted certificate without a witness");
      else if (keys(j["refutation"], where + "refutation", {"kind", "detail", "component", "form", "approx"}, {"box"})) {
        static const std::set<std::string> kinds{"non_real_zero", "multiple_zero", "empty_component", "alternation"};
        if (!kinds.count(j["refutation"]["kind"].get<std::string>()))
          problem(where + "refutation", "unknown refutation kind");
      }
      if (!j["partition"].empty()) problem(where + "partition", "refuted certificate with a partition");
      return -1;
    }
    if (verdict != "separating") {
      problem(where + "verdict", "unknown verdict " + verdict);
      return -1;
    }
    if (!j["refutation"].is_null()) problem(where + "refutation", "separating certificate with a refutation");
    if (!j["r_plus_g_odd"].get<bool>()) problem(where + "r_plus_g_odd", "separating certificate with r + g even");
    const json& seqs = j["sequences"];
    const json& part = j["partition"];
    if (!seqs.is_array() || static_cast<int>(seqs.size()) != r || !part.is_array() || static_cast<int>(part.size()) != r) {
      problem(where + "sequences", "expected one sequence and one partition entry per component");
      return -1;
    }
    int sum = 0;
    for (int i = 0; i < r; ++i) {
      const std::string w = where + "sequences[" + std::to_string(i) + "]";
      const json& seq = seqs[static_cast<size_t>(i)];
      int zeros0 = 0;
      for (size_t k = 0; k < seq.size(); ++k) {
        const json& z = seq[k];
        point(z, w + "[" + std::to_string(k) + "]", true);
        if (!z.contains("form")) continue;
        if (!z["real"].get<bool>() || z["multiplicity"].get<int>() != 1) problem(w, "zero is not real and simple");
        if (z.contains("component") && z["component"].get<int>() != i) problem(w, "zero filed under the wrong component");
        zeros0 += z["form"].get<int>() == 0;
        const json& next = seq[(k + 1) % seq.size()];
        if (next.contains("form") && next["form"] == z["form"]) problem(w, "zeros of one form are adjacent");
      }
      if (zeros0 != static_cast<int>(seq.size()) - zeros0) problem(w, "unequal numbers of zeros of G0 and G1");
      const int d = part[static_cast<size_t>(i)];
      if (d != zeros0) problem(where + "partition", "entry " + std::to_string(i) + " differs from the zero count");
      if (d < 1) problem(where + "partition", "entry " + std::to_string(i) + " is not positive");
      sum += d;
    }
    if (sum != residual) problem(where + "partition", "partition does not sum to the residual degree");
    return sum;
  }

  void hyperbolic(const json& j) {
    if (!keys(j, "", {"schema", "curve", "map", "center", "verdict", "reason", "partition", "winding",
                      "winding_convention", "witness", "pencil", "toolchain"}))
      return;
    keys(j["center"], "center", {"a", "b"});
    const std::string verdict = j["verdict"];
    if (verdict == "not_hyperbolic") {
      if (j["reason"].get<std::string>().empty()) problem("reason", "refuted certificate without a reason");
      if (!j["pencil"].is_null()) separation(j["pencil"], "pencil.");
      return;
    }
    if (verdict != "hyperbolic") {
      problem("verdict", "unknown verdict " + verdict);
      return;
    }
    if (j["pencil"].is_null()) {
      problem("pencil", "hyperbolic certificate without a pencil certificate");
      return;
    }
    if (j["pencil"]["verdict"] != "separating") problem("pencil", "pulled-back pencil is not separating");
    if (!j["pencil"]["base_points"].empty()) problem("pencil", "center meets the curve");
    int sum = separation(j["pencil"], "pencil.");
    const json& w = j["winding"];
    const json& d = j["partition"];
    if (w.size() != d.size() || d != j["pencil"]["partition"]) {
      problem("partition", "partition differs from the pencil certificate");
      return;
    }
    int total = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      if (std::abs(w[i].get<int>()) != d[i].get<int>()) problem("winding", "|w_" + std::to_string(i) + "| != d_" + std::to_string(i));
      total += std::abs(w[i].get<int>());
    }
    if (total != sum) problem("winding", "winding numbers do not sum to the degree");
  }
};

inline std::vector<std::string> verify_certificate(const json& j) {
  Verifier v;
  try {
    v.verify(j);
  } catch (const json::exception& e) {
    v.problems.push_back(std::string("malformed certificate: ") + e.what());
  }
  return v.problems;
}

}  // namespace realsep::io
