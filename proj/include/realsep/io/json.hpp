#pragma once

#include <json.hpp>

#include "realsep/hyperbolic/hyperbolic.hpp"
#include "realsep/semigroup/semigroup.hpp"

namespace realsep::io {

// nlohmann::json keeps object keys in sorted order, so dump() is canonical.
using json = nlohmann::json;

inline constexpr const char* kToolName = "realsep";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kComponentOrder =
    "ovals by nesting depth (innermost first), then leftmost fold in the sweep chart; pseudoline last";
inline constexpr const char* kWindingConvention =
    "signed degree of (A:B) from each component to RP^1, traced once along the sweep traversal";

inline json toolchain() { return {{"name", kToolName}, {"version", kToolVersion}}; }

inline std::string rat(const Rational& q) { return q.get_str(); }

inline Rational parse_rat(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) fail(ErrorCode::parse_error, "not a rational number: " + s);
  q.canonicalize();
  return q;
}

inline std::string form_text(const PlaneForm& f) { return f.str(xyz_names()); }

inline json box_json(const Box3& b) {
  json out = json::array();
  for (const auto& c : b) out.push_back(json::array({rat(c.lo()), rat(c.hi())}));
  return out;
}

inline json approx_json(const std::array<cdouble, 3>& p, bool real) {
  json out = json::array();
  for (const auto& c : p) {
    if (real)
      out.push_back(c.real());
    else
      out.push_back(json::array({c.real(), c.imag()}));
  }
  return out;
}

inline json point_json(const DivisorPoint& p, unsigned box_bits = 64) {
  json j{{"real", p.real}, {"multiplicity", p.multiplicity}, {"approx", approx_json(p.approx, p.real)}};
  if (p.real) {
    j["component"] = p.component;
    j["box"] = box_json(p.point->enclose(box_bits));
  }
  return j;
}

inline json components_json(const CurveTopology& T) {
  json out = json::array();
  for (size_t i = 0; i < T.components.size(); ++i) {
    const auto& c = T.components[i];
    out.push_back({{"index", i}, {"type", to_string(c.type)}, {"depth", c.depth}});
  }
  return out;
}

inline json topology_json(const CurveTopology& T) {
  return {{"schema", "realsep.topology/1"},
          {"curve", form_text(T.F)},
          {"degree", T.degree},
          {"genus", T.genus},
          {"r", T.components.size()},
          {"sweep_chart", T.chart.describe()},
          {"critical_values", T.critical.size()},
          {"all_ovals_bounded", T.all_ovals_bounded},
          {"components", components_json(T)},
          {"component_order", kComponentOrder},
          {"toolchain", toolchain()}};
}

inline json separation_json(const Pencil& p, const SeparationCertificate& c) {
  json j;
  j["schema"] = "realsep.separation/1";
  j["curve"] = form_text(p.F());
  j["pencil"] = json::array({form_text(p.G0), form_text(p.G1)});
  j["verdict"] = c.separating ? "separating" : "not_separating";
  j["partition"] = c.partition;
  j["genus"] = c.genus;
  j["r"] = c.components;
  j["r_plus_g_odd"] = c.parity_odd;
  j["degrees"] = {{"curve", c.curve_degree},
                  {"forms", c.k},
                  {"base_multiplicity", c.base_multiplicity},
                  {"residual", c.curve_degree * c.k - c.base_multiplicity}};
  j["components"] = components_json(*p.topo);
  j["component_order"] = kComponentOrder;
  json base = json::array();
  for (const auto& b : p.base.points) base.push_back(point_json(b));
  j["base_points"] = base;
  json seqs = json::array();
  for (const auto& seq : c.sequences) {
    json s = json::array();
    for (const auto& z : seq) {
      json e = point_json(z.point);
      e["form"] = z.form;
      s.push_back(e);
    }
    seqs.push_back(s);
  }
  j["sequences"] = seqs;
  if (c.refutation) {
    const auto& r = *c.refutation;
    json w{{"kind", r.kind}, {"detail", r.detail}, {"component", r.component}, {"form", r.form}};
    bool real = r.kind != "non_real_zero";
    w["approx"] = approx_json(r.approx, real);
    if (r.point) w["box"] = box_json(r.point->enclose(64));
    j["refutation"] = w;
  } else {
    j["refutation"] = nullptr;
  }
  j["toolchain"] = toolchain();
  return j;
}

inline json center_json(const ProjectionCenter& c) {
  json a = json::array(), b = json::array();
  for (const auto& x : c.a) a.push_back(rat(x));
  for (const auto& x : c.b) b.push_back(rat(x));
  return {{"a", a}, {"b", b}};
}

inline json hyperbolic_json(const EmbeddingMap& m, const HyperbolicityCertificate& c, const Pencil* p) {
  json forms = json::array();
  for (const auto& v : m.forms) forms.push_back(form_text(v));
  json j{{"schema", "realsep.hyperbolic/1"},
         {"curve", form_text(m.topo->F)},
         {"map", forms},
         {"center", center_json(c.center)},
         {"verdict", c.hyperbolic ? "hyperbolic" : "not_hyperbolic"},
         {"reason", c.reason},
         {"partition", c.partition},
         {"winding", c.winding},
         {"winding_convention", kWindingConvention},
         {"toolchain", toolchain()}};
  json wit = json::array();
  for (const auto& w : c.witness) wit.push_back(point_json(w));
  j["witness"] = wit;
  j["pencil"] = (c.pencil && p) ? separation_json(*p, *c.pencil) : json(nullptr);
  return j;
}

inline json locus_json(const EmbeddingMap& m, const LocusReport& r) {
  json forms = json::array();
  for (const auto& v : m.forms) forms.push_back(form_text(v));
  json recs = json::array();
  for (const auto& x : r.records)
    recs.push_back({{"center", center_json(x.center)}, {"verdict", x.verdict}, {"partition", x.partition}, {"witness", x.witness}});
  return {{"schema", "realsep.locus/1"},
          {"curve", form_text(m.topo->F)},
          {"map", forms},
          {"grid", r.grid},
          {"seed", r.seed},
          {"records", recs},
          {"partitions", r.partitions},
          {"disconnected", r.disconnected},
          {"note", "distinct partitions bound the number of connected components of the locus from below"},
          {"toolchain", toolchain()}};
}

inline json error_json(const Error& e) {
  return {{"schema", "realsep.error/1"}, {"code", to_string(e.code())}, {"message", e.what()}};
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace realsep::io
