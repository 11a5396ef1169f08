#pragma once

#include <map>
#include <mutex>
#include <string>

#include "realsep/hyperbolic/hyperbolic.hpp"

namespace fixtures {

inline std::string data(const std::string& name) { return std::string(REALSEP_DATA_DIR) + "/" + name; }

inline realsep::PlaneForm curve(const std::string& name) {
  return realsep::parse_poly_text(realsep::read_text_file(data(name + ".poly")), 3);
}

/// Topologies are computed once per process.
inline std::shared_ptr<const realsep::CurveTopology> topology(const std::string& name) {
  static std::map<std::string, std::shared_ptr<const realsep::CurveTopology>> cache;
  static std::mutex m;
  std::lock_guard lock(m);
  auto& t = cache[name];
  if (!t) t = std::make_shared<const realsep::CurveTopology>(realsep::compute_topology(curve(name), {}));
  return t;
}

inline std::pair<realsep::PlaneForm, realsep::PlaneForm> pencil_file(const std::string& name) {
  auto forms = realsep::parse_form_list(realsep::read_text_file(data("pencils/" + name + ".txt")), 3);
  return {forms.at(0), forms.at(1)};
}

inline realsep::Pencil pencil(const std::string& curve_name, const std::string& name) {
  auto [g0, g1] = pencil_file(name);
  return realsep::make_pencil(topology(curve_name), g0, g1);
}

inline realsep::PlaneForm form(const std::string& s) { return realsep::parse_form(s, 3); }

}  // namespace fixtures
