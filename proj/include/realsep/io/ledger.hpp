#pragma once

#include <filesystem>
#include <fstream>

#include "realsep/io/json.hpp"

namespace realsep::io {

/// Ledger directory layout: index.json plus one certificate file per
/// verified element, named <id>.json.
inline void save_ledger(const SemigroupLedger& L, const std::filesystem::path& dir,
                        const std::map<std::string, json>& certificates) {
  std::filesystem::create_directories(dir);
  json elems = json::array();
  for (const auto& e : L.elements()) {
    json x{{"id", e.id}, {"kind", to_string(e.kind)}, {"d", e.d}, {"provenance", e.provenance}};
    if (auto it = certificates.find(e.id); it != certificates.end()) {
      x["certificate"] = e.id + ".json";
      std::ofstream(dir / (e.id + ".json")) << dump(it->second);
    } else {
      x["certificate"] = nullptr;
    }
    elems.push_back(x);
  }
  json index{{"schema", "realsep.ledger/1"},
             {"curve", L.curve()},
             {"genus", L.genus()},
             {"r", L.components()},
             {"elements", elems},
             {"toolchain", toolchain()}};
  std::ofstream(dir / "index.json") << dump(index);
}

inline SemigroupLedger load_ledger(const std::filesystem::path& dir) {
  std::ifstream in(dir / "index.json");
  if (!in) fail(ErrorCode::invalid_input, "no ledger index in " + dir.string());
  json index;
  try {
    index = json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, std::string("ledger index: ") + e.what());
  }
  if (index.value("schema", "") != "realsep.ledger/1") fail(ErrorCode::invalid_input, "unsupported ledger schema");
  SemigroupLedger L(index["curve"], index["genus"], index["r"]);
  for (const auto& x : index["elements"]) {
    SemigroupElement e;
    e.id = x["id"];
    e.kind = x["kind"] == "hyp" ? SemigroupKind::hyp : SemigroupKind::sep;
    e.d = x["d"].get<std::vector<int>>();
    e.provenance = x["provenance"];
    if (!x["certificate"].is_null() && !std::filesystem::exists(dir / x["certificate"].get<std::string>()))
      fail(ErrorCode::invalid_input, "ledger certificate missing: " + x["certificate"].get<std::string>());
    L.add(std::move(e));
  }
  return L;
}

}  // namespace realsep::io
