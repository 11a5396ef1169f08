#pragma once

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iostream>

#include "realsep/io/json.hpp"
#include "realsep/io/ledger.hpp"
#include "realsep/io/svg.hpp"
#include "realsep/io/verify.hpp"

namespace realsep::cli {

enum ExitCode { certified = 0, internal_error = 1, undetermined = 2, input_error = 3 };

inline int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::undetermined:
    case ErrorCode::genericity_failure:
      return undetermined;
    case ErrorCode::internal:
      return internal_error;
    default:
      return input_error;
  }
}

inline std::string tuple(const std::vector<int>& d) {
  std::string s = "(";
  for (size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string json_path;
  std::string svg_path;
  unsigned precision = 4096;
  unsigned seed = 0;
  int threads = 1;

  void write(const std::string& path, const std::string& text) const {
    if (path.empty()) return;
    if (path == "-") {
      out << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::invalid_input, "cannot write " + path);
    f << text;
  }
  void emit_json(const io::json& j) const { write(json_path, io::dump(j)); }
  /// Human-readable lines go to stdout unless JSON is being written there.
  std::ostream& text() const {
    static std::ostringstream sink;
    sink.str("");
    return json_path == "-" ? static_cast<std::ostream&>(sink) : out;
  }
  TopologyOptions topology_options() const {
    TopologyOptions o;
    o.seed = seed;
    return o;
  }
  DivisorOptions divisor_options() const {
    DivisorOptions o;
    o.seed = seed;
    return o;
  }
};

inline std::shared_ptr<const CurveTopology> load_curve(const Context& ctx, const std::string& path) {
  PlaneForm F = parse_poly_text(read_text_file(path), 3);
  return std::make_shared<const CurveTopology>(compute_topology(F, ctx.topology_options()));
}

/// A pencil given either as a certificate (JSON with a "pencil" field) or
/// as a text file with two forms.
inline std::pair<PlaneForm, PlaneForm> load_pencil(const std::string& path) {
  std::string text = read_text_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    io::json j;
    try {
      j = io::json::parse(text);
    } catch (const io::json::exception& e) {
      fail(ErrorCode::parse_error, path + ": " + e.what());
    }
    if (!j.contains("pencil") || !j["pencil"].is_array() || j["pencil"].size() != 2)
      fail(ErrorCode::invalid_input, path + ": no pencil in certificate");
    return {parse_form(j["pencil"][0].get<std::string>(), 3), parse_form(j["pencil"][1].get<std::string>(), 3)};
  }
  auto forms = parse_form_list(text, 3);
  if (forms.size() != 2) fail(ErrorCode::invalid_input, path + ": expected two forms, found " + std::to_string(forms.size()));
  return {forms[0], forms[1]};
}

inline ProjectionCenter load_center(const std::string& path) {
  auto lines = content_lines(read_text_file(path));
  if (lines.size() != 2) fail(ErrorCode::invalid_input, path + ": expected two lines (functionals a and b)");
  ProjectionCenter c;
  for (int i = 0; i < 2; ++i) {
    std::istringstream in(lines[static_cast<size_t>(i)].second);
    std::string tok;
    auto& v = i == 0 ? c.a : c.b;
    while (in >> tok) {
      try {
        v.push_back(io::parse_rat(tok));
      } catch (const Error&) {
        fail(ErrorCode::parse_error, "line " + std::to_string(lines[static_cast<size_t>(i)].first) + ": bad number '" + tok + "'");
      }
    }
  }
  return c;
}

inline std::vector<io::SvgMarker> pencil_markers(const SeparationCertificate& c) {
  static const char* colors[] = {"#d62728", "#1f77b4"};
  std::vector<io::SvgMarker> m;
  for (const auto& seq : c.sequences)
    for (const auto& z : seq)
      m.push_back({{z.point.approx[0].real(), z.point.approx[1].real(), z.point.approx[2].real()},
                   colors[z.form],
                   "G" + std::to_string(z.form)});
  return m;
}

inline int cmd_topology(const Context& ctx, const std::string& curve) {
  auto T = load_curve(ctx, curve);
  auto& o = ctx.text();
  o << "degree " << T->degree << ", genus " << T->genus << ", r = " << T->components.size() << "\n";
  for (size_t i = 0; i < T->components.size(); ++i) {
    const auto& c = T->components[i];
    o << "component " << i << ": " << to_string(c.type);
    if (c.type == ComponentType::oval) o << ", depth " << c.depth;
    o << "\n";
  }
  ctx.emit_json(io::topology_json(*T));
  ctx.write(ctx.svg_path, io::render_svg(*T));
  return certified;
}

inline int cmd_check_pencil(const Context& ctx, const std::string& curve, const std::vector<std::string>& files,
                            int oracle) {
  auto T = load_curve(ctx, curve);
  std::pair<PlaneForm, PlaneForm> g;
  if (files.size() == 1) {
    g = load_pencil(files[0]);
  } else if (files.size() == 2) {
    g = {parse_poly_text(read_text_file(files[0]), 3), parse_poly_text(read_text_file(files[1]), 3)};
  } else {
    fail(ErrorCode::invalid_input, "check-pencil expects G0.poly G1.poly or one pencil file");
  }
  auto p = make_pencil(T, g.first, g.second, ctx.divisor_options());
  auto c = check_separating(p);
  auto& o = ctx.text();
  if (c.separating)
    o << "separating, d=" << tuple(c.partition) << "\n";
  else
    o << "not separating: " << c.refutation->detail << "\n";
  if (p.base.total() > 0)
    o << "base points on X: multiplicity " << p.base.total() << " (" << p.base.real_total() << " real)\n";
  io::json j = io::separation_json(p, c);
  if (oracle > 0) {
    auto rep = sampling_oracle(p, oracle, ctx.threads);
    // a flagged member is a certified non-real or multiple zero; sampling
    // may miss every such member of a non-separating pencil
    bool agrees = !(c.separating && rep.flagged() > 0);
    const char* verdict = !agrees ? "DISAGREES" : (c.separating || rep.flagged() > 0) ? "agrees" : "no witness sampled";
    o << "oracle: " << oracle << " members, " << rep.flagged() << " flagged, " << verdict << "\n";
    if (!agrees) fail(ErrorCode::internal, "sampling oracle disagrees with the certificate");
  }
  ctx.emit_json(j);
  ctx.write(ctx.svg_path, io::render_svg(*T, pencil_markers(c)));
  return certified;
}

inline int cmd_combine(const Context& ctx, const std::string& curve, const std::string& pf, const std::string& qf) {
  auto T = load_curve(ctx, curve);
  auto gp = load_pencil(pf), gq = load_pencil(qf);
  auto p = make_pencil(T, gp.first, gp.second, ctx.divisor_options());
  auto q = make_pencil(T, gq.first, gq.second, ctx.divisor_options());
  auto r = combine(p, q, ctx.divisor_options());
  auto& o = ctx.text();
  o << "G0 = " << io::form_text(r.pencil.G0) << "\n";
  o << "G1 = " << io::form_text(r.pencil.G1) << "\n";
  o << "separating, d=" << tuple(r.certificate.partition) << (r.flipped ? " (second pencil negated)" : "") << "\n";
  ctx.emit_json(io::separation_json(r.pencil, r.certificate));
  ctx.write(ctx.svg_path, io::render_svg(*T, pencil_markers(r.certificate)));
  return certified;
}

inline int cmd_hyperbolic(const Context& ctx, const std::string& curve, const std::string& mapf,
                          const std::string& centerf) {
  auto T = load_curve(ctx, curve);
  auto m = make_embedding(T, parse_form_list(read_text_file(mapf), 3), ctx.divisor_options());
  auto center = load_center(centerf);
  auto c = check_hyperbolic(m, center, ctx.divisor_options());
  auto& o = ctx.text();
  if (c.hyperbolic)
    o << "hyperbolic, d=" << tuple(c.partition) << ", w=" << tuple(c.winding) << "\n";
  else
    o << "not hyperbolic: " << c.reason << "\n";
  std::optional<Pencil> p;
  if (c.pencil) p = make_pencil(T, c.A, c.B, ctx.divisor_options());
  ctx.emit_json(io::hyperbolic_json(m, c, p ? &*p : nullptr));
  ctx.write(ctx.svg_path, io::render_svg(*T, c.pencil ? pencil_markers(*c.pencil) : std::vector<io::SvgMarker>{}));
  return certified;
}

inline int cmd_locus(const Context& ctx, const std::string& curve, const std::string& mapf, int grid, int random) {
  auto T = load_curve(ctx, curve);
  auto m = make_embedding(T, parse_form_list(read_text_file(mapf), 3), ctx.divisor_options());
  LocusOptions lo;
  lo.grid = grid;
  lo.random = random;
  lo.seed = ctx.seed;
  lo.threads = ctx.threads;
  lo.divisor = ctx.divisor_options();
  auto rep = locus_scan(m, lo);
  int hyp = 0, err = 0;
  for (const auto& r : rep.records) {
    hyp += r.verdict == "hyperbolic";
    err += r.verdict == "error";
  }
  auto& o = ctx.text();
  o << "centers: " << rep.records.size() << ", hyperbolic: " << hyp << ", errors: " << err << "\n";
  o << "partitions:";
  for (const auto& d : rep.partitions) o << " " << tuple(d);
  o << "\n";
  if (rep.disconnected)
    o << "locus disconnected: at least " << rep.partitions.size() << " components\n";
  else
    o << "locus disconnected: not shown\n";
  ctx.emit_json(io::locus_json(m, rep));
  return certified;
}

inline int cmd_mcurve(const Context& ctx, int g, const std::vector<int>& d) {
  bool sep = mcurve_sep_membership(g, d);
  bool hyp = sep && mcurve_hyp_membership(g, d);
  bool orth = orthant_guarantee(g, d);
  ctx.text() << "Sep: " << (sep ? "yes" : "no") << "; Hyp: " << (hyp ? "yes" : "no") << "\n"
             << "orthant guarantee: " << (orth ? "yes" : "no") << "\n";
  ctx.emit_json({{"schema", "realsep.mcurve/1"},
                 {"genus", g},
                 {"d", d},
                 {"sep", sep},
                 {"hyp", hyp},
                 {"orthant", orth},
                 {"toolchain", io::toolchain()}});
  return certified;
}

inline int cmd_verify(const Context& ctx, const std::string& path) {
  io::json j;
  try {
    j = io::json::parse(read_text_file(path));
  } catch (const io::json::exception& e) {
    fail(ErrorCode::parse_error, path + ": " + e.what());
  }
  auto problems = io::verify_certificate(j);
  auto& o = ctx.text();
  if (problems.empty()) {
    o << "valid " << j["schema"].get<std::string>() << "\n";
  } else {
    for (const auto& p : problems) o << "invalid: " << p << "\n";
  }
  ctx.emit_json({{"schema", "realsep.verify/1"}, {"valid", problems.empty()}, {"problems", problems}});
  return problems.empty() ? certified : input_error;
}

inline int cmd_ledger(const Context& ctx, const std::string& dir, const std::string& action,
                      const std::vector<std::string>& args, bool hyp) {
  namespace fs = std::filesystem;
  auto& o = ctx.text();
  if (action == "init") {
    if (args.size() != 1) fail(ErrorCode::invalid_input, "ledger init expects F.poly");
    auto T = load_curve(ctx, args[0]);
    SemigroupLedger L(io::form_text(T->F), T->genus, static_cast<int>(T->components.size()));
    io::save_ledger(L, dir, {});
    o << "ledger for " << L.curve() << " (g = " << L.genus() << ", r = " << L.components() << ")\n";
    return certified;
  }
  SemigroupLedger L = io::load_ledger(dir);
  if (action == "add") {
    if (args.size() != 1) fail(ErrorCode::invalid_input, "ledger add expects a certificate");
    io::json j = io::json::parse(read_text_file(args[0]));
    auto problems = io::verify_certificate(j);
    if (!problems.empty()) fail(ErrorCode::invalid_input, "certificate does not verify: " + problems.front());
    if (j["schema"] != "realsep.separation/1" || j["verdict"] != "separating")
      fail(ErrorCode::invalid_input, "only separating certificates enter the ledger");
    if (parse_form(j["curve"].get<std::string>(), 3) != parse_form(L.curve(), 3))
      fail(ErrorCode::invalid_input, "certificate is for a different curve");
    std::set<std::string> ids;
    for (const auto& e : L.elements()) ids.insert(e.id);
    std::string id = "c" + std::to_string(ids.size() + 1);
    SeparationCertificate c;
    c.separating = true;
    c.partition = j["partition"].get<std::vector<int>>();
    c.curve_degree = j["degrees"]["curve"];
    c.k = j["degrees"]["forms"];
    c.base_multiplicity = j["degrees"]["base_multiplicity"];
    L.add_certificate(c, id);
    std::map<std::string, io::json> certs;
    for (const auto& e : L.elements())
      if (fs::exists(fs::path(dir) / (e.id + ".json")))
        certs[e.id] = io::json::parse(read_text_file((fs::path(dir) / (e.id + ".json")).string()));
    certs[id] = j;
    io::save_ledger(L, dir, certs);
    o << "added " << id << " d=" << tuple(c.partition) << "\n";
    return certified;
  }
  if (action == "query") {
    std::vector<int> d;
    for (const auto& a : args) {
      int x = 0;
      auto [end, ec] = std::from_chars(a.data(), a.data() + a.size(), x);
      if (ec != std::errc() || end != a.data() + a.size()) fail(ErrorCode::parse_error, "bad entry '" + a + "'");
      d.push_back(x);
    }
    auto ans = L.query(d, hyp ? SemigroupKind::hyp : SemigroupKind::sep);
    o << to_string(ans.status) << (ans.provenance.empty() ? "" : " " + ans.provenance) << "\n";
    ctx.emit_json({{"schema", "realsep.ledger-query/1"},
                   {"kind", hyp ? "hyp" : "sep"},
                   {"d", d},
                   {"status", to_string(ans.status)},
                   {"provenance", ans.provenance}});
    return certified;
  }
  fail(ErrorCode::invalid_input, "unknown ledger action " + action);
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Certified real topology, separating pencils and hyperbolicity for plane curves", "realsep"};
  app.require_subcommand(1);
  Context ctx{out, err};
  auto common = [&](CLI::App* sub, bool svg) {
    sub->add_option("--json", ctx.json_path, "write JSON to PATH ('-' for stdout)");
    if (svg) sub->add_option("--svg", ctx.svg_path, "write an SVG drawing to PATH");
    sub->add_option("--precision", ctx.precision, "precision cap in bits")->check(CLI::Range(64u, 1u << 16));
    sub->add_option("--seed", ctx.seed, "chart and sampler seed");
    sub->add_option("--threads", ctx.threads, "worker threads")->check(CLI::Range(1, 256));
  };
  std::string curve, a, b;
  std::vector<std::string> files, rest;
  int oracle = 0, grid = 0, random = 0, genus = 0;
  std::vector<int> dvec;
  bool hyp = false;

  auto* topo = app.add_subcommand("topology", "real topology of a smooth curve");
  topo->add_option("curve", curve, "F.poly")->required();
  common(topo, true);

  auto* check = app.add_subcommand("check-pencil", "certify or refute a separating pencil");
  check->add_option("curve", curve, "F.poly")->required();
  check->add_option("forms", files, "G0.poly G1.poly, or one pencil file")->required()->expected(1, 2);
  check->add_option("--oracle", oracle, "cross-check with N pencil members")->check(CLI::Range(0, 1000000));
  common(check, true);

  auto* comb = app.add_subcommand("combine", "sum of two separating pencils");
  comb->add_option("curve", curve, "F.poly")->required();
  comb->add_option("p", a, "first pencil (certificate or text)")->required();
  comb->add_option("q", b, "second pencil (certificate or text)")->required();
  common(comb, true);

  std::string centerf;
  auto* hypc = app.add_subcommand("hyperbolic", "hyperbolicity with respect to a center");
  hypc->add_option("curve", curve, "F.poly")->required();
  hypc->add_option("map", a, "map.txt (one form per line)")->required();
  hypc->add_option("center", centerf, "center.txt (two lines of coefficients)")->required();
  common(hypc, true);

  auto* locus = app.add_subcommand("locus-scan", "classify sampled centers");
  locus->add_option("curve", curve, "F.poly")->required();
  locus->add_option("map", a, "map.txt")->required();
  locus->add_option("--grid", grid, "K x K grid of centers")->check(CLI::Range(0, 256));
  locus->add_option("--random", random, "number of seeded random centers")->check(CLI::Range(0, 100000));
  common(locus, false);

  auto* mc = app.add_subcommand("mcurve", "membership on M-curves");
  mc->add_option("genus", genus, "g")->required()->check(CLI::Range(0, 1000));
  mc->add_option("d", dvec, "d_1 ... d_{g+1}")->required();
  common(mc, false);

  auto* ver = app.add_subcommand("verify", "replay a stored certificate");
  ver->add_option("certificate", a, "certificate JSON")->required();
  common(ver, false);

  std::string action;
  auto* led = app.add_subcommand("ledger", "semigroup ledger: init F.poly | add CERT | query d...");
  led->add_option("dir", a, "ledger directory")->required();
  led->add_option("action", action, "init, add or query")->required();
  led->add_option("args", rest, "arguments");
  led->add_flag("--hyp", hyp, "query Hyp instead of Sep");
  common(led, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? certified : input_error;
  }
  precision_cap() = ctx.precision;
  try {
    if (*topo) return cmd_topology(ctx, curve);
    if (*check) return cmd_check_pencil(ctx, curve, files, oracle);
    if (*comb) return cmd_combine(ctx, curve, a, b);
    if (*hypc) return cmd_hyperbolic(ctx, curve, a, centerf);
    if (*locus) {
      if (grid == 0 && random == 0) grid = 16;
      return cmd_locus(ctx, curve, a, grid, random);
    }
    if (*mc) {
      if (static_cast<int>(dvec.size()) != genus + 1)
        fail(ErrorCode::invalid_input, "expected " + std::to_string(genus + 1) + " entries for genus " + std::to_string(genus));
      return cmd_mcurve(ctx, genus, dvec);
    }
    if (*ver) return cmd_verify(ctx, a);
    if (*led) return cmd_ledger(ctx, a, action, rest, hyp);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    if (!ctx.json_path.empty()) {
      try {
        ctx.write(ctx.json_path, io::dump(io::error_json(e)));
      } catch (const Error&) {
      }
    }
    return exit_code_for(e.code());
  } catch (const io::json::exception& e) {
    err << "error [parse_error]: " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}

}  // namespace realsep::cli
