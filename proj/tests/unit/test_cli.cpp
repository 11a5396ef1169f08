#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "realsep/cli/app.hpp"

using namespace realsep;
using fixtures::data;
namespace fs = std::filesystem;

namespace {

struct Result {
  int rc;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "realsep");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int rc = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {rc, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("realsep_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }
  static std::string slurp(const std::string& p) { return read_text_file(p); }
  fs::path dir;
};

}  // namespace

TEST_F(Cli, Topology) {
  auto r = run({"topology", data("elliptic.poly"), "--svg", path("e.svg")});
  EXPECT_EQ(r.rc, 0) << r.err;
  EXPECT_NE(r.out.find("degree 3, genus 1, r = 2"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("component 1: pseudoline"), std::string::npos) << r.out;
  auto svg = slurp(path("e.svg"));
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("component-1"), std::string::npos);
}

TEST_F(Cli, TopologyJsonOnStdout) {
  auto r = run({"topology", data("vinnikov.poly"), "--json", "-"});
  ASSERT_EQ(r.rc, 0) << r.err;
  auto j = io::json::parse(r.out);
  EXPECT_EQ(j["schema"], "realsep.topology/1");
  EXPECT_EQ(j["genus"], 3);
}

TEST_F(Cli, CheckPencil) {
  auto r = run({"check-pencil", data("elliptic.poly"), data("pencils/elliptic_q.txt")});
  EXPECT_EQ(r.rc, 0) << r.err;
  EXPECT_EQ(r.out, "separating, d=(4,2)\n");
  r = run({"check-pencil", data("circle.poly"), data("x.poly"), data("y.poly"), "--oracle", "100"});
  EXPECT_EQ(r.rc, 0) << r.err;
  EXPECT_NE(r.out.find("separating, d=(2)"), std::string::npos);
  EXPECT_NE(r.out.find("0 flagged, agrees"), std::string::npos) << r.out;
  r = run({"check-pencil", data("circle.poly"), data("pencils/circle_tangent.txt")});
  EXPECT_EQ(r.rc, 0);
  EXPECT_EQ(r.out.rfind("not separating:", 0), 0u) << r.out;
}

TEST_F(Cli, VerifyRoundTripAndTampering) {
  auto cert = path("q.json");
  ASSERT_EQ(run({"check-pencil", data("elliptic.poly"), data("pencils/elliptic_q.txt"), "--json", cert}).rc, 0);
  auto r = run({"verify", cert});
  EXPECT_EQ(r.rc, 0) << r.out;
  EXPECT_EQ(r.out, "valid realsep.separation/1\n");

  auto j = io::json::parse(slurp(cert));
  auto extra = j;
  extra["confidence"] = "high";
  r = run({"verify", write("extra.json", io::dump(extra))});
  EXPECT_EQ(r.rc, 3);
  EXPECT_NE(r.out.find("unknown field 'confidence'"), std::string::npos) << r.out;

  auto missing = j;
  missing.erase("sequences");
  EXPECT_EQ(run({"verify", write("missing.json", io::dump(missing))}).rc, 3);

  auto wrong = j;
  wrong["partition"] = {3, 3};
  r = run({"verify", write("wrong.json", io::dump(wrong))});
  EXPECT_EQ(r.rc, 3);
  EXPECT_NE(r.out.find("differs from the zero count"), std::string::npos) << r.out;

  auto swapped = j;
  std::swap(swapped["sequences"][0][0], swapped["sequences"][0][1]);
  r = run({"verify", write("swapped.json", io::dump(swapped))});
  EXPECT_EQ(r.rc, 3);
  EXPECT_NE(r.out.find("adjacent"), std::string::npos) << r.out;

  EXPECT_EQ(run({"verify", write("junk.json", "{\"schema\": 1")}).rc, 3);
}

TEST_F(Cli, HyperbolicCertificateVerifies) {
  auto cert = path("h.json");
  auto r = run({"hyperbolic", data("elliptic.poly"), data("maps/elliptic_map.txt"), data("maps/center_q.txt"), "--json", cert});
  ASSERT_EQ(r.rc, 0) << r.err;
  EXPECT_EQ(r.out, "hyperbolic, d=(4,2), w=(4,2)\n");
  EXPECT_EQ(run({"verify", cert}).rc, 0);
  auto j = io::json::parse(slurp(cert));
  j["winding"] = {4, 1};
  EXPECT_EQ(run({"verify", write("bad.json", io::dump(j))}).rc, 3);
}

TEST_F(Cli, CombineFromCertificates) {
  auto q = path("q.json"), p = path("p.json"), s = path("s.json");
  ASSERT_EQ(run({"check-pencil", data("elliptic.poly"), data("pencils/elliptic_q.txt"), "--json", q}).rc, 0);
  ASSERT_EQ(run({"check-pencil", data("elliptic.poly"), data("pencils/elliptic_p.txt"), "--json", p}).rc, 0);
  auto r = run({"combine", data("elliptic.poly"), q, p, "--json", s});
  ASSERT_EQ(r.rc, 0) << r.err;
  EXPECT_NE(r.out.find("separating, d=(6,6)"), std::string::npos) << r.out;
  EXPECT_EQ(run({"verify", s}).rc, 0);
}

TEST_F(Cli, Mcurve) {
  auto r = run({"mcurve", "1", "1", "1"});
  EXPECT_EQ(r.rc, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "Sep: yes; Hyp: no");
  EXPECT_EQ(run({"mcurve", "1", "1", "2"}).out.substr(0, 17), "Sep: yes; Hyp: ye");
  EXPECT_EQ(run({"mcurve", "2", "1", "1"}).rc, 3);
}

TEST_F(Cli, ExitCodes) {
  auto r = run({"topology", path("absent.poly")});
  EXPECT_EQ(r.rc, 3);
  EXPECT_EQ(r.err.rfind("error [", 0), 0u) << r.err;
  r = run({"topology", write("sing.poly", "x^2 + y^2\n")});
  EXPECT_EQ(r.rc, 3);
  EXPECT_NE(r.err.find("singular_curve"), std::string::npos) << r.err;
  r = run({"topology", write("bad.poly", "x^2 + y^2 - z^\n")});
  EXPECT_EQ(r.rc, 3);
  EXPECT_NE(r.err.find("parse_error"), std::string::npos) << r.err;
  EXPECT_EQ(run({"frobnicate"}).rc, 3);
  EXPECT_EQ(run({}).rc, 3);
  r = run({"check-pencil", data("circle.poly"), write("g.txt", "x\n2x\n"), "--json", path("err.json")});
  EXPECT_EQ(r.rc, 3);
  EXPECT_EQ(io::json::parse(slurp(path("err.json")))["schema"], "realsep.error/1");
}

TEST_F(Cli, Ledger) {
  auto led = path("ledger");
  ASSERT_EQ(run({"ledger", led, "init", data("elliptic.poly")}).rc, 0);
  auto q = path("q.json"), p = path("p.json");
  ASSERT_EQ(run({"check-pencil", data("elliptic.poly"), data("pencils/elliptic_q.txt"), "--json", q}).rc, 0);
  ASSERT_EQ(run({"check-pencil", data("elliptic.poly"), data("pencils/elliptic_p.txt"), "--json", p}).rc, 0);
  EXPECT_EQ(run({"ledger", led, "add", q}).out, "added c1 d=(4,2)\n");
  EXPECT_EQ(run({"ledger", led, "add", p}).out, "added c2 d=(2,4)\n");
  EXPECT_EQ(run({"ledger", led, "query", "4", "2"}).out, "Verified verified(c1)\n");
  EXPECT_EQ(run({"ledger", led, "query", "6", "6"}).out.substr(0, 8), "Implied ");
  EXPECT_EQ(run({"ledger", led, "query", "1", "1"}).out, "Unknown\n");
  EXPECT_EQ(run({"ledger", led, "query", "--hyp", "2", "4"}).out.substr(0, 9), "Verified ");
  EXPECT_EQ(run({"ledger", led, "query", "x", "1"}).rc, 3);
  EXPECT_EQ(run({"ledger", led, "query", "1"}).rc, 3);
  // a certificate for another curve is rejected
  auto c = path("c.json");
  ASSERT_EQ(run({"check-pencil", data("circle.poly"), data("pencils/circle_xy.txt"), "--json", c}).rc, 0);
  EXPECT_EQ(run({"ledger", led, "add", c}).rc, 3);
}

TEST_F(Cli, JsonIsByteStableAcrossThreadCounts) {
  auto a = path("a.json"), b = path("b.json");
  ASSERT_EQ(run({"locus-scan", data("elliptic.poly"), data("maps/elliptic_map.txt"), "--grid", "3", "--random", "3",
                 "--seed", "5", "--threads", "1", "--json", a})
                .rc,
            0);
  ASSERT_EQ(run({"locus-scan", data("elliptic.poly"), data("maps/elliptic_map.txt"), "--grid", "3", "--random", "3",
                 "--seed", "5", "--threads", "8", "--json", b})
                .rc,
            0);
  EXPECT_EQ(slurp(a), slurp(b));
  ASSERT_EQ(run({"check-pencil", data("vinnikov.poly"), data("pencils/vinnikov_surd_b.txt"), "--oracle", "50",
                 "--threads", "1", "--json", a})
                .rc,
            0);
  ASSERT_EQ(run({"check-pencil", data("vinnikov.poly"), data("pencils/vinnikov_surd_b.txt"), "--oracle", "50",
                 "--threads", "8", "--json", b})
                .rc,
            0);
  EXPECT_EQ(slurp(a), slurp(b));
}
