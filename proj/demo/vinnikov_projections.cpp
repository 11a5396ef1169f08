// Project the Vinnikov quartic from the three coordinate points and report
// winding numbers; then check the two pencils with surd coefficients.

#include <iostream>

#include "realsep/hyperbolic/hyperbolic.hpp"

using namespace realsep;

int main() {
  auto F = parse_form("2x^4 + y^4 + z^4 - 3x^2 y^2 - 3x^2 z^2 + y^2 z^2");
  auto T = std::make_shared<const CurveTopology>(compute_topology(F, {}));
  auto m = make_embedding(T, {parse_form("x"), parse_form("y"), parse_form("z")});
  const char* names[] = {"(1:0:0)", "(0:1:0)", "(0:0:1)"};
  for (int i = 0; i < 3; ++i) {
    ProjectionCenter c{{0, 0, 0}, {0, 0, 0}};
    c.a[(i + 1) % 3] = 1;
    c.b[(i + 2) % 3] = 1;
    auto h = check_hyperbolic(m, c);
    std::cout << names[i] << ": ";
    if (h.hyperbolic)
      std::cout << "hyperbolic, w = (" << h.winding[0] << "," << h.winding[1] << ")\n";
    else
      std::cout << h.reason << "\n";
  }

  const std::pair<const char*, const char*> pencils[] = {
      {"(2z + sqrt(2) x - 2y)(-2z + sqrt(2) x - 4y)", "x y"},
      {"(2z + sqrt(2) x - 2y)(z + x + y)", "x y"},
  };
  for (auto [g0, g1] : pencils) {
    auto p = make_pencil(T, parse_form(g0), parse_form(g1));
    auto c = check_separating(p);
    auto rep = sampling_oracle(p, 200);
    std::cout << g0 << " : " << g1 << "\n  base multiplicity " << p.base.total() << ", "
              << (c.separating ? "separating" : "not separating: " + c.refutation->detail) << "\n  oracle: "
              << rep.flagged() << " of 200 members with a non-real or repeated zero\n";
  }
}
