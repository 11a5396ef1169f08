// Certify the two pencils on the elliptic curve, add them, and ask the
// ledger about a few degree partitions.

#include <iostream>

#include "realsep/io/json.hpp"

using namespace realsep;

int main() {
  auto T = std::make_shared<const CurveTopology>(compute_topology(parse_form("-z^3 + 2x z^2 - x^3 + y^2 z"), {}));
  std::cout << "genus " << T->genus << ", " << T->r() << " components\n";

  auto q = make_pencil(T, parse_form("x y"), parse_form("x^2 - y^2"));
  auto p = make_pencil(T, parse_form("y (x - 4z)"), parse_form("(3x - 4z - y)(2x + y)"));
  SemigroupLedger ledger("elliptic", T->genus, T->r());
  for (auto [name, pencil] : {std::pair{"q", &q}, {"p", &p}}) {
    auto c = check_separating(*pencil);
    std::cout << name << ": partition (" << c.partition[0] << "," << c.partition[1] << ")\n";
    ledger.add_certificate(c, name);
  }

  auto sum = combine(q, p);
  std::cout << "q + p: G0 = " << io::form_text(sum.pencil.G0) << "\n"
            << "       G1 = " << io::form_text(sum.pencil.G1) << "\n"
            << "       partition (" << sum.certificate.partition[0] << "," << sum.certificate.partition[1] << ")\n";

  for (std::vector<int> d : {std::vector<int>{6, 6}, {8, 4}, {1, 1}, {3, 3}}) {
    auto a = ledger.query(d);
    std::cout << "(" << d[0] << "," << d[1] << "): " << to_string(a.status) << (a.provenance.empty() ? "" : " " + a.provenance) << "\n";
  }
}
