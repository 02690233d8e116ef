#include <array>

#include "sphere7/weyl.hpp"

namespace sphere7::weyl {

namespace {

PoissonPolynomial derivative(const PoissonPolynomial& f, int s) {
  PoissonPolynomial out;
  for (const auto& [k, c] : f.terms()) {
    Exponents e = unpack(k);
    if (e[s] == 0) continue;
    const long m = e[s];
    --e[s];
    out.add_term(pack(e), c * CRational(m));
  }
  return out;
}

}  // namespace

PoissonPolynomial poisson_bracket(const PoissonPolynomial& f, const PoissonPolynomial& g) {
  PoissonPolynomial out;
  for (int k = 0; k < kModes; ++k) {
    const PoissonPolynomial fd = derivative(f, 3 + k);
    const PoissonPolynomial fc = derivative(f, k);
    if (fd.is_zero() && fc.is_zero()) continue;
    const PoissonPolynomial term = fd * derivative(g, k) - fc * derivative(g, 3 + k);
    out += CRational(0, -kModeSign[k]) * term;
  }
  return out;
}

ClassicalLaurent poisson_bracket(const ClassicalLaurent& f, const ClassicalLaurent& g, int cap) {
  int c = cap;
  if (!g.is_zero() && f.cap() < kNoCap) c = std::min(c, f.cap() + *g.min_grade());
  if (!f.is_zero() && g.cap() < kNoCap) c = std::min(c, g.cap() + *f.min_grade());
  ClassicalLaurent out(c);
  for (const auto& [gf, ef] : f.grades())
    for (const auto& [gg, eg] : g.grades())
      if (gf + gg <= c) out.add(gf + gg, poisson_bracket(ef, eg));
  return out;
}

PoissonPolynomial classical_number_small() {
  return PoissonPolynomial::monomial({1, 0, 0, 1, 0, 0}, 2);
}

PoissonPolynomial classical_number_total() {
  return PoissonPolynomial::monomial({0, 0, 1, 0, 0, 1}) -
         PoissonPolynomial::monomial({0, 1, 0, 0, 1, 0});
}

}  // namespace sphere7::weyl
