#include "sphere7/lie_u2h.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sphere7::lie {

namespace {

const char* kSpinorNames[kDim] = {"J++", "J+-", "J--", "P+_+", "P+_-",
                                  "P-_+", "P-_-", "K++", "K+-", "K--"};
const char* kVectorNames[kDim] = {"j1", "j2", "j3", "p0", "p1", "p2", "p3", "k1", "k2", "k3"};
const char* kContractedNames[kDim] = {"j++", "j+-", "j--", "pi+_+", "pi+_-",
                                      "pi-_+", "pi-_-", "zeta++", "I", "zeta--"};

const CRational kI = CRational::i();

// Index 0 is +, 1 is -.
int eps_up(int a, int b) { return EpsilonEta::eps_up[a][b]; }
int eps_dn(int a, int b) { return EpsilonEta::eps_dot[a][b]; }

int sym(int a, int b) { return a + b; }  // ++ -> 0, +- -> 1, -- -> 2
int J(int a, int b) { return gen::Jpp + sym(a, b); }
int K(int a, int b) { return gen::Kpp + sym(a, b); }
int P(int up, int dot) { return gen::Ppp + 2 * up + dot; }

enum class Kind { J, P, K };
Kind kind(int s) { return s <= gen::Jmm ? Kind::J : (s <= gen::Pmm ? Kind::P : Kind::K); }

// Representative index pairs.
std::array<int, 2> sym_pair(int s) {
  const int r = (s <= gen::Jmm) ? s - gen::Jpp : s - gen::Kpp;
  return r == 0 ? std::array<int, 2>{0, 0} : r == 1 ? std::array<int, 2>{0, 1} : std::array<int, 2>{1, 1};
}
std::array<int, 2> p_pair(int s) { return {(s - gen::Ppp) / 2, (s - gen::Ppp) % 2}; }

LieElement spinor_gen(int idx, const CRational& c) {
  return LieElement::generator(Basis::spinor, idx, c);
}

LieElement spinor_bracket_formula(int x, int y) {
  LieElement out(Basis::spinor);
  const Kind kx = kind(x), ky = kind(y);
  if (kx == Kind::J && ky == Kind::J) {
    const auto [a, b] = sym_pair(x);
    const auto [c, d] = sym_pair(y);
    out += spinor_gen(J(b, d), kI * CRational(eps_up(a, c)));
    out += spinor_gen(J(b, c), kI * CRational(eps_up(a, d)));
    out += spinor_gen(J(a, d), kI * CRational(eps_up(b, c)));
    out += spinor_gen(J(a, c), kI * CRational(eps_up(b, d)));
  } else if (kx == Kind::K && ky == Kind::K) {
    const auto [a, b] = sym_pair(x);
    const auto [c, d] = sym_pair(y);
    out += spinor_gen(K(b, d), kI * CRational(eps_dn(a, c)));
    out += spinor_gen(K(b, c), kI * CRational(eps_dn(a, d)));
    out += spinor_gen(K(a, d), kI * CRational(eps_dn(b, c)));
    out += spinor_gen(K(a, c), kI * CRational(eps_dn(b, d)));
  } else if (kx == Kind::J && ky == Kind::P) {
    const auto [a, b] = sym_pair(x);
    const auto [g, gd] = p_pair(y);
    out += spinor_gen(P(b, gd), kI * CRational(eps_up(a, g)));
    out += spinor_gen(P(a, gd), kI * CRational(eps_up(b, g)));
  } else if (kx == Kind::K && ky == Kind::P) {
    const auto [a, b] = sym_pair(x);
    const auto [g, gd] = p_pair(y);
    out += spinor_gen(P(g, b), kI * CRational(eps_dn(a, gd)));
    out += spinor_gen(P(g, a), kI * CRational(eps_dn(b, gd)));
  } else if (kx == Kind::P && ky == Kind::P) {
    const auto [a, ad] = p_pair(x);
    const auto [b, bd] = p_pair(y);
    out += spinor_gen(J(a, b), kI * CRational(eps_dn(ad, bd)));
    out += spinor_gen(K(ad, bd), kI * CRational(eps_up(a, b)));
  } else if (kx == Kind::P && (ky == Kind::J || ky == Kind::K)) {
    out = -spinor_bracket_formula(y, x);
  }
  // [J, K] = 0
  return out;
}

StructureTable build_spinor_table() {
  StructureTable t;
  t.basis = Basis::spinor;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) t.table[a][b] = spinor_bracket_formula(a, b);
  return t;
}

int levi(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((i + 1) % 3 == j) ? 1 : -1;
}

StructureTable build_vector_table() {
  using namespace gen;
  StructureTable t;
  t.basis = Basis::vector;
  for (auto& row : t.table)
    for (auto& e : row) e = LieElement(Basis::vector);
  const CRational half = CRational::from_fraction(1, 2);
  auto vg = [](int idx, const CRational& c) { return LieElement::generator(Basis::vector, idx, c); };
  auto set = [&](int a, int b, const LieElement& v) {
    t.table[a][b] = v;
    t.table[b][a] = -v;
  };
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      LieElement jj(Basis::vector), kk(Basis::vector), pj(Basis::vector), pp(Basis::vector),
          pk(Basis::vector);
      for (int k = 0; k < 3; ++k) {
        const int e = levi(i, j, k);
        if (e == 0) continue;
        jj += vg(j1 + k, e);
        kk += vg(k1 + k, e);
        pj += vg(p1 + k, half * CRational(e));
        pp += vg(j1 + k, e) + vg(k1 + k, e);
        pk += vg(p1 + k, half * CRational(e));
      }
      if (i == j) {
        pj += vg(p0, half);
        pk += vg(p0, -half);
      }
      if (i < j) {
        set(j1 + i, j1 + j, jj);
        set(k1 + i, k1 + j, kk);
        set(p1 + i, p1 + j, pp);
      }
      set(p1 + i, j1 + j, pj);
      set(p1 + i, k1 + j, pk);
    }
    set(p0, j1 + i, vg(p1 + i, -half));
    set(p0, p1 + i, vg(j1 + i, 1) + vg(k1 + i, -1));
    set(p0, k1 + i, vg(p1 + i, half));
  }
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------

const char* generator_name(Basis b, int index) {
  if (index < 0 || index >= kDim) throw std::out_of_range("generator index");
  return b == Basis::spinor ? kSpinorNames[index] : kVectorNames[index];
}

int generator_index(Basis b, const std::string& name) {
  for (int i = 0; i < kDim; ++i)
    if (name == generator_name(b, i)) return i;
  return -1;
}

LieElement LieElement::generator(Basis b, int index, CRational coeff) {
  if (index < 0 || index >= kDim) throw std::out_of_range("generator index");
  LieElement e(b);
  e.c_[index] = std::move(coeff);
  return e;
}

bool LieElement::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

Rational LieElement::max_abs() const {
  Rational m = 0;
  for (const auto& c : c_) {
    Rational a = abs(c.re()) + abs(c.im());
    if (a > m) m = a;
  }
  return m;
}

LieElement& LieElement::operator+=(const LieElement& o) {
  if (o.basis_ != basis_ && !o.is_zero()) throw std::invalid_argument("mixed bases");
  for (int i = 0; i < kDim; ++i) c_[i] += o.c_[i];
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) {
  if (o.basis_ != basis_ && !o.is_zero()) throw std::invalid_argument("mixed bases");
  for (int i = 0; i < kDim; ++i) c_[i] -= o.c_[i];
  return *this;
}

LieElement& LieElement::operator*=(const CRational& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

bool operator==(const LieElement& a, const LieElement& b) {
  if (a.basis_ != b.basis_) return false;
  return a.c_ == b.c_;
}

std::string LieElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < kDim; ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i] << ")" << generator_name(basis_, i);
  }
  if (first) os << "0";
  return os.str();
}

const StructureTable& spinor_table() {
  static const StructureTable t = build_spinor_table();
  return t;
}

const StructureTable& vector_table() {
  static const StructureTable t = build_vector_table();
  return t;
}

const StructureTable& table_for(Basis b) { return b == Basis::spinor ? spinor_table() : vector_table(); }

std::vector<std::string> known_mutations() { return {"k-bracket", "p-bracket", "j-bracket"}; }

StructureTable mutated_spinor_table(const std::string& mutation) {
  using namespace gen;
  StructureTable t = spinor_table();
  auto flip = [&](int a, int b) {
    t.table[a][b] = -t.table[a][b];
    t.table[b][a] = -t.table[b][a];
  };
  if (mutation == "k-bracket") {
    flip(Kpm, Kpp);
  } else if (mutation == "j-bracket") {
    flip(Jpm, Jpp);
  } else if (mutation == "p-bracket") {
    for (int k : {Kpp, Kpm, Kmm}) {
      t.table[Ppp][Pmm][k] = 0;
      t.table[Pmm][Ppp][k] = 0;
    }
  } else {
    throw std::invalid_argument("unknown mutation: " + mutation);
  }
  return t;
}

LieElement bracket(const LieElement& x, const LieElement& y, const StructureTable& t) {
  const LieElement xb = basis_change(x, t.basis);
  const LieElement yb = basis_change(y, t.basis);
  LieElement out(t.basis);
  for (int a = 0; a < kDim; ++a) {
    if (xb[a].is_zero()) continue;
    for (int b = 0; b < kDim; ++b) {
      if (yb[b].is_zero()) continue;
      out += (xb[a] * yb[b]) * t.table[a][b];
    }
  }
  return basis_change(out, x.basis());
}

LieElement bracket(const LieElement& x, const LieElement& y) {
  return bracket(x, y, table_for(x.basis()));
}

JacobiReport verify_jacobi(const StructureTable& t) {
  JacobiReport r;
  auto g = [&](int i) { return LieElement::generator(t.basis, i); };
  for (int a = 0; a < kDim; ++a) {
    for (int b = a + 1; b < kDim; ++b) {
      for (int c = b + 1; c < kDim; ++c) {
        const LieElement s = bracket(g(a), bracket(g(b), g(c), t), t) +
                             bracket(g(b), bracket(g(c), g(a), t), t) +
                             bracket(g(c), bracket(g(a), g(b), t), t);
        ++r.triples;
        const Rational m = s.max_abs();
        if (sgn(m) != 0) {
          if (r.failing == 0) r.first_failure = {a, b, c};
          ++r.failing;
        }
        if (m > r.max_residual) r.max_residual = m;
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

using Rows = std::array<std::array<CRational, kDim>, kDim>;

Rows build_spinor_in_vector() {
  using namespace gen;
  Rows s{};
  const CRational i = kI;
  s[Jpp][j1] = -2;  s[Jpp][j2] = CRational(2) * i;
  s[Jpm][j3] = -2;
  s[Jmm][j1] = 2;   s[Jmm][j2] = CRational(2) * i;
  s[Ppp][p3] = -1;  s[Ppp][p0] = -i;
  s[Ppm][p1] = -1;  s[Ppm][p2] = i;
  s[Pmp][p1] = 1;   s[Pmp][p2] = i;
  s[Pmm][p3] = -1;  s[Pmm][p0] = i;
  s[Kpp][k1] = 2;   s[Kpp][k2] = CRational(2) * i;
  s[Kpm][k3] = -2;
  s[Kmm][k1] = -2;  s[Kmm][k2] = CRational(2) * i;
  return s;
}

}  // namespace

const Rows& spinor_in_vector() {
  static const Rows s = build_spinor_in_vector();
  return s;
}

const Rows& vector_in_spinor() {
  static const Rows s = inverse(spinor_in_vector());
  return s;
}

LieElement basis_change(const LieElement& x, Basis to) {
  if (x.basis() == to) return x;
  const Rows& m = (to == Basis::vector) ? spinor_in_vector() : vector_in_spinor();
  LieElement out(to);
  for (int a = 0; a < kDim; ++a) {
    if (x[a].is_zero()) continue;
    for (int b = 0; b < kDim; ++b)
      if (!m[a][b].is_zero()) out[b] += x[a] * m[a][b];
  }
  return out;
}

Rational cross_basis_residual() {
  Rational worst = 0;
  for (Basis from : {Basis::spinor, Basis::vector}) {
    const Basis other = from == Basis::spinor ? Basis::vector : Basis::spinor;
    for (int a = 0; a < kDim; ++a) {
      for (int b = 0; b < kDim; ++b) {
        const LieElement x = LieElement::generator(from, a);
        const LieElement y = LieElement::generator(from, b);
        const LieElement direct = bracket(x, y, table_for(from));
        const LieElement via = basis_change(
            bracket(basis_change(x, other), basis_change(y, other), table_for(other)), from);
        const Rational m = (direct - via).max_abs();
        if (m > worst) worst = m;
      }
    }
  }
  return worst;
}

LieElement dagger(const LieElement& x) {
  // Every vector generator is antihermitian.
  const LieElement v = basis_change(x, Basis::vector);
  LieElement out(Basis::vector);
  for (int a = 0; a < kDim; ++a) out[a] = -v[a].conj();
  return basis_change(out, x.basis());
}

LieElement reality(int spinor_index) {
  return dagger(LieElement::generator(Basis::spinor, spinor_index));
}

// ---------------------------------------------------------------------------

BasicQMatrix2<Rational> vector_generator_matrix(int index) {
  using Q = BasicQuaternion<Rational>;
  const Rational h(1, 2);
  BasicQMatrix2<Rational> m{Q(), Q(), Q(), Q()};
  if (index < 0 || index >= kDim) throw std::out_of_range("generator index");
  if (index <= gen::j3) {
    m.w[index - gen::j1 + 1] = h;
  } else if (index == gen::p0) {
    m.x.q0 = h;
    m.z.q0 = -h;
  } else if (index <= gen::p3) {
    const int e = index - gen::p1 + 1;
    m.x[e] = h;
    m.z[e] = h;
  } else {
    m.y[index - gen::k1 + 1] = h;
  }
  return m;
}

std::array<Rational, kDim> decompose_vector_matrix(const BasicQMatrix2<Rational>& m) {
  if (sgn(m.w.q0) != 0 || sgn(m.y.q0) != 0 || !(m.z == -m.x.conj()))
    throw std::domain_error("matrix is not in the real form");
  std::array<Rational, kDim> c{};
  for (int i = 0; i < 3; ++i) {
    c[gen::j1 + i] = 2 * m.w[i + 1];
    c[gen::p1 + i] = 2 * m.x[i + 1];
    c[gen::k1 + i] = 2 * m.y[i + 1];
  }
  c[gen::p0] = 2 * m.x.q0;
  return c;
}

StructureTable matrix_vector_table() {
  StructureTable t;
  t.basis = Basis::vector;
  for (int a = 0; a < kDim; ++a) {
    for (int b = 0; b < kDim; ++b) {
      const auto A = vector_generator_matrix(a);
      const auto B = vector_generator_matrix(b);
      const auto c = decompose_vector_matrix(A * B - B * A);
      LieElement e(Basis::vector);
      for (int k = 0; k < kDim; ++k) e[k] = CRational(c[k]);
      t.table[a][b] = e;
    }
  }
  return t;
}

// ---------------------------------------------------------------------------

int contraction_weight(int s) {
  switch (kind(s)) {
    case Kind::J: return 0;
    case Kind::P: return 1;
    case Kind::K: return s == gen::Kpm ? 2 : 1;
  }
  return 0;
}

const char* contracted_name(int s) {
  if (s < 0 || s >= kDim) throw std::out_of_range("generator index");
  return kContractedNames[s];
}

namespace {

Rational rpow(const Rational& x, int e) {
  Rational r = 1;
  const Rational base = e >= 0 ? x : Rational(1) / x;
  for (int k = 0; k < std::abs(e); ++k) r *= base;
  return r;
}

}  // namespace

StructureTable contraction_constants(const Rational& lambda) {
  if (sgn(lambda) <= 0) throw std::domain_error("contraction parameter must be positive");
  const StructureTable& base = spinor_table();
  StructureTable t = base;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      for (int c = 0; c < kDim; ++c) {
        if (base.table[a][b][c].is_zero()) continue;
        const int e = contraction_weight(c) - contraction_weight(a) - contraction_weight(b);
        t.table[a][b][c] = base.table[a][b][c] * CRational(rpow(lambda, e));
      }
  return t;
}

const StructureTable& contraction_limit() {
  static const StructureTable lim = [] {
    StructureTable t = spinor_table();
    for (int a = 0; a < kDim; ++a)
      for (int b = 0; b < kDim; ++b)
        for (int c = 0; c < kDim; ++c) {
          if (t.table[a][b][c].is_zero()) continue;
          const int e = contraction_weight(c) - contraction_weight(a) - contraction_weight(b);
          if (e > 0) throw std::logic_error("contraction diverges");
          if (e < 0) t.table[a][b][c] = 0;
        }
    return t;
  }();
  return lim;
}

double contraction_residual(const Rational& lambda) {
  const StructureTable t = contraction_constants(lambda);
  const StructureTable& lim = contraction_limit();
  double worst = 0;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      worst = std::max(worst, (t.table[a][b] - lim.table[a][b]).max_abs().get_d());
  return worst;
}

// ---------------------------------------------------------------------------

std::map<CRational, std::vector<int>> grading_decomposition(const LieElement& d) {
  const LieElement ds = basis_change(d, Basis::spinor);
  std::map<CRational, std::vector<int>> out;
  for (int b = 0; b < kDim; ++b) {
    const LieElement img = bracket(ds, LieElement::generator(Basis::spinor, b));
    for (int c = 0; c < kDim; ++c)
      if (c != b && !img[c].is_zero()) throw std::domain_error("not a grading element");
    out[img[b]].push_back(b);
  }
  return out;
}

// ---------------------------------------------------------------------------

ExactMatrix killing_form(const StructureTable& t) {
  ExactMatrix k{};
  // ad_a(e_d) = sum_c t[a][d][c] e_c, so tr(ad_a ad_b) = sum_{c,d} t[a][d][c] t[b][c][d].
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      CRational s = 0;
      for (int c = 0; c < kDim; ++c)
        for (int d = 0; d < kDim; ++d) {
          const CRational& x = t.table[a][d][c];
          const CRational& y = t.table[b][c][d];
          if (!x.is_zero() && !y.is_zero()) s += x * y;
        }
      k[a][b] = s;
    }
  return k;
}

ExactMatrix inverse(const ExactMatrix& m) {
  ExactMatrix a = m;
  ExactMatrix inv{};
  for (int i = 0; i < kDim; ++i) inv[i][i] = 1;
  for (int col = 0; col < kDim; ++col) {
    int piv = col;
    while (piv < kDim && a[piv][col].is_zero()) ++piv;
    if (piv == kDim) throw std::domain_error("singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const CRational p = a[col][col];
    for (int j = 0; j < kDim; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (int r = 0; r < kDim; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const CRational f = a[r][col];
      for (int j = 0; j < kDim; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace sphere7::lie
