#include "sphere7/weyl.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace sphere7::weyl {

namespace {

constexpr int kBits = 10;
constexpr std::uint64_t kMask = (1u << kBits) - 1;

const char* const kSlotNames[kSlots] = {"a^", "a-_-", "a+_-", "a", "a+_+", "a-_+"};

// j! C(b,j) C(c,j) for j = 0..min(b,c)
std::vector<long> contraction_counts(int b, int c) {
  const int top = std::min(b, c);
  std::vector<long> out(top + 1);
  long v = 1;
  for (int j = 0; j <= top; ++j) {
    out[j] = v;
    v = v * (b - j) * (c - j) / (j + 1);
  }
  return out;
}

}  // namespace

const char* slot_name(int s) {
  if (s < 0 || s >= kSlots) throw std::out_of_range("oscillator slot");
  return kSlotNames[s];
}

std::uint64_t pack(const Exponents& e) {
  std::uint64_t k = 0;
  for (int s = kSlots - 1; s >= 0; --s) {
    if (e[s] < 0 || static_cast<std::uint64_t>(e[s]) > kMask)
      throw std::overflow_error("oscillator exponent out of range");
    k = (k << kBits) | static_cast<std::uint64_t>(e[s]);
  }
  return k;
}

Exponents unpack(std::uint64_t key) {
  Exponents e{};
  for (int s = 0; s < kSlots; ++s) {
    e[s] = static_cast<int>(key & kMask);
    key >>= kBits;
  }
  return e;
}

template <Product P>
OscPolynomial<P> OscPolynomial<P>::constant(const CRational& c) {
  OscPolynomial p;
  p.add_term(0, c);
  return p;
}

template <Product P>
OscPolynomial<P> OscPolynomial<P>::variable(int s, const CRational& c) {
  Exponents e{};
  e.at(s) = 1;
  return monomial(e, c);
}

template <Product P>
OscPolynomial<P> OscPolynomial<P>::monomial(const Exponents& e, const CRational& c) {
  OscPolynomial p;
  p.add_term(pack(e), c);
  return p;
}

template <Product P>
CRational OscPolynomial<P>::constant_term() const {
  auto it = terms_.find(0);
  return it == terms_.end() ? CRational() : it->second;
}

template <Product P>
bool OscPolynomial<P>::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

template <Product P>
void OscPolynomial<P>::add_term(std::uint64_t key, const CRational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(key, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

template <Product P>
OscPolynomial<P>& OscPolynomial<P>::operator+=(const OscPolynomial& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

template <Product P>
OscPolynomial<P>& OscPolynomial<P>::operator-=(const OscPolynomial& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

template <Product P>
OscPolynomial<P>& OscPolynomial<P>::operator*=(const CRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

template <Product P>
OscPolynomial<P> OscPolynomial<P>::multiply(const OscPolynomial& x, const OscPolynomial& y) {
  OscPolynomial out;
  if (x.is_zero() || y.is_zero()) return out;
  if constexpr (P == Product::commutative) {
    // Packed exponents add slot-wise as long as no field overflows.
    for (const auto& [kx, cx] : x.terms_)
      for (const auto& [ky, cy] : y.terms_) {
        const Exponents ex = unpack(kx), ey = unpack(ky);
        Exponents e{};
        for (int s = 0; s < kSlots; ++s) e[s] = ex[s] + ey[s];
        out.add_term(pack(e), cx * cy);
      }
  } else {
    for (const auto& [kx, cx] : x.terms_) {
      const Exponents ex = unpack(kx);
      for (const auto& [ky, cy] : y.terms_) {
        const Exponents ey = unpack(ky);
        const CRational c = cx * cy;
        // c^A d^B c^C d^D: move d^B past c^C mode by mode.
        std::array<std::vector<long>, kModes> counts;
        for (int k = 0; k < kModes; ++k) counts[k] = contraction_counts(ex[3 + k], ey[k]);
        for (std::size_t j0 = 0; j0 < counts[0].size(); ++j0)
          for (std::size_t j1 = 0; j1 < counts[1].size(); ++j1)
            for (std::size_t j2 = 0; j2 < counts[2].size(); ++j2) {
              const std::array<int, kModes> j{static_cast<int>(j0), static_cast<int>(j1),
                                              static_cast<int>(j2)};
              Exponents e{};
              Rational w = 1;
              for (int k = 0; k < kModes; ++k) {
                e[k] = ex[k] + ey[k] - j[k];
                e[3 + k] = ex[3 + k] - j[k] + ey[3 + k];
                long f = counts[k][j[k]];
                if (kModeSign[k] < 0 && (j[k] & 1)) f = -f;
                w *= f;
              }
              out.add_term(pack(e), c * CRational(w));
            }
      }
    }
  }
  return out;
}

template <Product P>
OscPolynomial<P> OscPolynomial<P>::dagger() const {
  OscPolynomial out;
  for (const auto& [k, c] : terms_) {
    const Exponents e = unpack(k);
    // (c^A d^B)^dagger = c^B d^A up to the sign from mode 1.
    Exponents f{};
    for (int m = 0; m < kModes; ++m) {
      f[m] = e[3 + m];
      f[3 + m] = e[m];
    }
    CRational w = c.conj();
    if ((e[1] + e[4]) & 1) w = -w;
    out.add_term(pack(f), w);
  }
  return out;
}

template <Product P>
std::string OscPolynomial<P>::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    const Exponents e = unpack(k);
    for (int s = 0; s < kSlots; ++s) {
      if (e[s] == 0) continue;
      os << " " << kSlotNames[s];
      if (e[s] > 1) os << "^" << e[s];
    }
  }
  return os.str();
}

template class OscPolynomial<Product::weyl>;
template class OscPolynomial<Product::commutative>;

WeylElement weyl_mul(const WeylElement& x, const WeylElement& y) { return x * y; }

WeylElement weyl_comm(const WeylElement& x, const WeylElement& y) { return x * y - y * x; }

WeylElement weyl_dagger(const WeylElement& x) { return x.dagger(); }

WeylElement number_small() {
  return WeylElement::monomial({1, 0, 0, 1, 0, 0}, 2);
}

WeylElement number_total() {
  return WeylElement::monomial({0, 0, 1, 0, 0, 1}) - WeylElement::monomial({0, 1, 0, 0, 1, 0}) +
         WeylElement::constant(1);
}

// ---------------------------------------------------------------------------

NumberPoly NumberPoly::constant(const CRational& c) {
  NumberPoly p;
  p.add_term(0, 0, c);
  return p;
}

NumberPoly NumberPoly::n() {
  NumberPoly p;
  p.add_term(1, 0, 1);
  return p;
}

NumberPoly NumberPoly::N() {
  NumberPoly p;
  p.add_term(0, 1, 1);
  return p;
}

NumberPoly NumberPoly::total_occupation() {
  NumberPoly p = N();
  p.add_term(1, 0, CRational::from_fraction(1, 2));
  return p;
}

void NumberPoly::add_term(int dn, int dN, const CRational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace({dn, dN}, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

NumberPoly& NumberPoly::operator+=(const NumberPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

NumberPoly& NumberPoly::operator*=(const CRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

NumberPoly operator*(const NumberPoly& x, const NumberPoly& y) {
  NumberPoly out;
  for (const auto& [kx, cx] : x.terms_)
    for (const auto& [ky, cy] : y.terms_)
      out.add_term(kx.first + ky.first, kx.second + ky.second, cx * cy);
  return out;
}

NumberPoly NumberPoly::pow(int k) const {
  if (k < 0) throw std::domain_error("negative power");
  NumberPoly out = constant(1);
  for (int i = 0; i < k; ++i) out = out * *this;
  return out;
}

namespace {

Rational binomial(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

Rational int_pow(int base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

NumberPoly NumberPoly::shifted(int dn, int dN) const {
  NumberPoly out;
  for (const auto& [k, c] : terms_) {
    const auto [pn, pN] = k;
    for (int a = 0; a <= pn; ++a)
      for (int b = 0; b <= pN; ++b) {
        const Rational w = binomial(pn, a) * int_pow(dn, pn - a) * binomial(pN, b) * int_pow(dN, pN - b);
        out.add_term(a, b, c * CRational(w));
      }
  }
  return out;
}

CRational NumberPoly::evaluate(const CRational& n, const CRational& N) const {
  CRational sum;
  for (const auto& [k, c] : terms_) {
    CRational t = c;
    for (int i = 0; i < k.first; ++i) t *= n;
    for (int i = 0; i < k.second; ++i) t *= N;
    sum += t;
  }
  return sum;
}

namespace {

template <class E>
E substitute(const NumberPoly::Terms& terms, const E& n, const E& N) {
  int max_n = 0, max_N = 0;
  for (const auto& [k, c] : terms) {
    max_n = std::max(max_n, k.first);
    max_N = std::max(max_N, k.second);
  }
  std::vector<E> pn{E::constant(1)}, pN{E::constant(1)};
  for (int i = 0; i < max_n; ++i) pn.push_back(pn.back() * n);
  for (int i = 0; i < max_N; ++i) pN.push_back(pN.back() * N);
  E out;
  for (const auto& [k, c] : terms) out += c * (pn[k.first] * pN[k.second]);
  return out;
}

}  // namespace

WeylElement NumberPoly::to_weyl() const {
  return substitute(terms_, number_small(), number_total());
}

PoissonPolynomial NumberPoly::to_classical() const {
  return substitute(terms_, classical_number_small(), classical_number_total());
}

std::string NumberPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    if (k.first) os << " n" << (k.first > 1 ? "^" + std::to_string(k.first) : "");
    if (k.second) os << " N" << (k.second > 1 ? "^" + std::to_string(k.second) : "");
  }
  return os.str();
}

void Polymeromorphic::add(int grade, const NumberPoly& p) {
  if (p.is_zero()) return;
  auto& slot = g_[grade];
  slot += p;
  if (slot.is_zero()) g_.erase(grade);
}

LaurentElement Polymeromorphic::to_laurent() const {
  LaurentElement out;
  for (const auto& [k, p] : g_) out.add(k, p.to_weyl());
  return out;
}

ClassicalLaurent Polymeromorphic::to_classical() const {
  ClassicalLaurent out;
  for (const auto& [k, p] : g_) out.add(k, p.to_classical());
  return out;
}

bool Polymeromorphic::is_real() const {
  for (const auto& [k, p] : g_)
    for (const auto& [e, c] : p.terms())
      if (!c.is_real()) return false;
  return true;
}

Polymeromorphic passage(const Polymeromorphic& f, int s) {
  int dn = 0, dN = 0;
  switch (s) {
    case slot::a: dn = -2; break;
    case slot::adag: dn = 2; break;
    case slot::ap_p:
    case slot::am_p: dN = -1; break;
    case slot::ap_m:
    case slot::am_m: dN = 1; break;
    default: throw std::out_of_range("oscillator slot");
  }
  Polymeromorphic out;
  for (const auto& [k, p] : f.grades()) out.add(k, p.shifted(dn, dN));
  return out;
}

Rational sqrt_series_coefficient(int k) {
  if (k < 0) throw std::domain_error("negative series index");
  Rational r = 1;
  for (int l = 0; l < k; ++l) r *= Rational(1 - 2 * l);
  Rational den = 1;
  for (int l = 1; l <= k; ++l) den *= 2 * l;
  r /= den;
  if (k & 1) r = -r;
  return r;
}

Polymeromorphic sqrt_partial_sum(int ell) {
  if (ell < 0) throw std::domain_error("negative truncation order");
  const NumberPoly x = NumberPoly::total_occupation();
  Polymeromorphic out;
  NumberPoly xk = NumberPoly::constant(1);
  for (int k = 0; k <= ell; ++k) {
    out.add(2 * k - 1, CRational(sqrt_series_coefficient(k)) * xk);
    xk = xk * x;
  }
  return out;
}

Polymeromorphic sqrt_square_residual(int ell) {
  const Polymeromorphic s = sqrt_partial_sum(ell);
  Polymeromorphic out;
  for (const auto& [ga, pa] : s.grades())
    for (const auto& [gb, pb] : s.grades()) out.add(ga + gb, pa * pb);
  out.add(-2, NumberPoly::constant(-1));
  out.add(0, NumberPoly::total_occupation());
  return out;
}

}  // namespace sphere7::weyl
