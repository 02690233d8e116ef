#pragma once

// Polynomials in the six oscillator variables, either as normal-ordered
// elements of the Weyl algebra (quantum) or as commuting classical
// variables (Poisson), and truncated Laurent series in sqrt(hbar) over them.
//
// Slot layout. Creators sit to the left in normal order.
//   0  a^dagger   (classical: conj z)
//   1  a^-_{-dot} (classical: z^-_{-dot})
//   2  a^+_{-dot} (classical: z^+_{-dot})
//   3  a          (classical: z)
//   4  a^+_{+dot} (classical: z^+_{+dot})
//   5  a^-_{+dot} (classical: z^-_{+dot})
// Annihilator 3 + k pairs with creator k: [slot 3+k, slot k] = s_k with
// s = (1, -1, 1); all other pairs commute.

#include <array>
#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "sphere7/exact.hpp"

namespace sphere7::weyl {

inline constexpr int kSlots = 6;
inline constexpr int kModes = 3;

namespace slot {
enum : int { adag = 0, am_m, ap_m, a, ap_p, am_p };
}

const char* slot_name(int s);

// Sign of [annihilator k, creator k].
inline constexpr std::array<int, kModes> kModeSign{1, -1, 1};

using Exponents = std::array<int, kSlots>;

// 10 bits per slot.
std::uint64_t pack(const Exponents& e);
Exponents unpack(std::uint64_t key);

enum class Product { weyl, commutative };

template <Product P>
class OscPolynomial {
 public:
  using Terms = std::map<std::uint64_t, CRational>;

  OscPolynomial() = default;
  static OscPolynomial constant(const CRational& c);
  static OscPolynomial variable(int s, const CRational& c = 1);
  static OscPolynomial monomial(const Exponents& e, const CRational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  // Coefficient of the unit monomial.
  CRational constant_term() const;
  bool is_scalar() const;

  void add_term(std::uint64_t key, const CRational& c);

  OscPolynomial& operator+=(const OscPolynomial& o);
  OscPolynomial& operator-=(const OscPolynomial& o);
  OscPolynomial& operator*=(const CRational& s);
  friend OscPolynomial operator+(OscPolynomial x, const OscPolynomial& y) { return x += y; }
  friend OscPolynomial operator-(OscPolynomial x, const OscPolynomial& y) { return x -= y; }
  friend OscPolynomial operator*(const CRational& s, OscPolynomial x) { return x *= s; }
  friend OscPolynomial operator*(OscPolynomial x, const CRational& s) { return x *= s; }
  OscPolynomial operator-() const { return CRational(-1) * *this; }
  friend OscPolynomial operator*(const OscPolynomial& x, const OscPolynomial& y) {
    return OscPolynomial::multiply(x, y);
  }
  friend bool operator==(const OscPolynomial& x, const OscPolynomial& y) {
    return x.terms_ == y.terms_;
  }

  static OscPolynomial multiply(const OscPolynomial& x, const OscPolynomial& y);

  // Conjugate-linear antiautomorphism: a <-> a^dagger,
  // (a^+_{+dot})^dagger = -a^-_{-dot}, (a^+_{-dot})^dagger = a^-_{+dot}.
  OscPolynomial dagger() const;

  std::string to_string() const;

 private:
  Terms terms_;
};

using WeylElement = OscPolynomial<Product::weyl>;
using PoissonPolynomial = OscPolynomial<Product::commutative>;

WeylElement weyl_mul(const WeylElement& x, const WeylElement& y);
WeylElement weyl_comm(const WeylElement& x, const WeylElement& y);
WeylElement weyl_dagger(const WeylElement& x);

// Biderivation with {z, conj z} = -i and {z^a_A, z^b_B} = i eps^{ab} eta_{AB}.
PoissonPolynomial poisson_bracket(const PoissonPolynomial& f, const PoissonPolynomial& g);

// Number operators n = 2 a^dagger a and N = a^+_{-dot} a^-_{+dot} - a^+_{+dot} a^-_{-dot}.
WeylElement number_small();
WeylElement number_total();
PoissonPolynomial classical_number_small();
PoissonPolynomial classical_number_total();

// ---------------------------------------------------------------------------
// Truncated Laurent series in sqrt(hbar). Stored grades are all <= cap() and
// the series is exact at every grade up to and including cap().

inline constexpr int kNoCap = INT_MAX / 4;

template <class E>
class Laurent {
 public:
  Laurent() = default;
  explicit Laurent(int cap) : cap_(cap) {}
  static Laurent single(int grade, const E& e, int cap = kNoCap) {
    Laurent l(cap);
    l.add(grade, e);
    return l;
  }

  int cap() const { return cap_; }
  const std::map<int, E>& grades() const { return g_; }
  bool is_zero() const { return g_.empty(); }
  std::optional<int> min_grade() const {
    if (g_.empty()) return std::nullopt;
    return g_.begin()->first;
  }
  E at(int grade) const {
    auto it = g_.find(grade);
    return it == g_.end() ? E() : it->second;
  }

  void add(int grade, const E& e) {
    if (grade > cap_ || e.is_zero()) return;
    auto& slot = g_[grade];
    slot += e;
    if (slot.is_zero()) g_.erase(grade);
  }

  Laurent truncated(int cap) const {
    Laurent out(std::min(cap, cap_));
    for (const auto& [k, e] : g_)
      if (k <= out.cap_) out.g_[k] = e;
    return out;
  }

  Laurent& operator+=(const Laurent& o) {
    cap_ = std::min(cap_, o.cap_);
    for (auto it = g_.begin(); it != g_.end();) it = (it->first > cap_) ? g_.erase(it) : std::next(it);
    for (const auto& [k, e] : o.g_) add(k, e);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    Laurent neg = o;
    neg *= CRational(-1);
    return *this += neg;
  }
  Laurent& operator*=(const CRational& s) {
    if (s.is_zero()) {
      g_.clear();
      return *this;
    }
    for (auto& [k, e] : g_) e *= s;
    return *this;
  }
  friend Laurent operator+(Laurent x, const Laurent& y) { return x += y; }
  friend Laurent operator-(Laurent x, const Laurent& y) { return x -= y; }
  friend Laurent operator*(const CRational& s, Laurent x) { return x *= s; }

  // Product keeping grades <= cap. The result cap accounts for the caps of
  // both factors, so it never claims more than the inputs determine.
  static Laurent multiply(const Laurent& x, const Laurent& y, int cap = kNoCap) {
    int c = cap;
    if (!y.is_zero() && x.cap_ < kNoCap) c = std::min(c, x.cap_ + *y.min_grade());
    if (!x.is_zero() && y.cap_ < kNoCap) c = std::min(c, y.cap_ + *x.min_grade());
    Laurent out(c);
    for (const auto& [gx, ex] : x.g_)
      for (const auto& [gy, ey] : y.g_)
        if (gx + gy <= c) out.add(gx + gy, E::multiply(ex, ey));
    return out;
  }

  static Laurent commutator(const Laurent& x, const Laurent& y, int cap = kNoCap) {
    return multiply(x, y, cap) - multiply(y, x, cap);
  }

  Laurent dagger() const {
    Laurent out(cap_);
    for (const auto& [k, e] : g_) out.g_[k] = e.dagger();
    return out;
  }

  friend bool operator==(const Laurent& x, const Laurent& y) { return x.g_ == y.g_; }

 private:
  int cap_ = kNoCap;
  std::map<int, E> g_;
};

using LaurentElement = Laurent<WeylElement>;
using ClassicalLaurent = Laurent<PoissonPolynomial>;

ClassicalLaurent poisson_bracket(const ClassicalLaurent& f, const ClassicalLaurent& g,
                                 int cap = kNoCap);

// ---------------------------------------------------------------------------
// Polynomials in the commuting number operators n and N.

class NumberPoly {
 public:
  using Terms = std::map<std::pair<int, int>, CRational>;  // (deg n, deg N) -> coeff

  NumberPoly() = default;
  static NumberPoly constant(const CRational& c);
  static NumberPoly n();
  static NumberPoly N();
  // N + n/2
  static NumberPoly total_occupation();

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(int dn, int dN, const CRational& c);

  NumberPoly& operator+=(const NumberPoly& o);
  NumberPoly& operator*=(const CRational& s);
  friend NumberPoly operator+(NumberPoly x, const NumberPoly& y) { return x += y; }
  friend NumberPoly operator*(const CRational& s, NumberPoly x) { return x *= s; }
  friend NumberPoly operator*(const NumberPoly& x, const NumberPoly& y);
  friend bool operator==(const NumberPoly& x, const NumberPoly& y) { return x.terms_ == y.terms_; }
  NumberPoly pow(int k) const;

  // f(n + dn, N + dN)
  NumberPoly shifted(int dn, int dN) const;
  CRational evaluate(const CRational& n, const CRational& N) const;

  WeylElement to_weyl() const;
  PoissonPolynomial to_classical() const;

  std::string to_string() const;

 private:
  Terms terms_;
};

// Laurent series in sqrt(hbar) whose coefficients are NumberPoly.
class Polymeromorphic {
 public:
  Polymeromorphic() = default;
  const std::map<int, NumberPoly>& grades() const { return g_; }
  void add(int grade, const NumberPoly& p);

  LaurentElement to_laurent() const;
  ClassicalLaurent to_classical() const;
  // Real iff every coefficient is real (dagger-fixed).
  bool is_real() const;

  friend bool operator==(const Polymeromorphic& x, const Polymeromorphic& y) { return x.g_ == y.g_; }

 private:
  std::map<int, NumberPoly> g_;
};

// f' with f * g = g * f' for the variable in slot s.
Polymeromorphic passage(const Polymeromorphic& f, int s);

// Coefficient (-1)^k prod_{l<k}(1 - 2l) / (2^k k!) of x^k in sqrt(1 - x).
Rational sqrt_series_coefficient(int k);

// hbar^{-1/2} sum_{k <= ell} b_k(N + n/2) hbar^k; grade 2k - 1 holds b_k.
Polymeromorphic sqrt_partial_sum(int ell);

// S_ell^2 - (1/hbar - (N + n/2)), computed in the number-operator ring.
Polymeromorphic sqrt_square_residual(int ell);

}  // namespace sphere7::weyl
