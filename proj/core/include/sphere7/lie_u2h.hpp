#pragma once

// The ten-dimensional real Lie algebra u(2,H) with exact complex-rational
// structure constants in two bases:
//
//   vector basis   j1 j2 j3 p0 p1 p2 p3 k1 k2 k3
//   spinor basis   J++ J+- J-- P+_+ P+_- P-_+ P-_- K++ K+- K--
//
// For P the upper (undotted) index comes first, so P+_- is P^+_{-dot}.
// Dotted indices live on K.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "sphere7/exact.hpp"
#include "sphere7/quaternion.hpp"

namespace sphere7::lie {

inline constexpr int kDim = 10;

enum class Basis { vector, spinor };

namespace gen {
enum Spinor : int { Jpp = 0, Jpm, Jmm, Ppp, Ppm, Pmp, Pmm, Kpp, Kpm, Kmm };
enum Vector : int { j1 = 0, j2, j3, p0, p1, p2, p3, k1, k2, k3 };
}  // namespace gen

// Invariant tensors with index 0 for + and 1 for -: eps^{ab} (undotted,
// upper), eps_{AB} (dotted, lower) and eta_{AB}.
struct EpsilonEta {
  using Table = std::array<std::array<int, 2>, 2>;
  static constexpr Table eps_up{{{0, 1}, {-1, 0}}};
  static constexpr Table eps_dot{{{0, -1}, {1, 0}}};
  static constexpr Table eta{{{0, 1}, {1, 0}}};
};

const char* generator_name(Basis b, int index);
// Lookup by name in either basis; returns -1 if unknown.
int generator_index(Basis b, const std::string& name);

class LieElement {
 public:
  LieElement() = default;
  explicit LieElement(Basis b) : basis_(b) {}

  static LieElement generator(Basis b, int index, CRational coeff = 1);

  Basis basis() const { return basis_; }
  const CRational& operator[](int i) const { return c_[i]; }
  CRational& operator[](int i) { return c_[i]; }

  bool is_zero() const;
  // max over coefficients of |re| + |im|
  Rational max_abs() const;

  LieElement& operator+=(const LieElement& o);
  LieElement& operator-=(const LieElement& o);
  LieElement& operator*=(const CRational& s);
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(const CRational& s, LieElement a) { return a *= s; }
  LieElement operator-() const { return CRational(-1) * *this; }
  friend bool operator==(const LieElement& a, const LieElement& b);

  std::string to_string() const;

 private:
  Basis basis_ = Basis::spinor;
  std::array<CRational, kDim> c_{};
};

// table[a][b] = [e_a, e_b] for basis elements e_a of one fixed basis.
struct StructureTable {
  Basis basis = Basis::spinor;
  std::array<std::array<LieElement, kDim>, kDim> table;

  const LieElement& operator()(int a, int b) const { return table[a][b]; }
};

// Built from the epsilon-contraction formulas.
const StructureTable& spinor_table();
// Transcribed vector-basis bracket list.
const StructureTable& vector_table();
const StructureTable& table_for(Basis b);

// Copy of the spinor table with one relation deliberately broken, for
// mutation tests. Known names: "k-bracket" (sign of [K+-, K++]),
// "p-bracket" (drops the K part of [P+_+, P-_-]), "j-bracket".
StructureTable mutated_spinor_table(const std::string& mutation);
std::vector<std::string> known_mutations();

LieElement bracket(const LieElement& x, const LieElement& y);
LieElement bracket(const LieElement& x, const LieElement& y, const StructureTable& t);

struct JacobiReport {
  Rational max_residual = 0;
  int triples = 0;
  int failing = 0;
  std::array<int, 3> first_failure{-1, -1, -1};
};
JacobiReport verify_jacobi(const StructureTable& t = spinor_table());

// ---- reality ---------------------------------------------------------------

// X^dagger for a spinor generator.
LieElement reality(int spinor_index);
// Conjugate-linear extension to arbitrary elements (either basis).
LieElement dagger(const LieElement& x);

// ---- basis change ------------------------------------------------------------

// Row a holds the vector-basis coefficients of spinor generator a.
const std::array<std::array<CRational, kDim>, kDim>& spinor_in_vector();
// Row a holds the spinor-basis coefficients of vector generator a.
const std::array<std::array<CRational, kDim>, kDim>& vector_in_spinor();

LieElement basis_change(const LieElement& x, Basis to);

// Max residual of [change(x), change(y)] - change([x, y]) over all generator
// pairs; zero when the two tables describe the same algebra.
Rational cross_basis_residual();

// ---- matrix model ------------------------------------------------------------

// Vector generators as 2x2 quaternionic matrices, e.g. j_i = diag(e_i, 0)/2.
BasicQMatrix2<Rational> vector_generator_matrix(int index);
// Inverse of the above on the real form; throws std::domain_error if m is not
// of the form 1/2 [[J.e, P0 + P.e], [-P0 + P.e, K.e]].
std::array<Rational, kDim> decompose_vector_matrix(const BasicQMatrix2<Rational>& m);
// Structure table computed from quaternionic matrix commutators.
StructureTable matrix_vector_table();

// ---- contraction ---------------------------------------------------------------
//
// Rescaled basis: J unchanged, pi = P / lambda, zeta = K / lambda for the
// trace-free K, I = K+- / lambda^2. The constants of the rescaled basis then
// carry powers lambda^{w_c - w_a - w_b} (w = 0 for J, 1 for P and the
// trace-free K, 2 for K+-) and tend to the
// heis_3 + u(1,H) constants as lambda grows.

int contraction_weight(int spinor_index);
const char* contracted_name(int spinor_index);
StructureTable contraction_constants(const Rational& lambda);
const StructureTable& contraction_limit();
// Max entry distance between contraction_constants(lambda) and the limit.
double contraction_residual(const Rational& lambda);

// ---- gradings ---------------------------------------------------------------

// Eigenvalue of ad(D) -> spinor generators with that eigenvalue. Throws
// std::domain_error("not a grading element") if ad(D) is not diagonal on the
// spinor basis.
std::map<CRational, std::vector<int>> grading_decomposition(const LieElement& d);

// ---- Killing form ----------------------------------------------------------------

using ExactMatrix = std::array<std::array<CRational, kDim>, kDim>;
ExactMatrix killing_form(const StructureTable& t = spinor_table());
ExactMatrix inverse(const ExactMatrix& m);

}  // namespace sphere7::lie
