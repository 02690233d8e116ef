#pragma once

// Finite-dimensional representations of u(2,H) on the truncated Fock spaces
// H^{1/m} = span{|n1,n2,n3> : n1 + n2 + n3 <= m - 1}, with hbar = 1/m.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "sphere7/embedding.hpp"
#include "sphere7/lie_u2h.hpp"

namespace sphere7::fock {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx>;

struct FockState {
  int n1 = 0, n2 = 0, n3 = 0;
  int total() const { return n1 + n2 + n3; }
  friend bool operator==(const FockState&, const FockState&) = default;
};

// C(m+2, 3); throws std::domain_error for m < 1.
int dim(int m);

// Graded-lex order, ascending: by total, then n1, then n2.
class FockBasis {
 public:
  explicit FockBasis(int m);
  int m() const { return m_; }
  int size() const { return static_cast<int>(states_.size()); }
  const FockState& operator[](int i) const { return states_[i]; }
  const std::vector<FockState>& states() const { return states_; }
  // -1 if the state lies outside the space.
  int index(const FockState& s) const;

 private:
  int m_;
  std::vector<FockState> states_;
};

// Position of a state in the graded-lex order, independent of m.
int graded_lex_index(const FockState& s);

struct RepSet {
  int m = 0;
  std::array<Matrix, lie::kDim> rho;  // spinor basis order

  int dim() const { return static_cast<int>(rho[0].rows()); }
  // Linear extension; x in the spinor basis.
  Matrix operator()(const lie::LieElement& x) const;
};

// Maps H^{1/m} -> H^{1/(m+1)}: rows index the ambient basis, columns the
// first dim(m) of them.
struct PartialRepSet {
  int m = 0;
  int ell = 0;
  std::array<Matrix, lie::kDim> rho;
};

RepSet build_rho(int m);
PartialRepSet build_rho_partial(int m, int ell);

// Partial-sum generators at hbar = 1/m acting from H^{1/level} into
// H^{1/(level+1)}. With level = m this is build_rho_partial in sparse form.
std::array<SparseMatrix, lie::kDim> partial_generators(int m, int level, int ell);

// sqrt(m) * sum_{k <= ell} b_k(x), the action of S_ell on states with
// hbar (N + n/2) = x.
double sqrt_partial_value(int m, int ell, double x);
// max over basis states of |rho(S_ell) - rho_S| on H^{1/m}.
double sqrt_operator_distance(int m, int ell);

// Exact matrix zero-padded into the ambient block.
Matrix to_ambient(const Matrix& exact, int m);

// max over generators of the max-abs entry of partial - exact (exact padded
// into the ambient block).
double partial_distance(const PartialRepSet& p, const RepSet& exact);
// Restricted to rows and columns of states with n1 + n2 + n3 <= m - 2.
double interior_distance(const PartialRepSet& p, const RepSet& exact);
// Same as partial_distance, computed from per-state weights alone; cheap for large ell.
double partial_distance(int m, int ell);
// Smallest ell <= max_ell with partial_distance(m, ell) < tol.
std::optional<int> convergence_ell(int m, double tol, int max_ell = 1 << 26);

// max over 45 pairs of |[rho X, rho Y] - rho [X, Y]|_inf
double verify_brackets(const RepSet& r);
// max over generators of |(rho X)^dagger - rho(X^dagger)|_inf
double verify_reality(const RepSet& r);
// max |trace rho X|
double max_trace(const RepSet& r);

// Dimension of {M : [M, rho X] = 0 for all X}.
int commutant_dimension(const RepSet& r, double tol = 1e-8);
// Same, computed by a dense SVD of the full stacked system (slow, for
// cross-checking).
int commutant_dimension_dense(const RepSet& r, double tol = 1e-8);

// |C2 - (tr C2 / D) Id|_inf with C2 built from the inverse Killing form.
double casimir_deviation(const RepSet& r);
Matrix casimir(const RepSet& r);

struct FiltrationReport {
  std::vector<int> dims;     // dims[m-1] = dim(m)
  bool strictly_increasing = false;
  bool basis_compatible = false;
  // For each m < mMax: largest |entry| of rho^{1/(m+1)} coupling the H^{1/m}
  // block to its complement. Nonzero means the block is not invariant.
  std::vector<double> off_block;
};
FiltrationReport filtration_check(int m_max);

// exp(t X) for antihermitian X; throws std::domain_error otherwise.
Matrix exponentiate(const Matrix& x, double t, double tol = 1e-10);

double max_abs(const Matrix& m);
double unitarity_residual(const Matrix& u);

// Evaluates a Laurent series over the Weyl algebra on H^{1/m} at hbar = 1/m,
// landing in the ambient block H^{1/(m+1)}. Throws std::domain_error if a
// state leaves that block.
Matrix evaluate(const weyl::LaurentElement& x, int m);

// Spinor generator names in matrix order, for dumps.
std::vector<std::string> generator_names();

}  // namespace sphere7::fock
