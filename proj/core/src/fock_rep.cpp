#include "sphere7/fock_rep.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "sphere7/tolerances.hpp"

namespace sphere7::fock {

namespace {

using lie::gen::Spinor;
constexpr cplx I{0.0, 1.0};

double safe_sqrt(double r) {
  if (r < 0.0) {
    if (r < -tol::radicand_clamp) throw std::domain_error("negative radicand");
    return 0.0;
  }
  return std::sqrt(r);
}

double rt(int k) { return std::sqrt(static_cast<double>(k)); }

// s(t): value of the square-root operator on a state of total occupation t.
using SqrtFn = std::function<double(int)>;

using Triplets = std::array<std::vector<Eigen::Triplet<cplx>>, lie::kDim>;

// Matrix entries of the ten generators on `domain` with rows in `codomain`.
Triplets assemble(const FockBasis& domain, const FockBasis& codomain, double inv_hbar,
                  const SqrtFn& s) {
  Triplets rho;

  for (int col = 0; col < domain.size(); ++col) {
    const FockState st = domain[col];
    const auto [n1, n2, n3] = st;
    const int tot = st.total();
    auto put = [&](int g, FockState to, cplx c) {
      if (c == cplx{}) return;
      const int row = codomain.index(to);
      if (row < 0) {
        if (std::abs(c) > tol::rep) throw std::domain_error("state leaves the ambient space");
        return;
      }
      rho[g].emplace_back(row, col, c);
    };

    put(Spinor::Jpp, {n1, n2 - 1, n3 + 1}, 2.0 * I * rt(n3 + 1) * rt(n2));
    put(Spinor::Jpm, st, -I * double(n3 - n2));
    put(Spinor::Jmm, {n1, n2 + 1, n3 - 1}, -2.0 * I * rt(n2 + 1) * rt(n3));

    if (n1 > 0) put(Spinor::Kpp, {n1 - 1, n2, n3}, -2.0 * I * rt(n1) * s(tot - 1));
    put(Spinor::Kpm, st, I * (inv_hbar - 2.0 * n1 - n2 - n3 - 1.0));
    put(Spinor::Kmm, {n1 + 1, n2, n3}, 2.0 * I * rt(n1 + 1) * s(tot));

    // P+_+ = -c2 d0 + S d1
    if (n1 > 0) put(Spinor::Ppp, {n1 - 1, n2, n3 + 1}, -rt(n1) * rt(n3 + 1));
    if (n2 > 0) put(Spinor::Ppp, {n1, n2 - 1, n3}, -rt(n2) * s(tot - 1));
    // P-_- = c0 d2 + c1 S
    if (n3 > 0) put(Spinor::Pmm, {n1 + 1, n2, n3 - 1}, rt(n1 + 1) * rt(n3));
    put(Spinor::Pmm, {n1, n2 + 1, n3}, rt(n2 + 1) * s(tot));
    // P-_+ = -c1 d0 + S d2
    if (n1 > 0) put(Spinor::Pmp, {n1 - 1, n2 + 1, n3}, -rt(n1) * rt(n2 + 1));
    if (n3 > 0) put(Spinor::Pmp, {n1, n2, n3 - 1}, rt(n3) * s(tot - 1));
    // P+_- = c0 d1 + c2 S
    if (n2 > 0) put(Spinor::Ppm, {n1 + 1, n2 - 1, n3}, -rt(n1 + 1) * rt(n2));
    put(Spinor::Ppm, {n1, n2, n3 + 1}, rt(n3 + 1) * s(tot));
  }
  return rho;
}

std::array<Matrix, lie::kDim> to_dense(const Triplets& t, int rows, int cols) {
  std::array<Matrix, lie::kDim> out;
  for (int a = 0; a < lie::kDim; ++a) {
    out[a] = Matrix::Zero(rows, cols);
    for (const auto& e : t[a]) out[a](e.row(), e.col()) += e.value();
  }
  return out;
}

// sum_{k <= ell} b_k x^k
double partial_series(int ell, double x) {
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < ell; ++k) {
    term *= x * (2.0 * k - 1.0) / (2.0 * k + 2.0);
    sum += term;
  }
  return sum;
}

double exact_sqrt_value(int m, int t) { return safe_sqrt(double(m) - t - 1.0); }

}  // namespace

int dim(int m) {
  if (m < 1) throw std::domain_error("Fock truncation needs m >= 1");
  return (m + 2) * (m + 1) * m / 6;
}

FockBasis::FockBasis(int m) : m_(m) {
  states_.reserve(dim(m));
  for (int t = 0; t < m; ++t)
    for (int n1 = 0; n1 <= t; ++n1)
      for (int n2 = 0; n2 <= t - n1; ++n2) states_.push_back({n1, n2, t - n1 - n2});
}

int graded_lex_index(const FockState& s) {
  const int t = s.total();
  // states of lower total, then those with smaller n1, then smaller n2
  int idx = t == 0 ? 0 : dim(t);
  for (int a = 0; a < s.n1; ++a) idx += t - a + 1;
  return idx + s.n2;
}

int FockBasis::index(const FockState& s) const {
  if (s.n1 < 0 || s.n2 < 0 || s.n3 < 0 || s.total() >= m_) return -1;
  return graded_lex_index(s);
}

Matrix RepSet::operator()(const lie::LieElement& x) const {
  if (x.basis() != lie::Basis::spinor) throw std::invalid_argument("representation expects the spinor basis");
  Matrix out = Matrix::Zero(dim(), dim());
  for (int a = 0; a < lie::kDim; ++a)
    if (!x[a].is_zero()) out += x[a].to_complex() * rho[a];
  return out;
}

RepSet build_rho(int m) {
  const FockBasis b(m);
  RepSet r;
  r.m = m;
  r.rho = to_dense(assemble(b, b, m, [m](int t) { return exact_sqrt_value(m, t); }), b.size(),
                   b.size());
  return r;
}

double sqrt_partial_value(int m, int ell, double x) {
  if (ell < 0) throw std::domain_error("negative truncation order");
  return std::sqrt(double(m)) * partial_series(ell, x);
}

PartialRepSet build_rho_partial(int m, int ell) {
  const FockBasis domain(m);
  const FockBasis ambient(m + 1);
  std::vector<double> s(m);
  for (int t = 0; t < m; ++t) s[t] = sqrt_partial_value(m, ell, (t + 1.0) / m);
  PartialRepSet p;
  p.m = m;
  p.ell = ell;
  p.rho = to_dense(assemble(domain, ambient, m, [&s](int t) { return s.at(t); }), ambient.size(),
                   domain.size());
  return p;
}

std::array<SparseMatrix, lie::kDim> partial_generators(int m, int level, int ell) {
  if (level < 1) throw std::domain_error("Fock truncation needs level >= 1");
  const FockBasis domain(level), codomain(level + 1);
  std::vector<double> s(level);
  for (int t = 0; t < level; ++t) s[t] = sqrt_partial_value(m, ell, (t + 1.0) / m);
  const Triplets t = assemble(domain, codomain, m, [&s](int k) { return s.at(k); });
  std::array<SparseMatrix, lie::kDim> out;
  for (int a = 0; a < lie::kDim; ++a) {
    out[a].resize(codomain.size(), domain.size());
    out[a].setFromTriplets(t[a].begin(), t[a].end());
  }
  return out;
}

double sqrt_operator_distance(int m, int ell) {
  double d = 0;
  for (int t = 0; t < m; ++t)
    d = std::max(d, std::abs(sqrt_partial_value(m, ell, (t + 1.0) / m) - exact_sqrt_value(m, t)));
  return d;
}

Matrix to_ambient(const Matrix& exact, int m) {
  Matrix out = Matrix::Zero(dim(m + 1), dim(m));
  out.topRows(exact.rows()) = exact;
  return out;
}

double partial_distance(const PartialRepSet& p, const RepSet& exact) {
  double d = 0;
  for (int a = 0; a < lie::kDim; ++a)
    d = std::max(d, max_abs(p.rho[a] - to_ambient(exact.rho[a], exact.m)));
  return d;
}

double interior_distance(const PartialRepSet& p, const RepSet& exact) {
  if (exact.m < 2) return 0.0;
  const int d = dim(exact.m - 1);
  double out = 0;
  for (int a = 0; a < lie::kDim; ++a)
    out = std::max(out, max_abs(p.rho[a].topLeftCorner(d, d) - exact.rho[a].topLeftCorner(d, d)));
  return out;
}

// The largest coefficient multiplying s(t) in any generator is 2 sqrt(t + 1)
// (from K++ and K--), so the matrix distance is a max over totals.
double partial_distance(int m, int ell) {
  double d = 0;
  for (int t = 0; t < m; ++t) {
    const double err = std::abs(sqrt_partial_value(m, ell, (t + 1.0) / m) - exact_sqrt_value(m, t));
    d = std::max(d, 2.0 * rt(t + 1) * err);
  }
  return d;
}

std::optional<int> convergence_ell(int m, double tol, int max_ell) {
  std::vector<double> x(m), term(m, 1.0), sum(m, 1.0), target(m), w(m);
  const double sm = std::sqrt(double(m));
  for (int t = 0; t < m; ++t) {
    x[t] = (t + 1.0) / m;
    target[t] = exact_sqrt_value(m, t);
    w[t] = 2.0 * rt(t + 1);
  }
  for (int ell = 0; ell <= max_ell; ++ell) {
    if (ell > 0)
      for (int t = 0; t < m; ++t) {
        term[t] *= x[t] * (2.0 * (ell - 1) - 1.0) / (2.0 * (ell - 1) + 2.0);
        sum[t] += term[t];
      }
    double d = 0;
    for (int t = 0; t < m; ++t) d = std::max(d, w[t] * std::abs(sm * sum[t] - target[t]));
    if (d < tol) return ell;
  }
  return std::nullopt;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double unitarity_residual(const Matrix& u) {
  return max_abs(u.adjoint() * u - Matrix::Identity(u.cols(), u.cols()));
}

double verify_brackets(const RepSet& r) {
  double worst = 0;
  for (int a = 0; a < lie::kDim; ++a)
    for (int b = a + 1; b < lie::kDim; ++b) {
      const lie::LieElement t = lie::bracket(lie::LieElement::generator(lie::Basis::spinor, a),
                                             lie::LieElement::generator(lie::Basis::spinor, b));
      const Matrix lhs = r.rho[a] * r.rho[b] - r.rho[b] * r.rho[a];
      worst = std::max(worst, max_abs(lhs - r(t)));
    }
  return worst;
}

double verify_reality(const RepSet& r) {
  double worst = 0;
  for (int a = 0; a < lie::kDim; ++a)
    worst = std::max(worst, max_abs(r.rho[a].adjoint() - r(lie::reality(a))));
  return worst;
}

double max_trace(const RepSet& r) {
  double worst = 0;
  for (const auto& m : r.rho) worst = std::max(worst, std::abs(m.trace()));
  return worst;
}

namespace {

int count_null(const Eigen::VectorXd& singular_or_eigen, double tol) {
  const double top = singular_or_eigen.size() ? singular_or_eigen.cwiseAbs().maxCoeff() : 0.0;
  const double cut = tol * std::max(1.0, top);
  int n = 0;
  for (int i = 0; i < singular_or_eigen.size(); ++i)
    if (std::abs(singular_or_eigen[i]) <= cut) ++n;
  return n;
}

}  // namespace

int commutant_dimension(const RepSet& r, double tol) {
  const int D = r.dim();
  // Any M in the commutant preserves the joint eigenspaces of the two
  // diagonal generators, so only entries with matching weights are free.
  const auto& kd = r.rho[Spinor::Kpm];
  const auto& jd = r.rho[Spinor::Jpm];
  std::vector<std::pair<int, int>> unknowns;
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      if (std::abs(kd(i, i) - kd(j, j)) < 1e-9 && std::abs(jd(i, i) - jd(j, j)) < 1e-9)
        unknowns.emplace_back(i, j);
  const int U = static_cast<int>(unknowns.size());

  // Gram matrix of the maps E_ij -> E_ij R - R E_ij, summed over generators.
  Matrix G = Matrix::Zero(U, U);
  for (const auto& R : r.rho) {
    const Matrix RRh = R * R.adjoint();
    const Matrix RhR = R.adjoint() * R;
    for (int u = 0; u < U; ++u) {
      const auto [i, j] = unknowns[u];
      for (int v = 0; v < U; ++v) {
        const auto [k, l] = unknowns[v];
        cplx g = -std::conj(R(j, l)) * R(i, k) - R(l, j) * std::conj(R(k, i));
        if (i == k) g += RRh(l, j);
        if (j == l) g += RhR(i, k);
        G(u, v) += g;
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(G, Eigen::EigenvaluesOnly);
  return count_null(es.eigenvalues(), tol);
}

int commutant_dimension_dense(const RepSet& r, double tol) {
  const int D = r.dim();
  const Matrix Id = Matrix::Identity(D, D);
  Matrix A(lie::kDim * D * D, D * D);
  for (int a = 0; a < lie::kDim; ++a) {
    // vec(M R - R M) = (R^T (x) I - I (x) R) vec(M), column-major vec
    const Matrix& R = r.rho[a];
    Matrix block = Matrix::Zero(D * D, D * D);
    for (int p = 0; p < D; ++p)
      for (int q = 0; q < D; ++q) {
        block.block(p * D, q * D, D, D) += R(q, p) * Id;
        if (p == q) block.block(p * D, q * D, D, D) -= R;
      }
    A.middleRows(a * D * D, D * D) = block;
  }
  Eigen::BDCSVD<Matrix> svd(A);
  const Eigen::VectorXd sv = svd.singularValues();
  // BDCSVD returns min(rows, cols) values; rows >= cols here.
  return count_null(sv, tol);
}

Matrix casimir(const RepSet& r) {
  const lie::ExactMatrix kinv = lie::inverse(lie::killing_form());
  const int D = r.dim();
  Matrix c = Matrix::Zero(D, D);
  for (int a = 0; a < lie::kDim; ++a)
    for (int b = 0; b < lie::kDim; ++b)
      if (!kinv[a][b].is_zero()) c += kinv[a][b].to_complex() * (r.rho[a] * r.rho[b]);
  return c;
}

double casimir_deviation(const RepSet& r) {
  const Matrix c = casimir(r);
  const int D = r.dim();
  return max_abs(c - (c.trace() / double(D)) * Matrix::Identity(D, D));
}

FiltrationReport filtration_check(int m_max) {
  if (m_max < 2) throw std::domain_error("filtration check needs mMax >= 2");
  FiltrationReport rep;
  rep.strictly_increasing = true;
  rep.basis_compatible = true;
  for (int m = 1; m <= m_max; ++m) {
    rep.dims.push_back(dim(m));
    if (m > 1 && rep.dims[m - 1] <= rep.dims[m - 2]) rep.strictly_increasing = false;
  }
  for (int m = 1; m < m_max; ++m) {
    const FockBasis small(m), big(m + 1);
    for (int i = 0; i < small.size(); ++i)
      if (!(small[i] == big[i])) rep.basis_compatible = false;
    const RepSet r = build_rho(m + 1);
    const int d = small.size();
    const int rest = big.size() - d;
    double off = 0;
    for (const auto& x : r.rho) off = std::max(off, max_abs(x.bottomLeftCorner(rest, d)));
    rep.off_block.push_back(off);
  }
  return rep;
}

Matrix exponentiate(const Matrix& x, double t, double tol) {
  if (x.rows() != x.cols()) throw std::invalid_argument("exponentiate needs a square matrix");
  if (max_abs(x + x.adjoint()) > tol) throw std::domain_error("matrix is not antihermitian");
  // x = -i h with h hermitian
  const Matrix h = I * x;
  Eigen::SelfAdjointEigenSolver<Matrix> es((h + h.adjoint()) / 2.0);
  const Eigen::VectorXd& lam = es.eigenvalues();
  Eigen::VectorXcd phase(lam.size());
  for (int i = 0; i < lam.size(); ++i) phase[i] = std::exp(-I * (t * lam[i]));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

// Ladder action of one normal-ordered monomial on a basis state.
bool apply_monomial(const weyl::Exponents& e, FockState& s, double& c) {
  auto lower = [&](int& n, int times, double sign) {
    for (int i = 0; i < times; ++i) {
      if (n == 0) return false;
      c *= sign * rt(n);
      --n;
    }
    return true;
  };
  auto raise = [&](int& n, int times) {
    for (int i = 0; i < times; ++i) {
      ++n;
      c *= rt(n);
    }
  };
  using namespace weyl::slot;
  if (!lower(s.n1, e[a], 1.0) || !lower(s.n2, e[ap_p], -1.0) || !lower(s.n3, e[am_p], 1.0))
    return false;
  raise(s.n1, e[adag]);
  raise(s.n2, e[am_m]);
  raise(s.n3, e[ap_m]);
  return true;
}

}  // namespace

Matrix evaluate(const weyl::LaurentElement& x, int m) {
  const FockBasis domain(m), ambient(m + 1);
  Matrix out = Matrix::Zero(ambient.size(), domain.size());
  for (const auto& [grade, w] : x.grades()) {
    const double scale = std::pow(double(m), -grade / 2.0);
    for (const auto& [key, coeff] : w.terms()) {
      const weyl::Exponents e = weyl::unpack(key);
      const cplx k = coeff.to_complex() * scale;
      for (int col = 0; col < domain.size(); ++col) {
        FockState s = domain[col];
        double c = 1.0;
        if (!apply_monomial(e, s, c)) continue;
        const int row = ambient.index(s);
        if (row < 0) throw std::domain_error("state leaves the ambient space");
        out(row, col) += k * c;
      }
    }
  }
  return out;
}

std::vector<std::string> generator_names() {
  std::vector<std::string> out;
  for (int a = 0; a < lie::kDim; ++a) out.emplace_back(lie::generator_name(lie::Basis::spinor, a));
  return out;
}

}  // namespace sphere7::fock
