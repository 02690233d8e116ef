#pragma once

// The quantum connection on the sphere in a local trivialization: the exact
// form A = kappa.rho(K) + nu.rho(P) + mu.rho(J) on H^{1/m}, its truncated
// counterpart built from partial square-root sums, finite-difference
// curvature, and RK4 parallel transport with patch switching.

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "sphere7/fock_rep.hpp"
#include "sphere7/frame_forms.hpp"

namespace sphere7::conn {

using fock::cplx;
using fock::Matrix;
using fock::SparseMatrix;
using Vector = Eigen::VectorXcd;

struct ConnectionMode {
  enum Kind { exact, truncated } kind = exact;
  int ell = 0;  // truncated only: partial sums run to ell + 1

  static ConnectionMode exact_mode() { return {}; }
  static ConnectionMode truncated_mode(int ell) { return {truncated, ell}; }
  std::string name() const;
};

// Spinor-basis weights of the coframe in the connection form. Symmetric
// index pairs are summed in both orders, so K+- and J+- carry a factor 2.
std::array<cplx, lie::kDim> connection_coefficients(const CoframeSample& c);

// Precomputed generator matrices for one m and mode.
class Connection {
 public:
  Connection(int m, ConnectionMode mode);

  int m() const { return m_; }
  const ConnectionMode& mode() const { return mode_; }
  int dim() const { return fock::dim(m_); }

  // Exact: D x D. Truncated: dim(m+1) x dim(m) into the ambient block.
  Matrix at(const TangentVector& u, Patch patch = Patch::s) const;
  Matrix from_coefficients(const std::array<cplx, lie::kDim>& c) const;

  // Truncated only: the same form one level up, dim(m+2) x dim(m+1).
  SparseMatrix upper_at(const TangentVector& u, Patch patch = Patch::s) const;

  const fock::RepSet& rep() const { return rep_; }

 private:
  int m_;
  ConnectionMode mode_;
  fock::RepSet rep_;                                  // exact
  std::array<SparseMatrix, lie::kDim> lower_, upper_;  // truncated
};

struct ConnectionSample {
  TangentVector u;
  int m = 0;
  ConnectionMode mode;
  Patch patch = Patch::s;
  Matrix value;
};

ConnectionSample connection_at(const TangentVector& u, int m, ConnectionMode mode,
                               Patch patch = Patch::s);

// Sum over generators of coefficient times the sqrt(hbar)-grade -2 part of
// the embedded generator, which must be a scalar; equals i alpha(u).
cplx leading_coefficient(const TangentVector& u, int ell);

// |u[A(v)] - v[A(u)] + [A(u), A(v)]|_inf in the commuting chart at the base
// of u (u and v share a base point). Throws std::invalid_argument for h <= 0.
double curvature_at(const Connection& a, const TangentVector& u, const TangentVector& v, double h,
                    Patch patch = Patch::s);
double curvature_at(const TangentVector& u, const TangentVector& v, int m, ConnectionMode mode,
                    double h, Patch patch = Patch::s);

// rho(h) for h = diag(tau, 1): frames satisfy psi_s = G psi_n.
Matrix gauge_matrix(const SpherePoint& p, const fock::RepSet& rep);

// ---- paths ----------------------------------------------------------------

struct PathSpec {
  enum Kind { constant, great_circle, toric, piecewise } kind = constant;
  std::vector<Vec8> points;  // constant: {p}; great_circle: {p, q}; piecewise: vertices
  ToricPoint torus;          // toric: start point
  std::array<double, 4> omega{};  // toric: angular velocities
  double t0 = 0.0, t1 = 1.0;
  int steps = 1000;

  static PathSpec stationary(const SpherePoint& p, int steps);
  // Full loop through p and q (t in [0, 2 pi]).
  static PathSpec great_circle_loop(const SpherePoint& p, const SpherePoint& q, int steps);
  // Shorter arc from p to q.
  static PathSpec great_circle_arc(const SpherePoint& p, const SpherePoint& q, int steps);
  static PathSpec toric_curve(const ToricPoint& start, const std::array<double, 4>& omega,
                              double duration, int steps);
  // Straight segments between ambient vertices, projected to the sphere.
  static PathSpec piecewise_path(const std::vector<SpherePoint>& vertices, int steps);
  // Traverses the same curve backwards.
  PathSpec reversed() const;
};

// Point and velocity at parameter t. For piecewise paths the segment is the
// one containing `segment_hint` (defaults to t), so integrator stages at a
// vertex stay on their own segment.
TangentVector path_sample(const PathSpec& path, double t);
TangentVector path_sample(const PathSpec& path, double t, double segment_hint);

struct PatchSwitch {
  int step = 0;
  Patch from = Patch::s;
  Patch to = Patch::n;
};

struct TransportOptions {
  bool reproject = false;  // polar-project U back to the unitary group each step
  bool allow_switch = true;
  double switch_radius = 0.05;
};

struct TransportResult {
  Matrix U;  // in the frame of the starting patch
  double unitarity_residual = 0.0;
  double holonomy_distance = 0.0;  // |U - Id|_inf
  int steps = 0;
  Patch start_patch = Patch::s;
  std::vector<Patch> patches;  // per step
  std::vector<PatchSwitch> switches;
  bool reprojected = false;
};

// Solves U' = -A(gamma'(t)) U, U(t0) = Id, with fixed-step RK4 in the exact
// mode. Piecewise paths keep fourth order when the step count is a multiple
// of the segment count. Throws std::invalid_argument for fewer than 2 steps and
// PatchViolation if the path leaves the patch with switching disabled.
TransportResult parallel_transport(const PathSpec& path, int m, const TransportOptions& opt = {});
TransportResult parallel_transport(const PathSpec& path, const Connection& a,
                                   const TransportOptions& opt = {});

// One Reeb period, all four angles advancing by 2 pi.
TransportResult reeb_transport(const ToricPoint& t0, int m, int steps,
                               const TransportOptions& opt = {});

// |<f, U i>|^2 / (|f|^2 |i|^2); throws std::invalid_argument for zero input.
double born_probability(const Vector& psi_i, const Vector& psi_f, const Matrix& U);
double born_probability(const Vector& psi_i, const Vector& psi_f, const PathSpec& path, int m);

}  // namespace sphere7::conn
