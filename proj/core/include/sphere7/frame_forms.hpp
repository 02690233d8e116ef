#pragma once

// Pulled-back Maurer-Cartan coframe on the two patches of the sphere, the
// contact form, toric coordinates with the Reeb flow, and finite-difference
// checks of the structure equations.

#include <array>
#include <complex>

#include "sphere7/sphere.hpp"

namespace sphere7 {

using cplx = std::complex<double>;

// Coframe values on one tangent vector. The real components are the
// coefficients of the vector-basis generators (j1..j3, p0..p3, k1..k3).
//
// Double-index components: for nu the first sign is the dotted index, the
// second the undotted one (nu_pm is nu^{+dot}_{-}).
struct CoframeSample {
  Quaternion mu_q, nu_q, kappa_q;  // raw quaternion values
  std::array<double, 3> mu{};
  std::array<double, 4> nu{};
  std::array<double, 3> kappa{};

  cplx mu_pp, mu_pm, mu_mm;
  cplx nu_pp, nu_pm, nu_mp, nu_mm;
  cplx kappa_pp, kappa_pm, kappa_mm;

  double alpha() const { return -kappa[2] / 2.0; }

  // (mu1, mu2, mu3, nu0, nu1, nu2, nu3, kappa1, kappa2, kappa3)
  std::array<double, 10> components() const;
};

CoframeSample coframe_from_quaternions(const Quaternion& mu, const Quaternion& nu,
                                       const Quaternion& kappa);

CoframeSample pullback_s(const TangentVector& u);
CoframeSample pullback_n(const TangentVector& u);
CoframeSample pullback(const TangentVector& u, Patch patch);

double contact_alpha(const TangentVector& u);

// ---- commuting chart around a base point -------------------------------
//
// phi(s) = (p + s) / |p + s| for s in the tangent space at p. The coordinate
// field associated with a fixed tangent u at p is the pushforward of the
// constant field u, so any two such fields commute.

SpherePoint chart_point(const SpherePoint& p, const Vec8& s);
TangentVector chart_field(const SpherePoint& p, const Vec8& s, const Vec8& u);

// Central difference of tau along the chart line with velocity u.
Quaternion tau_derivative(const TangentVector& u, double h);

// | mu_n(u) - (conj(tau) mu(u) tau + 2 conj(tau) D_u tau) |
double gauge_overlap_check(const TangentVector& u, double h);

using EdsResiduals = std::array<double, 10>;

// Residuals of the ten structure equations on the pair (u, v), in the
// component order of CoframeSample::components(). Throws
// std::invalid_argument for h <= 0.
EdsResiduals eds_residual(const TangentVector& u, const TangentVector& v, double h,
                          bool richardson = false);

double max_residual(const EdsResiduals& r);

// log2 of the ratio of max residuals at h and h/2.
double eds_convergence_order(const TangentVector& u, const TangentVector& v, double h);

// ---- toric coordinates ---------------------------------------------------

struct ToricPoint {
  std::array<double, 4> r{};
  std::array<double, 4> theta{};
};

SpherePoint toric_embed(const ToricPoint& t);
ToricPoint reeb_flow(const ToricPoint& t, double s);
// Pushforward of d/dtheta_k (k = 0..3).
TangentVector toric_tangent(const ToricPoint& t, int k);
// Reeb field, the sum of the four angle directions: dx = -x k, dy = -y k.
TangentVector reeb_tangent(const SpherePoint& p);
// Sum r_i^2 dtheta_i evaluated on the given angle velocities.
double toric_alpha(const ToricPoint& t, const std::array<double, 4>& dtheta);

}  // namespace sphere7
