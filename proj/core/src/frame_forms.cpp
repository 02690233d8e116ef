#include "sphere7/frame_forms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sphere7 {

namespace {

constexpr cplx I{0.0, 1.0};

int levi(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((i + 1) % 3 == j) ? 1 : -1;
}

// d(conj(q)^{-1}) along dq.
Quaternion dinv_conj(const Quaternion& q, const Quaternion& dq) {
  const Quaternion ci = qinv(q.conj());
  return -(ci * dq.conj() * ci);
}

}  // namespace

std::array<double, 10> CoframeSample::components() const {
  return {mu[0], mu[1], mu[2], nu[0], nu[1], nu[2], nu[3], kappa[0], kappa[1], kappa[2]};
}

CoframeSample coframe_from_quaternions(const Quaternion& mu, const Quaternion& nu,
                                       const Quaternion& kappa) {
  CoframeSample c;
  c.mu_q = mu;
  c.nu_q = nu;
  c.kappa_q = kappa;
  c.mu = {mu.q1, mu.q2, mu.q3};
  c.nu = {nu.q0, nu.q1, nu.q2, nu.q3};
  c.kappa = {kappa.q1, kappa.q2, kappa.q3};

  const auto& m = c.mu;
  const auto& n = c.nu;
  const auto& k = c.kappa;
  c.mu_pp = -(m[0] + I * m[1]) / 4.0;
  c.mu_pm = -m[2] / 4.0;
  c.mu_mm = (m[0] - I * m[1]) / 4.0;
  c.nu_pp = (-n[3] + I * n[0]) / 2.0;
  c.nu_pm = (n[1] - I * n[2]) / 2.0;
  c.nu_mp = -(n[1] + I * n[2]) / 2.0;
  c.nu_mm = -(n[3] + I * n[0]) / 2.0;
  c.kappa_pp = (k[0] - I * k[1]) / 4.0;
  c.kappa_pm = -k[2] / 4.0;
  c.kappa_mm = -(k[0] + I * k[1]) / 4.0;
  return c;
}

CoframeSample pullback_s(const TangentVector& u) {
  const auto& [x, y] = u.base;
  require_patch(u.base, Patch::s);
  const Quaternion& dx = u.dx;
  const Quaternion& dy = u.dy;
  const Quaternion xi = qinv(x);
  const Quaternion mu = (x * dx.conj() + x * y * dy.conj() * x.conj()) * (2.0 / x.normsq()) +
                        2.0 * (x * y * xi * dinv_conj(x, dx) * y.conj() * x.conj());
  const Quaternion nu = 2.0 * (x * dy - x * y * xi * dx);
  const Quaternion kappa = 2.0 * (x.conj() * dx + y.conj() * dy);
  return coframe_from_quaternions(mu, nu, kappa);
}

CoframeSample pullback_n(const TangentVector& u) {
  const auto& [x, y] = u.base;
  require_patch(u.base, Patch::n);
  const Quaternion& dx = u.dx;
  const Quaternion& dy = u.dy;
  const Quaternion yi = qinv(y);
  const Quaternion mu = (y * dy.conj() + y * x * dx.conj() * y.conj()) * (2.0 / y.normsq()) +
                        2.0 * (y * x * yi * dinv_conj(y, dy) * x.conj() * y.conj());
  const Quaternion nu = 2.0 * (y * dx - y * x * yi * dy);
  const Quaternion kappa = 2.0 * (x.conj() * dx + y.conj() * dy);
  return coframe_from_quaternions(mu, nu, kappa);
}

CoframeSample pullback(const TangentVector& u, Patch patch) {
  return patch == Patch::s ? pullback_s(u) : pullback_n(u);
}

double contact_alpha(const TangentVector& u) {
  // Only kappa is needed and it is global.
  const Quaternion kappa = 2.0 * (u.base.x.conj() * u.dx + u.base.y.conj() * u.dy);
  return -kappa.q3 / 2.0;
}

// ---------------------------------------------------------------------------

SpherePoint chart_point(const SpherePoint& p, const Vec8& s) {
  Vec8 q = p.ambient();
  for (int i = 0; i < 8; ++i) q[i] += s[i];
  return SpherePoint::from_ambient(q);
}

TangentVector chart_field(const SpherePoint& p, const Vec8& s, const Vec8& u) {
  Vec8 q = p.ambient();
  for (int i = 0; i < 8; ++i) q[i] += s[i];
  const double qq = dot8(q, q);
  const double qn = std::sqrt(qq);
  const double c = dot8(q, u) / qq;
  Vec8 w{};
  for (int i = 0; i < 8; ++i) w[i] = (u[i] - c * q[i]) / qn;
  const SpherePoint b = SpherePoint::from_ambient(q);
  return {b, {w[0], w[1], w[2], w[3]}, {w[4], w[5], w[6], w[7]}};
}

namespace {

Vec8 scaled(const Vec8& v, double h) {
  Vec8 out{};
  for (int i = 0; i < 8; ++i) out[i] = h * v[i];
  return out;
}

void check_step(double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
}

}  // namespace

Quaternion tau_derivative(const TangentVector& u, double h) {
  check_step(h);
  const Vec8 ua = u.ambient();
  const Quaternion tp = transition_tau(chart_point(u.base, scaled(ua, h)));
  const Quaternion tm = transition_tau(chart_point(u.base, scaled(ua, -h)));
  return (tp - tm) * (1.0 / (2.0 * h));
}

double gauge_overlap_check(const TangentVector& u, double h) {
  const Quaternion tau = transition_tau(u.base);
  const Quaternion dtau = tau_derivative(u, h);
  const Quaternion mu_s = pullback_s(u).mu_q;
  const Quaternion mu_n = pullback_n(u).mu_q;
  const Quaternion predicted = tau.conj() * mu_s * tau + 2.0 * (tau.conj() * dtau);
  return qnorm(mu_n - predicted);
}

namespace {

// u[omega(V)] by central differences along the chart line of u.
std::array<double, 10> directional(const TangentVector& u, const TangentVector& v, double h) {
  const Vec8 ua = u.ambient();
  const Vec8 va = v.ambient();
  const auto fp = pullback_s(chart_field(u.base, scaled(ua, h), va)).components();
  const auto fm = pullback_s(chart_field(u.base, scaled(ua, -h), va)).components();
  std::array<double, 10> d{};
  for (int a = 0; a < 10; ++a) d[a] = (fp[a] - fm[a]) / (2.0 * h);
  return d;
}

std::array<double, 10> exterior_derivative(const TangentVector& u, const TangentVector& v,
                                           double h, bool richardson) {
  auto dw = [&](double step) {
    const auto a = directional(u, v, step);
    const auto b = directional(v, u, step);
    std::array<double, 10> d{};
    for (int c = 0; c < 10; ++c) d[c] = a[c] - b[c];
    return d;
  };
  auto coarse = dw(h);
  if (!richardson) return coarse;
  const auto fine = dw(h / 2.0);
  for (int c = 0; c < 10; ++c) coarse[c] = (4.0 * fine[c] - coarse[c]) / 3.0;
  return coarse;
}

}  // namespace

EdsResiduals eds_residual(const TangentVector& u, const TangentVector& v, double h,
                          bool richardson) {
  check_step(h);
  require_patch(u.base, Patch::s);
  const auto d = exterior_derivative(u, v, h, richardson);
  const CoframeSample U = pullback_s(u);
  const CoframeSample V = pullback_s(v);

  // (a ^ b)(u, v) = a(u) b(v) - a(v) b(u)
  auto wedge = [](double au, double av, double bu, double bv) { return au * bv - av * bu; };
  const auto& mu = U.mu;
  const auto& mv = V.mu;
  const auto& nu = U.nu;
  const auto& nv = V.nu;
  const auto& ku = U.kappa;
  const auto& kv = V.kappa;

  EdsResiduals r{};
  for (int i = 0; i < 3; ++i) {
    double q_mu = 0, q_nu = 0, q_ka = 0;
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const int e = levi(i, j, k);
        if (e == 0) continue;
        q_mu += 0.5 * e * (wedge(mu[j], mv[j], mu[k], mv[k]) +
                           wedge(nu[j + 1], nv[j + 1], nu[k + 1], nv[k + 1]));
        q_nu += 0.5 * e * (wedge(mu[j], mv[j], nu[k + 1], nv[k + 1]) +
                           wedge(ku[j], kv[j], nu[k + 1], nv[k + 1]));
        q_ka += 0.5 * e * (wedge(ku[j], kv[j], ku[k], kv[k]) +
                           wedge(nu[j + 1], nv[j + 1], nu[k + 1], nv[k + 1]));
      }
    }
    const double n0ni = wedge(nu[0], nv[0], nu[i + 1], nv[i + 1]);
    r[i] = d[i] + q_mu + n0ni;
    r[4 + i] = d[4 + i] + q_nu - 0.5 * wedge(nu[0], nv[0], mu[i] - ku[i], mv[i] - kv[i]);
    r[7 + i] = d[7 + i] + q_ka - n0ni;
  }
  double q0 = 0;
  for (int i = 0; i < 3; ++i)
    q0 += 0.5 * wedge(nu[i + 1], nv[i + 1], mu[i] - ku[i], mv[i] - kv[i]);
  r[3] = d[3] + q0;
  for (double& x : r) x = std::abs(x);
  return r;
}

double max_residual(const EdsResiduals& r) {
  double m = 0;
  for (double x : r) m = std::max(m, x);
  return m;
}

double eds_convergence_order(const TangentVector& u, const TangentVector& v, double h) {
  const double a = max_residual(eds_residual(u, v, h));
  const double b = max_residual(eds_residual(u, v, h / 2.0));
  return std::log2(a / b);
}

// ---------------------------------------------------------------------------

namespace {

// e^{-k theta}
Quaternion rot_k(double theta) { return {std::cos(theta), 0.0, 0.0, -std::sin(theta)}; }
const Quaternion kJ{0.0, 0.0, 1.0, 0.0};
const Quaternion kK{0.0, 0.0, 0.0, 1.0};

}  // namespace

SpherePoint toric_embed(const ToricPoint& t) {
  const auto& r = t.r;
  const auto& th = t.theta;
  const Quaternion x = rot_k(th[0]) * r[0] + kJ * rot_k(th[1]) * r[1];
  const Quaternion y = rot_k(th[2]) * r[2] + kJ * rot_k(th[3]) * r[3];
  return {x, y};
}

ToricPoint reeb_flow(const ToricPoint& t, double s) {
  ToricPoint out = t;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (double& a : out.theta) {
    a = std::fmod(a + s, two_pi);
    if (a < 0) a += two_pi;
  }
  return out;
}

TangentVector toric_tangent(const ToricPoint& t, int k) {
  if (k < 0 || k > 3) throw std::out_of_range("toric angle index");
  const SpherePoint p = toric_embed(t);
  Quaternion dx, dy;
  // d/dtheta of r e^{-k theta} is r e^{-k theta} (-k).
  const Quaternion dd = rot_k(t.theta[k]) * kK * (-t.r[k]);
  switch (k) {
    case 0: dx = dd; break;
    case 1: dx = kJ * dd; break;
    case 2: dy = dd; break;
    default: dy = kJ * dd; break;
  }
  return {p, dx, dy};
}

TangentVector reeb_tangent(const SpherePoint& p) { return {p, -(p.x * kK), -(p.y * kK)}; }

double toric_alpha(const ToricPoint& t, const std::array<double, 4>& dtheta) {
  double a = 0;
  for (int i = 0; i < 4; ++i) a += t.r[i] * t.r[i] * dtheta[i];
  return a;
}

}  // namespace sphere7
