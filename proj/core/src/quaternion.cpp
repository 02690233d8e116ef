#include "sphere7/quaternion.hpp"

#include <cmath>

#include "sphere7/sphere.hpp"

namespace sphere7 {

Quaternion qexp_imag(const Quaternion& v) {
  const double a = std::sqrt(v.q1 * v.q1 + v.q2 * v.q2 + v.q3 * v.q3);
  if (a == 0.0) return Quaternion(1.0);
  const double s = std::sin(a) / a;
  return {std::cos(a), s * v.q1, s * v.q2, s * v.q3};
}

Quaternion qlog_unit(const Quaternion& u) {
  const double vn = std::sqrt(u.q1 * u.q1 + u.q2 * u.q2 + u.q3 * u.q3);
  const double a = std::atan2(vn, u.q0);
  if (vn == 0.0) {
    // u = +1 or -1; for -1 any axis works, take i.
    return u.q0 >= 0 ? Quaternion() : Quaternion(0.0, a, 0.0, 0.0);
  }
  const double s = a / vn;
  return {0.0, s * u.q1, s * u.q2, s * u.q3};
}

double qmat_maxabs(const QMatrix2& g) {
  return std::max({qmaxabs(g.w), qmaxabs(g.x), qmaxabs(g.z), qmaxabs(g.y)});
}

double unitarity_residual(const QMatrix2& g) {
  return qmat_maxabs(g.dagger() * g - QMatrix2::identity());
}

// ---------------------------------------------------------------------------

double dot8(const Vec8& a, const Vec8& b) {
  double s = 0;
  for (int i = 0; i < 8; ++i) s += a[i] * b[i];
  return s;
}

Vec8 SpherePoint::ambient() const { return {x.q0, x.q1, x.q2, x.q3, y.q0, y.q1, y.q2, y.q3}; }

SpherePoint SpherePoint::make(const Quaternion& x, const Quaternion& y, ProjectionNote* note) {
  const double n2 = x.normsq() + y.normsq();
  if (n2 == 0.0) throw std::domain_error("cannot project the origin onto the sphere");
  const double dev = std::abs(n2 - 1.0);
  if (note) {
    note->deviation = dev;
    note->warned = dev > tol::sphere;
  }
  const double s = 1.0 / std::sqrt(n2);
  return {x * s, y * s};
}

SpherePoint SpherePoint::from_ambient(const Vec8& v, ProjectionNote* note) {
  return make({v[0], v[1], v[2], v[3]}, {v[4], v[5], v[6], v[7]}, note);
}

Vec8 TangentVector::ambient() const {
  return {dx.q0, dx.q1, dx.q2, dx.q3, dy.q0, dy.q1, dy.q2, dy.q3};
}

TangentVector TangentVector::make(const SpherePoint& base, const Quaternion& dx,
                                  const Quaternion& dy, ProjectionNote* note) {
  // Re(conj(x) dx + conj(y) dy) is the Euclidean inner product with the base point.
  const double r = (base.x.conj() * dx + base.y.conj() * dy).q0;
  if (note) {
    note->deviation = std::abs(r);
    note->warned = std::abs(r) > tol::sphere;
  }
  return {base, dx - base.x * r, dy - base.y * r};
}

TangentVector TangentVector::from_ambient(const SpherePoint& base, const Vec8& v,
                                          ProjectionNote* note) {
  return make(base, {v[0], v[1], v[2], v[3]}, {v[4], v[5], v[6], v[7]}, note);
}

std::array<Vec8, 7> tangent_frame(const SpherePoint& p) {
  const Vec8 n = p.ambient();
  std::array<Vec8, 8> basis{};
  basis[0] = n;
  int filled = 1;
  for (int axis = 0; axis < 8 && filled < 8; ++axis) {
    Vec8 v{};
    v[axis] = 1.0;
    for (int k = 0; k < filled; ++k) {
      const double c = dot8(v, basis[k]);
      for (int i = 0; i < 8; ++i) v[i] -= c * basis[k][i];
    }
    const double len = std::sqrt(dot8(v, v));
    if (len < 1e-6) continue;
    for (double& c : v) c /= len;
    basis[filled++] = v;
  }
  std::array<Vec8, 7> out{};
  for (int k = 0; k < 7; ++k) out[k] = basis[k + 1];
  return out;
}

const char* patch_name(Patch p) { return p == Patch::s ? "s" : "n"; }

void require_patch(const SpherePoint& p, Patch patch) {
  if (patch == Patch::s && qnorm(p.x) < tol::patch) throw PatchViolation("x vanishes (patch s)");
  if (patch == Patch::n && qnorm(p.y) < tol::patch) throw PatchViolation("y vanishes (patch n)");
}

QMatrix2 section_s(const SpherePoint& p) {
  require_patch(p, Patch::s);
  const Quaternion xb = p.x.conj();
  return {-(qinv(xb) * p.y.conj() * xb), p.x, xb, p.y};
}

QMatrix2 section_n(const SpherePoint& p) {
  require_patch(p, Patch::n);
  const Quaternion yb = p.y.conj();
  return {yb, p.x, -(qinv(yb) * p.x.conj() * yb), p.y};
}

QMatrix2 section(const SpherePoint& p, Patch patch) {
  return patch == Patch::s ? section_s(p) : section_n(p);
}

Quaternion transition_tau(const SpherePoint& p) {
  require_patch(p, Patch::s);
  require_patch(p, Patch::n);
  const Quaternion xb = p.x.conj();
  const Quaternion yb = p.y.conj();
  return -(qinv(xb) * qinv(yb) * xb * yb);
}

}  // namespace sphere7
