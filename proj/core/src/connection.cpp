#include "sphere7/connection.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sphere7/embedding.hpp"

namespace sphere7::conn {

namespace {

using lie::gen::Spinor;

Vec8 scaled(const Vec8& v, double h) {
  Vec8 out{};
  for (int i = 0; i < 8; ++i) out[i] = h * v[i];
  return out;
}

void check_step(double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
}

template <class M>
M combine(const std::array<M, lie::kDim>& gens, const std::array<cplx, lie::kDim>& c) {
  M out = c[0] * gens[0];
  for (int a = 1; a < lie::kDim; ++a)
    if (c[a] != cplx{}) out += c[a] * gens[a];
  return out;
}

}  // namespace

std::string ConnectionMode::name() const {
  return kind == exact ? "exact" : "truncated(" + std::to_string(ell) + ")";
}

std::array<cplx, lie::kDim> connection_coefficients(const CoframeSample& c) {
  std::array<cplx, lie::kDim> w{};
  w[Spinor::Jpp] = c.mu_pp;
  w[Spinor::Jpm] = 2.0 * c.mu_pm;
  w[Spinor::Jmm] = c.mu_mm;
  // nu^{A}_{a} couples to P^{a}_{A}; first sign of nu_xy is the dotted index
  w[Spinor::Ppp] = c.nu_pp;
  w[Spinor::Pmp] = c.nu_pm;
  w[Spinor::Ppm] = c.nu_mp;
  w[Spinor::Pmm] = c.nu_mm;
  w[Spinor::Kpp] = c.kappa_pp;
  w[Spinor::Kpm] = 2.0 * c.kappa_pm;
  w[Spinor::Kmm] = c.kappa_mm;
  return w;
}

Connection::Connection(int m, ConnectionMode mode) : m_(m), mode_(mode) {
  if (mode.kind == ConnectionMode::exact) {
    rep_ = fock::build_rho(m);
  } else {
    if (mode.ell < 0) throw std::domain_error("negative truncation order");
    lower_ = fock::partial_generators(m, m, mode.ell + 1);
    upper_ = fock::partial_generators(m, m + 1, mode.ell + 1);
  }
}

Matrix Connection::from_coefficients(const std::array<cplx, lie::kDim>& c) const {
  if (mode_.kind == ConnectionMode::exact) return combine(rep_.rho, c);
  return Matrix(combine(lower_, c));
}

Matrix Connection::at(const TangentVector& u, Patch patch) const {
  return from_coefficients(connection_coefficients(pullback(u, patch)));
}

SparseMatrix Connection::upper_at(const TangentVector& u, Patch patch) const {
  if (mode_.kind != ConnectionMode::truncated) throw std::logic_error("upper block exists only when truncated");
  return combine(upper_, connection_coefficients(pullback(u, patch)));
}

ConnectionSample connection_at(const TangentVector& u, int m, ConnectionMode mode, Patch patch) {
  const Connection a(m, mode);
  return {u, m, mode, patch, a.at(u, patch)};
}

cplx leading_coefficient(const TangentVector& u, int ell) {
  const auto gens = weyl::embedded_generators(ell);
  const auto c = connection_coefficients(pullback_s(u));
  cplx sum{};
  for (int a = 0; a < lie::kDim; ++a) {
    const weyl::WeylElement w = gens[a].at(-2);
    if (!w.is_scalar()) throw std::logic_error("leading grade is not scalar");
    sum += c[a] * w.constant_term().to_complex();
  }
  return sum;
}

double curvature_at(const Connection& a, const TangentVector& u, const TangentVector& v, double h,
                    Patch patch) {
  check_step(h);
  require_patch(u.base, patch);
  const Vec8 ua = u.ambient();
  const Vec8 va = v.ambient();
  const SpherePoint& p = u.base;
  auto along = [&](const Vec8& dir, const Vec8& field, double step) {
    return a.at(chart_field(p, scaled(dir, step), field), patch);
  };
  const Matrix d = (along(ua, va, h) - along(ua, va, -h) - along(va, ua, h) + along(va, ua, -h)) /
                   (2.0 * h);
  const Matrix au = a.at(u, patch);
  const Matrix av = a.at(v, patch);
  if (a.mode().kind == ConnectionMode::exact) return fock::max_abs(d + au * av - av * au);

  const SparseMatrix uu = a.upper_at(u, patch);
  const SparseMatrix uv = a.upper_at(v, patch);
  const SparseMatrix su = au.sparseView();
  const SparseMatrix sv = av.sparseView();
  Matrix f = Matrix(SparseMatrix(uu * sv) - SparseMatrix(uv * su));
  f.topRows(d.rows()) += d;
  return fock::max_abs(f);
}

double curvature_at(const TangentVector& u, const TangentVector& v, int m, ConnectionMode mode,
                    double h, Patch patch) {
  return curvature_at(Connection(m, mode), u, v, h, patch);
}

Matrix gauge_matrix(const SpherePoint& p, const fock::RepSet& rep) {
  const Quaternion v = qlog_unit(transition_tau(p));
  const auto& vs = lie::vector_in_spinor();
  Matrix x = Matrix::Zero(rep.dim(), rep.dim());
  for (int i = 0; i < 3; ++i) {
    lie::LieElement j(lie::Basis::spinor);
    for (int a = 0; a < lie::kDim; ++a) j[a] = vs[lie::gen::j1 + i][a];
    x += (2.0 * v[i + 1]) * rep(j);
  }
  return fock::exponentiate(x, 1.0, 1e-8);
}

// ---------------------------------------------------------------------------

PathSpec PathSpec::stationary(const SpherePoint& p, int steps) {
  PathSpec s;
  s.kind = constant;
  s.points = {p.ambient()};
  s.steps = steps;
  return s;
}

namespace {

// Unit vector along q orthogonal to p, and the angle between them.
std::pair<Vec8, double> orthogonal_direction(const Vec8& p, const Vec8& q) {
  const double c = dot8(p, q);
  Vec8 w{};
  for (int i = 0; i < 8; ++i) w[i] = q[i] - c * p[i];
  const double s = std::sqrt(dot8(w, w));
  if (s < 1e-12) throw std::invalid_argument("great circle needs two non-parallel points");
  for (double& x : w) x /= s;
  return {w, std::atan2(s, c)};
}

}  // namespace

PathSpec PathSpec::great_circle_loop(const SpherePoint& p, const SpherePoint& q, int steps) {
  PathSpec s;
  s.kind = great_circle;
  s.points = {p.ambient(), q.ambient()};
  s.t0 = 0.0;
  s.t1 = 2.0 * std::numbers::pi;
  s.steps = steps;
  return s;
}

PathSpec PathSpec::great_circle_arc(const SpherePoint& p, const SpherePoint& q, int steps) {
  PathSpec s = great_circle_loop(p, q, steps);
  s.t1 = orthogonal_direction(s.points[0], s.points[1]).second;
  return s;
}

PathSpec PathSpec::toric_curve(const ToricPoint& start, const std::array<double, 4>& omega,
                               double duration, int steps) {
  PathSpec s;
  s.kind = toric;
  s.torus = start;
  s.omega = omega;
  s.t0 = 0.0;
  s.t1 = duration;
  s.steps = steps;
  return s;
}

PathSpec PathSpec::piecewise_path(const std::vector<SpherePoint>& vertices, int steps) {
  if (vertices.size() < 2) throw std::invalid_argument("piecewise path needs two vertices");
  PathSpec s;
  s.kind = piecewise;
  for (const auto& v : vertices) s.points.push_back(v.ambient());
  s.t0 = 0.0;
  s.t1 = 1.0;
  s.steps = steps;
  return s;
}

PathSpec PathSpec::reversed() const {
  PathSpec r = *this;
  switch (kind) {
    case constant: break;
    case great_circle: {
      // restart at gamma(t1) heading along -gamma'(t1)
      const TangentVector end = path_sample(*this, t1);
      const Vec8 d = end.ambient();
      Vec8 q{};
      for (int i = 0; i < 8; ++i) q[i] = -d[i];
      r.points = {end.base.ambient(), q};
      r.t0 = 0.0;
      r.t1 = t1 - t0;
      break;
    }
    case toric: {
      for (int k = 0; k < 4; ++k) {
        r.torus.theta[k] = torus.theta[k] + omega[k] * (t1 - t0);
        r.omega[k] = -omega[k];
      }
      r.t0 = 0.0;
      r.t1 = t1 - t0;
      break;
    }
    case piecewise: r.points.assign(points.rbegin(), points.rend()); break;
  }
  return r;
}

TangentVector path_sample(const PathSpec& path, double t) { return path_sample(path, t, t); }

TangentVector path_sample(const PathSpec& path, double t, double segment_hint) {
  switch (path.kind) {
    case PathSpec::constant: {
      if (path.points.empty()) throw std::invalid_argument("constant path needs a point");
      const SpherePoint p = SpherePoint::from_ambient(path.points[0]);
      return {p, {}, {}};
    }
    case PathSpec::great_circle: {
      if (path.points.size() != 2) throw std::invalid_argument("great circle needs two points");
      const Vec8& p = path.points[0];
      const Vec8 w = orthogonal_direction(p, path.points[1]).first;
      Vec8 g{}, d{};
      for (int i = 0; i < 8; ++i) {
        g[i] = std::cos(t) * p[i] + std::sin(t) * w[i];
        d[i] = -std::sin(t) * p[i] + std::cos(t) * w[i];
      }
      const SpherePoint b = SpherePoint::from_ambient(g);
      return TangentVector::from_ambient(b, d);
    }
    case PathSpec::toric: {
      ToricPoint tp = path.torus;
      for (int k = 0; k < 4; ++k) tp.theta[k] += path.omega[k] * t;
      TangentVector v{toric_embed(tp), {}, {}};
      for (int k = 0; k < 4; ++k) {
        const TangentVector e = toric_tangent(tp, k);
        v.dx = v.dx + e.dx * path.omega[k];
        v.dy = v.dy + e.dy * path.omega[k];
      }
      return v;
    }
    case PathSpec::piecewise: {
      const int segs = static_cast<int>(path.points.size()) - 1;
      if (segs < 1) throw std::invalid_argument("piecewise path needs two vertices");
      const double u = (t - path.t0) / (path.t1 - path.t0) * segs;
      const double uh = (segment_hint - path.t0) / (path.t1 - path.t0) * segs;
      const int k = std::clamp(static_cast<int>(std::floor(uh)), 0, segs - 1);
      const double s = u - k;
      const Vec8& a = path.points[k];
      const Vec8& b = path.points[k + 1];
      const double rate = segs / (path.t1 - path.t0);
      Vec8 c{}, dc{};
      for (int i = 0; i < 8; ++i) {
        c[i] = (1.0 - s) * a[i] + s * b[i];
        dc[i] = (b[i] - a[i]) * rate;
      }
      const double len = std::sqrt(dot8(c, c));
      if (len < 1e-12) throw std::invalid_argument("piecewise path passes through the origin");
      Vec8 g{}, d{};
      for (int i = 0; i < 8; ++i) g[i] = c[i] / len;
      const double radial = dot8(g, dc);
      for (int i = 0; i < 8; ++i) d[i] = (dc[i] - radial * g[i]) / len;
      const SpherePoint pt = SpherePoint::from_ambient(c);
      return TangentVector::from_ambient(pt, d);
    }
  }
  throw std::invalid_argument("unknown path kind");
}

// ---------------------------------------------------------------------------

namespace {

Patch preferred(const SpherePoint& p, Patch current, const TransportOptions& opt) {
  if (!opt.allow_switch) return current;
  if (current == Patch::s && qnorm(p.x) < opt.switch_radius) return Patch::n;
  if (current == Patch::n && qnorm(p.y) < opt.switch_radius) return Patch::s;
  return current;
}

void polar_project(Matrix& u) {
  Eigen::JacobiSVD<Matrix> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  u = svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

TransportResult parallel_transport(const PathSpec& path, const Connection& a,
                                   const TransportOptions& opt) {
  if (a.mode().kind != ConnectionMode::exact)
    throw std::invalid_argument("transport is offered in the exact mode only");
  if (path.steps < 2) throw std::invalid_argument("transport needs at least 2 steps");
  const int D = a.dim();
  TransportResult res;
  res.steps = path.steps;
  res.reprojected = opt.reproject;

  const SpherePoint start = path_sample(path, path.t0).base;
  Patch patch = qnorm(start.x) >= opt.switch_radius || !opt.allow_switch ? Patch::s : Patch::n;
  res.start_patch = patch;
  Matrix U = Matrix::Identity(D, D);
  const double dt = (path.t1 - path.t0) / path.steps;

  double mid = path.t0;
  auto rhs = [&](double t, const Matrix& m) -> Matrix {
    const TangentVector v = path_sample(path, t, mid);
    return -(a.at(v, patch) * m);
  };

  for (int k = 0; k < path.steps; ++k) {
    const double t = path.t0 + k * dt;
    mid = t + dt / 2;
    const SpherePoint here = path_sample(path, t).base;
    const Patch next = preferred(here, patch, opt);
    if (next != patch) {
      const Matrix G = gauge_matrix(here, a.rep());
      U = (next == Patch::n ? Matrix(G.adjoint()) : G) * U;
      res.switches.push_back({k, patch, next});
      patch = next;
    }
    require_patch(here, patch);
    res.patches.push_back(patch);
    const Matrix k1 = rhs(t, U);
    const Matrix k2 = rhs(t + dt / 2, U + (dt / 2) * k1);
    const Matrix k3 = rhs(t + dt / 2, U + (dt / 2) * k2);
    const Matrix k4 = rhs(t + dt, U + dt * k3);
    U += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (opt.reproject) polar_project(U);
  }
  if (patch != res.start_patch) {
    const SpherePoint end = path_sample(path, path.t1).base;
    const Matrix G = gauge_matrix(end, a.rep());
    U = (res.start_patch == Patch::s ? G : Matrix(G.adjoint())) * U;
  }
  res.U = U;
  res.unitarity_residual = fock::unitarity_residual(U);
  res.holonomy_distance = fock::max_abs(U - Matrix::Identity(D, D));
  return res;
}

TransportResult parallel_transport(const PathSpec& path, int m, const TransportOptions& opt) {
  return parallel_transport(path, Connection(m, ConnectionMode::exact_mode()), opt);
}

TransportResult reeb_transport(const ToricPoint& t0, int m, int steps, const TransportOptions& opt) {
  return parallel_transport(PathSpec::toric_curve(t0, {1, 1, 1, 1}, 2.0 * std::numbers::pi, steps), m,
                            opt);
}

double born_probability(const Vector& psi_i, const Vector& psi_f, const Matrix& U) {
  const double ni = psi_i.squaredNorm();
  const double nf = psi_f.squaredNorm();
  if (ni == 0.0 || nf == 0.0) throw std::invalid_argument("state vector is zero");
  return std::norm(psi_f.dot(U * psi_i)) / (ni * nf);
}

double born_probability(const Vector& psi_i, const Vector& psi_f, const PathSpec& path, int m) {
  return born_probability(psi_i, psi_f, parallel_transport(path, m).U);
}

}  // namespace sphere7::conn
