#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sphere7/connection.hpp"
#include "sphere7/sampling.hpp"

using namespace sphere7;
using namespace sphere7::conn;

namespace {

const cplx I(0, 1);

SpherePoint overlap_point(SplitMix64& g) {
  for (;;) {
    const SpherePoint p = random_point(g);
    if (p.x.normsq() > 0.04 && p.y.normsq() > 0.04) return p;
  }
}

Vector random_state(SplitMix64& g, int d) {
  Vector v(d);
  for (int k = 0; k < d; ++k) v[k] = cplx(g.normal(), g.normal());
  return v;
}

SpherePoint midpoint(const SpherePoint& p, const SpherePoint& q) {
  Vec8 a = p.ambient();
  const Vec8 b = q.ambient();
  for (int k = 0; k < 8; ++k) a[k] += b[k];
  return SpherePoint::from_ambient(a);
}

}  // namespace

TEST_CASE("m = 1 and u = 0 give zero") {
  SplitMix64 g(61);
  const SpherePoint p = random_point_near_s(g);
  const TangentVector u = random_unit_tangent(g, p);
  CHECK(oracle::max_abs(connection_at(u, 1, ConnectionMode::exact_mode()).value) == 0.0);
  const TangentVector zero = TangentVector::make(p, Quaternion(), Quaternion());
  for (int m = 1; m <= 4; ++m) CHECK(oracle::max_abs(connection_at(zero, m, ConnectionMode::exact_mode()).value) == 0.0);
  CHECK(oracle::max_abs(connection_at(zero, 3, ConnectionMode::truncated_mode(2)).value) == 0.0);
}

TEST_CASE("exact connection is antihermitian") {
  SplitMix64 g(62);
  for (int m = 2; m <= 4; ++m) {
    const Connection a(m, ConnectionMode::exact_mode());
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const SpherePoint p = random_point_near_s(g);
      const Matrix x = a.at(random_unit_tangent(g, p));
      worst = std::max(worst, oracle::max_abs(x + x.adjoint()));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("connection is rho of the Maurer-Cartan form") {
  SplitMix64 g(63);
  for (int m = 2; m <= 4; ++m) {
    const Connection a(m, ConnectionMode::exact_mode());
    for (int t = 0; t < 20; ++t) {
      const SpherePoint p = random_point_near_s(g);
      const TangentVector u = random_unit_tangent(g, p);
      const Matrix want = oracle::connection_via_vector_basis(pullback_s(u), a.rep());
      CHECK(oracle::max_abs(a.at(u) - want) < 1e-12);
    }
  }
}

TEST_CASE("connection is linear in the tangent vector") {
  SplitMix64 g(64);
  const Connection a(3, ConnectionMode::exact_mode());
  const SpherePoint p = random_point_near_s(g);
  const TangentVector u = random_unit_tangent(g, p), v = random_unit_tangent(g, p);
  CHECK(oracle::max_abs(a.at(u * 2.0 + v) - (2.0 * a.at(u) + a.at(v))) < 1e-12);
}

TEST_CASE("the leading grade is i alpha") {
  SplitMix64 g(65);
  for (int t = 0; t < 50; ++t) {
    const SpherePoint p = random_point_near_s(g);
    const TangentVector u = random_unit_tangent(g, p);
    for (int ell : {0, 3}) CHECK(std::abs(leading_coefficient(u, ell) - I * contact_alpha(u)) < 1e-10);
  }
}

TEST_CASE("exact connection is flat") {
  SplitMix64 g(66);
  const Connection a(2, ConnectionMode::exact_mode());
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const SpherePoint p = random_point_near_s(g);
    const TangentVector u = random_unit_tangent(g, p), v = random_unit_tangent(g, p);
    worst = std::max(worst, curvature_at(a, u, v, 1e-4));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("curvature on u = v is discretization noise") {
  SplitMix64 g(67);
  const Connection a(3, ConnectionMode::exact_mode());
  const SpherePoint p = random_point_near_s(g);
  const TangentVector u = random_unit_tangent(g, p);
  CHECK(curvature_at(a, u, u, 1e-4) < 1e-10);
  CHECK_THROWS_AS(curvature_at(a, u, u, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(curvature_at(a, u, u, -1e-3), std::invalid_argument);
}

TEST_CASE("truncated curvature decreases with ell at m = 16") {
  SplitMix64 g(68);
  for (int t = 0; t < 2; ++t) {
    const SpherePoint p = random_point_near_s(g);
    const TangentVector u = random_unit_tangent(g, p), v = random_unit_tangent(g, p);
    double prev = INFINITY;
    for (int ell : {0, 2, 4, 8}) {
      const double r = curvature_at(u, v, 16, ConnectionMode::truncated_mode(ell), 1e-4);
      CAPTURE(ell);
      CHECK(r < prev);
      prev = r;
    }
  }
}

TEST_CASE("patch frames are related by the gauge matrix") {
  SplitMix64 g(69);
  const fock::RepSet rep = fock::build_rho(3);
  const Connection a(3, ConnectionMode::exact_mode());
  const double h = 1e-5;
  for (int t = 0; t < 20; ++t) {
    const SpherePoint p = overlap_point(g);
    const TangentVector u = random_unit_tangent(g, p);
    Vec8 plus = u.ambient(), minus = u.ambient();
    for (int k = 0; k < 8; ++k) {
      plus[k] *= h;
      minus[k] *= -h;
    }
    const Matrix G = gauge_matrix(p, rep);
    const Matrix dG = (gauge_matrix(chart_point(p, plus), rep) - gauge_matrix(chart_point(p, minus), rep)) / (2 * h);
    const Matrix want = G.adjoint() * a.at(u, Patch::s) * G + G.adjoint() * dG;
    CHECK(fock::unitarity_residual(G) < 1e-10);
    CHECK(oracle::max_abs(a.at(u, Patch::n) - want) < 1e-6);
  }
}

TEST_CASE("constant path") {
  SplitMix64 g(70);
  const TransportResult r = parallel_transport(PathSpec::stationary(random_point(g), 100), 3);
  CHECK(r.holonomy_distance == 0.0);
  CHECK(r.unitarity_residual == 0.0);
}

TEST_CASE("great circle loop has trivial holonomy") {
  SplitMix64 g(71);
  const SpherePoint p = random_point_near_s(g), q = random_point_near_s(g);
  const TransportResult r = parallel_transport(PathSpec::great_circle_loop(p, q, 10000), 2);
  CHECK(r.holonomy_distance < 1e-6);
  CHECK(r.unitarity_residual < 1e-10);

  const Vector psi = random_state(g, 4);
  CHECK(std::abs((r.U * psi).norm() / psi.norm() - 1.0) < 1e-8);
}

TEST_CASE("Reeb orbits") {
  const ToricPoint t{{0.5, 0.5, 0.5, 0.5}, {0, 0, 0, 0}};
  const TransportResult one = reeb_transport(t, 1, 100);
  CHECK(one.holonomy_distance == 0.0);
  CHECK(reeb_transport(t, 2, 10000).holonomy_distance < 1e-5);
}

TEST_CASE("RK4 error falls by about 16 when steps double") {
  const ToricPoint t{{0.5, 0.5, 0.5, 0.5}, {0, 0, 0, 0}};
  const double a = reeb_transport(t, 2, 32).holonomy_distance;
  const double b = reeb_transport(t, 2, 64).holonomy_distance;
  CHECK(a / b > 12);
  CHECK(a / b < 20);
}

TEST_CASE("composition and reversal") {
  SplitMix64 g(72);
  const SpherePoint p = random_point_near_s(g), q = random_point_near_s(g);
  const SpherePoint mid = midpoint(p, q);
  const Matrix whole = parallel_transport(PathSpec::great_circle_arc(p, q, 2000), 3).U;
  const Matrix first = parallel_transport(PathSpec::great_circle_arc(p, mid, 2000), 3).U;
  const Matrix second = parallel_transport(PathSpec::great_circle_arc(mid, q, 2000), 3).U;
  CHECK(oracle::max_abs(whole - second * first) < 1e-9);

  const PathSpec arc = PathSpec::great_circle_arc(p, q, 2000);
  const Matrix back = parallel_transport(arc.reversed(), 3).U;
  CHECK(oracle::max_abs(back * whole - Matrix::Identity(10, 10)) < 1e-9);
  CHECK(oracle::max_abs(whole.adjoint() - back) < 1e-9);
}

TEST_CASE("transport is path independent") {
  SplitMix64 g(73);
  for (int m = 2; m <= 3; ++m) {
    const SpherePoint p = random_point_near_s(g), q = random_point_near_s(g),
                      r = random_point_near_s(g);
    const Matrix direct = parallel_transport(PathSpec::great_circle_arc(p, q, 10000), m).U;
    const Matrix detour = parallel_transport(PathSpec::piecewise_path({p, r, q}, 10000), m).U;
    CHECK(oracle::max_abs(direct - detour) < 1e-5);
  }
}

TEST_CASE("Born probabilities") {
  SplitMix64 g(74);
  const SpherePoint p = random_point_near_s(g), q = random_point_near_s(g);
  const Matrix U = parallel_transport(PathSpec::great_circle_arc(p, q, 1000), 3).U;
  const Vector psi = random_state(g, 10);
  CHECK(std::abs(born_probability(psi, U * psi, U) - 1.0) < 1e-10);

  Vector w = random_state(g, 10);
  const Vector up = U * psi;
  w -= (up.dot(w) / up.squaredNorm()) * up;
  CHECK(born_probability(psi, w, U) < 1e-10);

  double sum = 0.0;
  for (int k = 0; k < 10; ++k) sum += born_probability(psi, Vector::Unit(10, k), U);
  CHECK(std::abs(sum - 1.0) < 1e-8);

  CHECK_THROWS_AS(born_probability(Vector::Zero(10), psi, U), std::invalid_argument);
  CHECK_THROWS_AS(born_probability(psi, Vector::Zero(10), U), std::invalid_argument);
}

TEST_CASE("invalid transports") {
  SplitMix64 g(75);
  const SpherePoint p = random_point_near_s(g), q = random_point_near_s(g);
  CHECK_THROWS_AS(parallel_transport(PathSpec::great_circle_arc(p, q, 1), 2), std::invalid_argument);
  CHECK_THROWS_AS(parallel_transport(PathSpec::great_circle_arc(p, q, 10),
                                     Connection(2, ConnectionMode::truncated_mode(1))),
                  std::invalid_argument);
}

TEST_CASE("loops through the north pole switch patches") {
  const SpherePoint south = SpherePoint::make(Quaternion(1.0), Quaternion());
  const SpherePoint north = SpherePoint::make(Quaternion(), Quaternion(0, 0.6, 0.8, 0));
  const PathSpec loop = PathSpec::great_circle_loop(south, north, 10000);
  const TransportResult r = parallel_transport(loop, 2);
  CHECK(r.switches.size() == 4);  // passes both q and -q
  CHECK(r.start_patch == Patch::s);
  CHECK(r.holonomy_distance < 1e-6);
  CHECK(r.patches.size() == 10000);

  TransportOptions fixed;
  fixed.allow_switch = false;
  CHECK_THROWS_AS(parallel_transport(loop, 2, fixed), PatchViolation);
}

TEST_CASE("reprojection keeps U unitary to rounding") {
  SplitMix64 g(76);
  const SpherePoint p = random_point_near_s(g), q = random_point_near_s(g);
  TransportOptions opt;
  opt.reproject = true;
  const TransportResult r = parallel_transport(PathSpec::great_circle_loop(p, q, 200), 3, opt);
  CHECK(r.reprojected);
  CHECK(r.unitarity_residual < 1e-13);
}

TEST_CASE("path samples stay on the sphere") {
  SplitMix64 g(77);
  const SpherePoint p = random_point(g), q = random_point(g), r = random_point(g);
  const ToricPoint t{{0.6, 0.0, 0.8, 0.0}, {0.1, 0.2, 0.3, 0.4}};
  const std::vector<PathSpec> paths = {PathSpec::great_circle_loop(p, q, 10), PathSpec::great_circle_arc(p, q, 10),
                                       PathSpec::toric_curve(t, {1, -2, 0.5, 3}, 1.5, 10),
                                       PathSpec::piecewise_path({p, q, r}, 12)};
  for (const PathSpec& path : paths)
    for (int k = 0; k <= 20; ++k) {
      const double s = path.t0 + (path.t1 - path.t0) * k / 20.0;
      const TangentVector u = path_sample(path, s);
      CHECK(std::abs(u.base.x.normsq() + u.base.y.normsq() - 1.0) < 1e-12);
      CHECK(std::abs((u.base.x.conj() * u.dx + u.base.y.conj() * u.dy).q0) < 1e-12);
    }
  const TangentVector a = path_sample(paths[1], paths[1].t0), b = path_sample(paths[1], paths[1].t1);
  CHECK(qmaxabs(a.base.x - p.x) < 1e-12);
  CHECK(qmaxabs(b.base.y - q.y) < 1e-12);
}
