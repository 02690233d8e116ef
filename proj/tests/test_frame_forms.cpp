#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sphere7/frame_forms.hpp"
#include "sphere7/sampling.hpp"

using namespace sphere7;

namespace {

const Quaternion one(1.0), qi(0, 1, 0, 0), qj(0, 0, 1, 0), qk(0, 0, 0, 1);
constexpr double kPi = std::numbers::pi;

SpherePoint overlap_point(SplitMix64& g) {
  for (;;) {
    const SpherePoint p = random_point(g);
    if (p.x.normsq() > 0.01 && p.y.normsq() > 0.01) return p;
  }
}

double max_abs(const std::array<double, 10>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double vec_dist(const Vec8& a, const Vec8& b) {
  double m = 0.0;
  for (int k = 0; k < 8; ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace

TEST_CASE("coframe at the south pole along k") {
  const TangentVector u = TangentVector::make(SpherePoint::make(one, Quaternion()), qk, Quaternion());
  const CoframeSample c = pullback_s(u);
  CHECK(c.kappa == std::array<double, 3>{0, 0, 2});
  CHECK(c.mu == std::array<double, 3>{0, 0, -2});
  CHECK(c.nu == std::array<double, 4>{0, 0, 0, 0});
  CHECK(c.alpha() == -1.0);
  CHECK(contact_alpha(u) == -1.0);
}

TEST_CASE("zero tangent gives a zero coframe") {
  SplitMix64 g(21);
  const SpherePoint p = overlap_point(g);
  const TangentVector zero = TangentVector::make(p, Quaternion(), Quaternion());
  CHECK(max_abs(pullback_s(zero).components()) == 0.0);
  CHECK(max_abs(pullback_n(zero).components()) == 0.0);
}

TEST_CASE("mu and kappa are imaginary quaternions") {
  SplitMix64 g(22);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const SpherePoint p = random_point_near_s(g);
    const CoframeSample c = pullback_s(random_unit_tangent(g, p));
    worst = std::max({worst, std::abs(c.kappa_q.q0), std::abs(c.mu_q.q0)});
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("coframe matches the numerically differentiated Maurer-Cartan form") {
  SplitMix64 g(23);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const SpherePoint p = random_point_near_s(g);
    const TangentVector u = random_unit_tangent(g, p);
    const auto want = oracle::maurer_cartan(u, 1e-5);
    const auto got = pullback_s(u).components();
    for (int k = 0; k < 10; ++k) worst = std::max(worst, std::abs(want[k] - got[k]));
  }
  CHECK(worst < 1e-7);
}

TEST_CASE("double-index components: reality and norms") {
  SplitMix64 g(24);
  for (int t = 0; t < 100; ++t) {
    const SpherePoint p = random_point_near_s(g);
    const CoframeSample c = pullback_s(random_unit_tangent(g, p));
    CHECK(std::abs(c.kappa_mm + std::conj(c.kappa_pp)) < 1e-15);
    CHECK(std::abs(c.mu_mm + std::conj(c.mu_pp)) < 1e-15);
    CHECK(std::abs(c.nu_mm - std::conj(c.nu_pp)) < 1e-15);
    CHECK(std::abs(c.nu_mp + std::conj(c.nu_pm)) < 1e-15);
    CHECK(c.kappa_pm.imag() == 0.0);
    CHECK(c.mu_pm.imag() == 0.0);

    const double k2 = c.kappa[0] * c.kappa[0] + c.kappa[1] * c.kappa[1] + c.kappa[2] * c.kappa[2];
    const double ks = 16 * (std::norm(c.kappa_pp) + std::norm(c.kappa_pm));
    CHECK(ks == doctest::Approx(k2).epsilon(1e-12));
    const double n2 = c.nu[0] * c.nu[0] + c.nu[1] * c.nu[1] + c.nu[2] * c.nu[2] + c.nu[3] * c.nu[3];
    const double ns = 2 * (std::norm(c.nu_pp) + std::norm(c.nu_pm) + std::norm(c.nu_mp) +
                           std::norm(c.nu_mm));
    CHECK(ns == doctest::Approx(n2).epsilon(1e-12));
    CHECK(qnormsq(c.nu_q) == doctest::Approx(n2).epsilon(1e-12));
    CHECK(2.0 * c.kappa_pm.real() == doctest::Approx(c.alpha()));
  }
}

TEST_CASE("kappa is global and nu transforms by conj(tau)") {
  SplitMix64 g(25);
  double kappa = 0.0, nu = 0.0;
  for (int t = 0; t < 200; ++t) {
    const SpherePoint p = overlap_point(g);
    const TangentVector u = random_unit_tangent(g, p);
    const CoframeSample s = pullback_s(u), n = pullback_n(u);
    kappa = std::max(kappa, qmaxabs(s.kappa_q - n.kappa_q));
    nu = std::max(nu, qmaxabs(n.nu_q - transition_tau(p).conj() * s.nu_q));
  }
  CHECK(kappa < 1e-12);
  CHECK(nu < 1e-10);
}

TEST_CASE("gauge overlap residual at 100 random points") {
  SplitMix64 g(26);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const SpherePoint p = overlap_point(g);
    worst = std::max(worst, gauge_overlap_check(random_unit_tangent(g, p), 1e-5));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("gauge overlap residual vanishes for the zero tangent") {
  SplitMix64 g(27);
  const SpherePoint p = overlap_point(g);
  CHECK(gauge_overlap_check(TangentVector::make(p, Quaternion(), Quaternion()), 1e-5) == 0.0);
}

TEST_CASE("tau is constant when both coordinates rotate by the same phase") {
  const SpherePoint p = SpherePoint::make(Quaternion(0.6), Quaternion(0.8));
  for (const Quaternion& q : {qi, qj, qk, Quaternion(0, 0.3, -0.2, 0.5)}) {
    const TangentVector u = TangentVector::make(p, p.x * q, p.y * q);
    CHECK(qmaxabs(tau_derivative(u, 1e-5)) < 1e-8);
  }
}

TEST_CASE("patches are enforced") {
  const SpherePoint north = SpherePoint::make(Quaternion(), one);
  const SpherePoint south = SpherePoint::make(one, Quaternion());
  CHECK_THROWS_AS(pullback_s(TangentVector::make(north, qi, Quaternion())), PatchViolation);
  CHECK_THROWS_AS(pullback_n(TangentVector::make(south, Quaternion(), qi)), PatchViolation);
  CHECK_THROWS_AS(gauge_overlap_check(TangentVector::make(south, Quaternion(), qi), 1e-5),
                  PatchViolation);
  const TangentVector u = TangentVector::make(north, qi, Quaternion());
  CHECK_THROWS_AS(eds_residual(u, u, 1e-4), PatchViolation);
}

TEST_CASE("tangent vectors are projected onto the constraint") {
  SplitMix64 g(28);
  const SpherePoint p = random_point(g);
  ProjectionNote note;
  const TangentVector u = TangentVector::make(p, p.x, p.y, &note);  // purely radial
  CHECK(note.warned);
  CHECK(qmaxabs(u.dx) < 1e-15);
  CHECK(qmaxabs(u.dy) < 1e-15);
  const TangentVector v = random_unit_tangent(g, p);
  CHECK(std::abs((p.x.conj() * v.dx + p.y.conj() * v.dy).q0) < 1e-15);
}

TEST_CASE("structure equations: 100 random samples at h = 1e-4") {
  SplitMix64 g(29);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const SpherePoint p = random_point_near_s(g);
    const TangentVector u = random_unit_tangent(g, p), v = random_unit_tangent(g, p);
    worst = std::max(worst, max_residual(eds_residual(u, v, 1e-4)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("structure equations vanish on u = v") {
  SplitMix64 g(30);
  for (int t = 0; t < 20; ++t) {
    const SpherePoint p = random_point_near_s(g);
    const TangentVector u = random_unit_tangent(g, p);
    CHECK(max_residual(eds_residual(u, u, 1e-4)) < 1e-12);
  }
}

TEST_CASE("structure equation residuals are symmetric in (u, v)") {
  SplitMix64 g(31);
  for (int t = 0; t < 20; ++t) {
    const SpherePoint p = random_point_near_s(g);
    const TangentVector u = random_unit_tangent(g, p), v = random_unit_tangent(g, p);
    const EdsResiduals a = eds_residual(u, v, 1e-4), b = eds_residual(v, u, 1e-4);
    for (int k = 0; k < 10; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-12);
  }
}

TEST_CASE("structure equation residuals are second order in h") {
  SplitMix64 g(32);
  double sum_h = 0.0, sum_half = 0.0;
  for (int t = 0; t < 20; ++t) {
    const SpherePoint p = random_point_near_s(g);
    const TangentVector u = random_unit_tangent(g, p), v = random_unit_tangent(g, p);
    sum_h += max_residual(eds_residual(u, v, 1e-3));
    sum_half += max_residual(eds_residual(u, v, 5e-4));
    const double order = eds_convergence_order(u, v, 1e-3);
    CHECK(order > 1.8);
    CHECK(order < 2.2);
  }
  CHECK(sum_h / sum_half == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("richardson differences are more accurate") {
  SplitMix64 g(33);
  const SpherePoint p = random_point_near_s(g);
  const TangentVector u = random_unit_tangent(g, p), v = random_unit_tangent(g, p);
  CHECK(max_residual(eds_residual(u, v, 1e-3, true)) < max_residual(eds_residual(u, v, 1e-3)) / 10);
}

TEST_CASE("nonpositive step is rejected") {
  SplitMix64 g(34);
  const SpherePoint p = random_point_near_s(g);
  const TangentVector u = random_unit_tangent(g, p);
  CHECK_THROWS_AS(eds_residual(u, u, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(eds_residual(u, u, -1e-4), std::invalid_argument);
}

TEST_CASE("chart fields at the base point are the given tangent") {
  SplitMix64 g(35);
  const SpherePoint p = random_point(g);
  const TangentVector u = random_unit_tangent(g, p);
  const TangentVector w = chart_field(p, Vec8{}, u.ambient());
  CHECK(vec_dist(w.ambient(), u.ambient()) < 1e-15);
  CHECK(vec_dist(chart_point(p, Vec8{}).ambient(), p.ambient()) < 1e-15);
}

TEST_CASE("Reeb orbits are periodic") {
  const ToricPoint t{{1, 0, 0, 0}, {0.3, 0, 0, 0}};
  CHECK(vec_dist(toric_embed(reeb_flow(t, 2 * kPi)).ambient(), toric_embed(t).ambient()) < 1e-15);

  SplitMix64 g(36);
  for (int k = 0; k < 20; ++k) {
    ToricPoint s;
    double norm = 0.0;
    for (int a = 0; a < 4; ++a) {
      s.r[a] = g.uniform();
      s.theta[a] = g.uniform(0, 2 * kPi);
      norm += s.r[a] * s.r[a];
    }
    for (double& r : s.r) r /= std::sqrt(norm);
    CHECK(vec_dist(toric_embed(reeb_flow(s, 2 * kPi)).ambient(), toric_embed(s).ambient()) < 1e-14);
    const ToricPoint half = reeb_flow(s, kPi);
    for (int a = 0; a < 4; ++a) {
      CHECK(half.theta[a] >= 0.0);
      CHECK(half.theta[a] < 2 * kPi);
    }
  }
}

TEST_CASE("contact form on the Reeb field") {
  const ToricPoint t{{0.5, 0.5, 0.5, 0.5}, {0, 0, 0, 0}};
  CHECK(toric_alpha(t, {1, 1, 1, 1}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(contact_alpha(reeb_tangent(toric_embed(t))) - 1.0) < 1e-12);

  SplitMix64 g(37);
  for (int k = 0; k < 100; ++k) {
    const SpherePoint p = random_point(g);
    CHECK(std::abs(contact_alpha(reeb_tangent(p)) - 1.0) < 1e-12);
  }
}

TEST_CASE("angle directions: alpha is r_k^2, computed two ways") {
  const ToricPoint t{{1, 0, 0, 0}, {0, 0, 0, 0}};
  CHECK(toric_alpha(t, {1, 0, 0, 0}) == 1.0);
  CHECK(std::abs(contact_alpha(toric_tangent(t, 0)) - 1.0) < 1e-10);

  SplitMix64 g(38);
  for (int n = 0; n < 50; ++n) {
    ToricPoint s;
    double norm = 0.0;
    for (int a = 0; a < 4; ++a) {
      s.r[a] = g.uniform();
      s.theta[a] = g.uniform(0, 2 * kPi);
      norm += s.r[a] * s.r[a];
    }
    for (double& r : s.r) r /= std::sqrt(norm);
    for (int k = 0; k < 4; ++k) {
      std::array<double, 4> e{};
      e[k] = 1;
      CHECK(std::abs(contact_alpha(toric_tangent(s, k)) - toric_alpha(s, e)) < 1e-10);
      CHECK(std::abs(toric_alpha(s, e) - s.r[k] * s.r[k]) < 1e-15);
    }
  }
  CHECK_THROWS_AS(toric_tangent(t, 4), std::out_of_range);
}

TEST_CASE("degenerate tori still embed") {
  const ToricPoint t{{0, 0, 1, 0}, {1.0, 2.0, 0.5, 3.0}};
  const SpherePoint p = toric_embed(t);
  CHECK(std::abs(p.x.normsq() + p.y.normsq() - 1.0) < 1e-15);
  const ToricPoint u{{0, 0, 1, 0}, {0.0, 0.0, 0.5, 0.0}};
  CHECK(vec_dist(toric_embed(u).ambient(), p.ambient()) < 1e-15);
}
