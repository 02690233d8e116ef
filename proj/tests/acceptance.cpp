// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "sphere7/connection.hpp"
#include "sphere7/embedding.hpp"
#include "sphere7/fock_rep.hpp"
#include "sphere7/frame_forms.hpp"
#include "sphere7/lie_u2h.hpp"
#include "sphere7/sampling.hpp"

#ifdef SPHERE7_HAVE_CLI
#include "sphere7_cli/commands.hpp"
#endif

using namespace sphere7;
namespace gen = sphere7::lie::gen;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "failed: " + what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0) o.require(secs < budget_s, "runtime " + fmt(secs) + " s over " + fmt(budget_s) + " s");
  failures += !o.pass;
  std::printf("%s %2d  %s  [%.2f s]  %s\n", o.pass ? "PASS" : "FAIL", id, title, secs, o.detail.c_str());
  std::fflush(stdout);
}

bool in_sqrt_free_sector(int a, int b) {
  auto is_j = [](int x) { return x <= gen::Jmm; };
  return is_j(a) || is_j(b) || a == gen::Kpm || b == gen::Kpm;
}

}  // namespace

int main() {
  criterion(1, "structure constants: Jacobi and cross-basis exact", 1.0, [](Outcome& o) {
    const auto j = lie::verify_jacobi();
    o.require(j.max_residual == 0 && j.triples == 120, "Jacobi residual " + rational_to_string(j.max_residual));
    o.require(lie::verify_jacobi(lie::vector_table()).max_residual == 0, "vector-basis Jacobi");
    o.require(lie::cross_basis_residual() == 0, "cross-basis residual");
    o.note("120 triples, residual 0");
  });

  criterion(2, "formal embedding, ell 0..6, grade cap 16", 120.0, [](Outcome& o) {
    std::vector<int> worst;
    for (int ell = 0; ell <= 6; ++ell) {
      const weyl::EmbeddingReport r = weyl::verify_embedding(ell, 16, 8);
      o.require(r.pairs.size() == 45, "45 pairs at ell=" + std::to_string(ell));
      for (const auto& p : r.pairs)
        if (in_sqrt_free_sector(p.a, p.b))
          o.require(p.exact(), p.pair_name() + " exact at ell=" + std::to_string(ell));
      const auto w = r.worst_grade();
      worst.push_back(w ? *w : 17);
    }
    std::string grades;
    for (std::size_t k = 0; k < worst.size(); ++k) {
      grades += (k ? "," : "") + std::to_string(worst[k]);
      if (k >= 1) o.require(worst[k] >= worst[k - 1], "nondecreasing at ell=" + std::to_string(k));
      if (k >= 2) o.require(worst[k] >= worst[k - 2] + 2, "+2 over two steps at ell=" + std::to_string(k));
    }
    o.note("residual min grades " + grades);
  });

  criterion(3, "classical and quantum residual grades agree, ell <= 4", 0, [](Outcome& o) {
    for (int ell = 0; ell <= 4; ++ell) {
      const int cap = weyl::default_grade_cap(ell);
      const auto q = weyl::verify_embedding(ell, cap, 8);
      const auto c = weyl::verify_classical(ell, cap, 8);
      for (std::size_t k = 0; k < q.pairs.size(); ++k)
        o.require(q.pairs[k].min_grade == c.pairs[k].min_grade,
                  q.pairs[k].pair_name() + " at ell=" + std::to_string(ell));
    }
  });

  criterion(4, "representations m = 1..8", 30.0, [](Outcome& o) {
    const int want[] = {1, 4, 10, 20, 35, 56, 84, 120};
    double br = 0, re = 0, tr = 0, cas = 0;
    for (int m = 1; m <= 8; ++m) {
      const auto r = fock::build_rho(m);
      const std::string tag = " m=" + std::to_string(m);
      o.require(fock::dim(m) == want[m - 1] && r.dim() == want[m - 1], "dimension" + tag);
      br = std::max(br, fock::verify_brackets(r));
      re = std::max(re, fock::verify_reality(r));
      tr = std::max(tr, fock::max_trace(r));
      cas = std::max(cas, fock::casimir_deviation(r));
      const fock::FockBasis b(m);
      bool spectrum = r.rho[gen::Kpm].isDiagonal();
      for (int n = 0; n < b.size(); ++n) {
        const fock::cplx v = fock::cplx(0, -1) * r.rho[gen::Kpm](n, n);
        spectrum = spectrum && v.imag() == 0.0 &&
                   v.real() == double(m - 2 * b[n].n1 - b[n].n2 - b[n].n3 - 1);
      }
      o.require(spectrum, "K+- spectrum" + tag);
      o.require(fock::commutant_dimension(r) == 1, "commutant" + tag);
    }
    o.require(br < 1e-10, "brackets " + fmt(br));
    o.require(re < 1e-10, "reality " + fmt(re));
    o.require(tr < 1e-10, "trace " + fmt(tr));
    o.require(cas < 1e-8, "Casimir " + fmt(cas));
    o.note("brackets " + fmt(br) + ", reality " + fmt(re) + ", Casimir " + fmt(cas));
  });

  criterion(5, "partial sums converge", 0, [](Outcome& o) {
    for (int m = 1; m <= 4; ++m) {
      double prev = INFINITY;
      for (int ell = 0; ell <= 64; ++ell) {
        const double d = fock::partial_distance(m, ell);
        o.require(d <= prev, "nonincreasing m=" + std::to_string(m) + " ell=" + std::to_string(ell));
        prev = d;
      }
      o.note("m=" + std::to_string(m) + " distance at ell 64: " + fmt(prev));
    }
    const double interior = fock::interior_distance(fock::build_rho_partial(2, 40), fock::build_rho(2));
    o.require(interior < 1e-6, "interior block at ell=40 " + fmt(interior));
    const auto slow = fock::convergence_ell(1, 1e-3);
    o.note("boundary states decay slowly: 1e-3 first reached at ell=" +
           (slow ? std::to_string(*slow) : std::string("never")) + " for m=1");
  });

  criterion(6, "symbolic generators match partial-sum matrices, m <= 3, ell <= 4", 0, [](Outcome& o) {
    double worst = 0;
    for (int ell = 0; ell <= 4; ++ell) {
      const auto q = weyl::embedded_generators(ell);
      for (int m = 1; m <= 3; ++m) {
        const auto p = fock::build_rho_partial(m, ell);
        for (int a = 0; a < lie::kDim; ++a) worst = std::max(worst, fock::max_abs(fock::evaluate(q[a], m) - p.rho[a]));
      }
    }
    o.require(worst < 1e-12, "max entry difference " + fmt(worst));
    o.note("max entry difference " + fmt(worst));
  });

  criterion(7, "structure equations, 100 samples at h = 1e-4", 10.0, [](Outcome& o) {
    SplitMix64 g(1);
    double worst = 0, sum_h = 0, sum_half = 0;
    for (int t = 0; t < 100; ++t) {
      const SpherePoint p = random_point_near_s(g);
      const TangentVector u = random_unit_tangent(g, p), v = random_unit_tangent(g, p);
      const double r = max_residual(eds_residual(u, v, 1e-4));
      worst = std::max(worst, r);
      sum_h += r;
      sum_half += max_residual(eds_residual(u, v, 5e-5));
    }
    const double order = std::log2(sum_h / sum_half);
    o.require(worst < 1e-6, "max residual " + fmt(worst));
    o.require(order >= 1.8 && order <= 2.2, "order " + fmt(order));
    o.note("max residual " + fmt(worst) + ", order " + fmt(order));
  });

  criterion(8, "flatness", 60.0, [](Outcome& o) {
    SplitMix64 g(2);
    for (int m = 2; m <= 4; ++m) {
      const conn::Connection a(m, conn::ConnectionMode::exact_mode());
      double worst = 0;
      for (int t = 0; t < 50; ++t) {
        const SpherePoint p = random_point_near_s(g);
        const TangentVector u = random_unit_tangent(g, p), v = random_unit_tangent(g, p);
        worst = std::max(worst, conn::curvature_at(a, u, v, 1e-4));
      }
      o.require(worst < 1e-5, "exact m=" + std::to_string(m) + " curvature " + fmt(worst));
      o.note("m=" + std::to_string(m) + " " + fmt(worst));
    }
    const SpherePoint p = random_point_near_s(g);
    const TangentVector u = random_unit_tangent(g, p), v = random_unit_tangent(g, p);
    double prev = INFINITY;
    std::string seq;
    for (int ell : {0, 2, 4, 8}) {
      const double r = conn::curvature_at(u, v, 16, conn::ConnectionMode::truncated_mode(ell), 1e-4);
      o.require(r < prev, "truncated m=16 decreasing at ell=" + std::to_string(ell));
      seq += (seq.empty() ? "" : ",") + fmt(r);
      prev = r;
    }
    o.note("truncated m=16 ell 0,2,4,8: " + seq);
  });

  criterion(9, "transport, holonomy and Born rule", 60.0, [](Outcome& o) {
    SplitMix64 g(3);
    double hol = 0, unit = 0, indep = 0, born = 0;
    const ToricPoint reeb{{0.5, 0.5, 0.5, 0.5}, {0, 0, 0, 0}};
    for (int m = 1; m <= 3; ++m) {
      const SpherePoint p = random_point_near_s(g), q = random_point_near_s(g), r = random_point_near_s(g);
      for (const auto& res : {conn::parallel_transport(conn::PathSpec::great_circle_loop(p, q, 10000), m),
                              conn::reeb_transport(reeb, m, 10000)}) {
        hol = std::max(hol, res.holonomy_distance);
        unit = std::max(unit, res.unitarity_residual);
      }
      const auto direct = conn::parallel_transport(conn::PathSpec::great_circle_arc(p, q, 10000), m).U;
      const auto detour = conn::parallel_transport(conn::PathSpec::piecewise_path({p, r, q}, 10000), m).U;
      indep = std::max(indep, fock::max_abs(direct - detour));

      const int d = fock::dim(m);
      conn::Vector psi(d);
      for (int k = 0; k < d; ++k) psi[k] = conn::cplx(g.normal(), g.normal());
      double sum = 0;
      for (int k = 0; k < d; ++k) sum += conn::born_probability(psi, conn::Vector::Unit(d, k), direct);
      born = std::max(born, std::abs(sum - 1));
    }
    o.require(hol < 1e-5, "holonomy " + fmt(hol));
    o.require(unit < 1e-8, "unitarity " + fmt(unit));
    o.require(indep < 1e-5, "path independence " + fmt(indep));
    o.require(born < 1e-8, "Born sum " + fmt(born));
    o.note("holonomy " + fmt(hol) + ", unitarity " + fmt(unit) + ", independence " + fmt(indep) +
           ", Born sum deviation " + fmt(born));
  });

  criterion(10, "deterministic reports", 0, [](Outcome& o) {
#ifdef SPHERE7_HAVE_CLI
    const std::regex stamp("\"timestamp\": \"[^\"]*\"|timestamp=\\S+");
    const std::vector<std::vector<std::string>> cmds = {
        {"verify", "--m", "1..4", "--ell", "0..3", "--seed", "5"},
        {"table", "--m", "1..5", "--ell", "0..3", "--seed", "5"},
        {"eds-check", "--samples", "40", "--seed", "5"},
        {"eds-check", "--samples", "40", "--seed", "5", "--format", "csv"},
    };
    for (const auto& c : cmds) {
      std::ostringstream a, b, err;
      const int ca = cli::run(c, a, err);
      const int cb = cli::run(c, b, err);
      o.require(ca == 0 && cb == 0, c[0] + " exit codes");
      o.require(std::regex_search(a.str(), stamp), c[0] + " report carries a timestamp");
      o.require(std::regex_replace(a.str(), stamp, "") == std::regex_replace(b.str(), stamp, ""),
                c[0] + " reports differ");
      std::ostringstream x, y;
      cli::run(c, x, err, "fixed");
      cli::run(c, y, err, "fixed");
      o.require(x.str() == y.str(), c[0] + " byte-identical with a fixed timestamp");
    }
    o.note(std::to_string(cmds.size()) + " commands run twice");
#else
    auto sweep = [] {
      SplitMix64 g(5);
      std::vector<double> out;
      for (int t = 0; t < 40; ++t) {
        const SpherePoint p = random_point_near_s(g);
        out.push_back(max_residual(eds_residual(random_unit_tangent(g, p), random_unit_tangent(g, p), 1e-4)));
      }
      return out;
    };
    o.require(sweep() == sweep(), "seeded sweep differs");
#endif
  });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
