#include <cmath>

#include "parallel.hpp"
#include "sphere7/frame_forms.hpp"
#include "sphere7/sampling.hpp"
#include "sphere7_cli/commands.hpp"

namespace sphere7::cli {

namespace {

const char* kEquationNames[10] = {"mu1", "mu2", "mu3", "nu0", "nu1", "nu2", "nu3", "kappa1", "kappa2", "kappa3"};

struct Sample {
  TangentVector u, v;
};

}  // namespace

Report eds_report(const RunConfig& cfg, int threads) {
  validate(cfg);
  Report r;
  r.command = "eds-check";
  r.config = cfg.to_json();

  SplitMix64 rng(cfg.seed);
  std::vector<Sample> samples;
  for (int k = 0; k < cfg.samples; ++k) {
    const SpherePoint p = random_point_near_s(rng);
    const TangentVector u = random_unit_tangent(rng, p);
    samples.push_back({u, random_unit_tangent(rng, p)});
  }

  const int n = static_cast<int>(samples.size());
  std::vector<EdsResiduals> at_h(n), at_half(n);
  std::vector<double> swapped(n), gauge(n, -1.0);
  parallel_for(n, threads, [&](int k) {
    const Sample& s = samples[k];
    at_h[k] = eds_residual(s.u, s.v, cfg.h, cfg.richardson);
    at_half[k] = eds_residual(s.u, s.v, cfg.h / 2, cfg.richardson);
    swapped[k] = std::abs(max_residual(eds_residual(s.v, s.u, cfg.h, cfg.richardson)) -
                          max_residual(at_h[k]));
    if (s.u.base.y.normsq() >= 0.01) gauge[k] = gauge_overlap_check(s.u, 1e-5);
  });

  EdsResiduals per_eq{};
  double worst = 0.0, sum_h = 0.0, sum_half = 0.0, worst_swap = 0.0, worst_gauge = 0.0;
  int gauge_samples = 0;
  for (int k = 0; k < n; ++k) {
    for (int e = 0; e < 10; ++e) per_eq[e] = std::max(per_eq[e], at_h[k][e]);
    worst = std::max(worst, max_residual(at_h[k]));
    sum_h += max_residual(at_h[k]);
    sum_half += max_residual(at_half[k]);
    worst_swap = std::max(worst_swap, swapped[k]);
    if (gauge[k] >= 0) {
      worst_gauge = std::max(worst_gauge, gauge[k]);
      ++gauge_samples;
    }
  }
  const double order = std::log2(sum_h / sum_half);

  Section& s = r.section("exterior_system");
  s.add("max_residual", worst, 1e-6, worst < 1e-6);
  if (cfg.richardson) {
    s.add("convergence_order", order, "reported only (richardson)", true);
  } else {
    s.add("convergence_order", order, ojson::array({1.8, 2.2}), order >= 1.8 && order <= 2.2);
  }
  s.add("antisymmetry", worst_swap, 1e-12, worst_swap < 1e-12);
  s.add("gauge_overlap", worst_gauge, 1e-6, worst_gauge < 1e-6,
        std::to_string(gauge_samples) + " samples with |y|^2 >= 0.01");
  s.data["chart"] = "p + s e_i renormalized, e_i orthonormal in the tangent space";
  s.data["difference"] = cfg.richardson ? "central, richardson" : "central";
  s.data["samples"] = n;
  ojson eq;
  for (int e = 0; e < 10; ++e) eq[kEquationNames[e]] = per_eq[e];
  s.data["per_equation_max"] = std::move(eq);
  return r;
}

}  // namespace sphere7::cli
