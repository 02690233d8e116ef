#include <algorithm>
#include <cmath>
#include <limits>

#include "parallel.hpp"
#include "sphere7/embedding.hpp"
#include "sphere7/fock_rep.hpp"
#include "sphere7/lie_u2h.hpp"
#include "sphere7_cli/commands.hpp"

namespace sphere7::cli {

namespace {

using lie::Basis;
using lie::LieElement;

std::string pair_label(int a, int b) {
  return std::string("[") + lie::generator_name(Basis::spinor, a) + "," +
         lie::generator_name(Basis::spinor, b) + "]";
}

void lie_suite(Report& r, const RunConfig& cfg) {
  Section& s = r.section("lie_u2h");
  const auto known = lie::known_mutations();
  if (!cfg.mutate.empty() && std::find(known.begin(), known.end(), cfg.mutate) == known.end()) {
    std::string list;
    for (const auto& k : known) list += (list.empty() ? "" : ", ") + k;
    throw UsageError("unknown mutation '" + cfg.mutate + "' (known: " + list + ")");
  }
  const lie::StructureTable table =
      cfg.mutate.empty() ? lie::spinor_table() : lie::mutated_spinor_table(cfg.mutate);
  if (!cfg.mutate.empty()) s.data["mutation"] = cfg.mutate;

  // Spinor table against commutators of the quaternionic matrix model.
  const lie::StructureTable& model = lie::matrix_vector_table();
  Rational worst = 0;
  int bad_pairs = 0;
  std::string first_bad;
  for (int a = 0; a < lie::kDim; ++a) {
    for (int b = a + 1; b < lie::kDim; ++b) {
      const LieElement x = LieElement::generator(Basis::spinor, a);
      const LieElement y = LieElement::generator(Basis::spinor, b);
      const LieElement via_model = lie::basis_change(
          lie::bracket(lie::basis_change(x, Basis::vector), lie::basis_change(y, Basis::vector),
                       model),
          Basis::spinor);
      const Rational d = (lie::bracket(x, y, table) - via_model).max_abs();
      if (sgn(d) != 0) {
        if (bad_pairs++ == 0) first_bad = "pair " + pair_label(a, b) + " disagrees with the matrix model";
        worst = std::max(worst, d);
      }
    }
  }
  s.add("matrix_model_consistency", worst.get_d(), 0, bad_pairs == 0, first_bad);

  const lie::JacobiReport jr = lie::verify_jacobi(table);
  std::string jdetail;
  if (jr.failing > 0) {
    const auto& t = jr.first_failure;
    jdetail = std::to_string(jr.failing) + " failing triples, first (" +
              lie::generator_name(Basis::spinor, t[0]) + ", " +
              lie::generator_name(Basis::spinor, t[1]) + ", " +
              lie::generator_name(Basis::spinor, t[2]) + ")";
  }
  s.add("jacobi", jr.max_residual.get_d(), 0, jr.failing == 0, jdetail);

  const Rational cross = lie::cross_basis_residual();
  s.add("cross_basis", cross.get_d(), 0, sgn(cross) == 0);

  const double c1 = lie::contraction_residual(10), c2 = lie::contraction_residual(100),
               c3 = lie::contraction_residual(1000);
  s.add("contraction_decreasing", ojson::array({c1, c2, c3}), "strictly decreasing",
        c1 > c2 && c2 > c3);
}

void weyl_suite(Report& r, const RunConfig& cfg, int threads) {
  Section& s = r.section("weyl_formal");
  ojson per_ell = ojson::array();
  std::vector<std::pair<int, int>> worst;  // (grade or cap + 1, ell)
  for (int ell = cfg.ell.lo; ell <= cfg.ell.hi; ++ell) {
    const int cap = cfg.grade_cap.value_or(weyl::default_grade_cap(ell));
    const weyl::EmbeddingReport q = weyl::verify_embedding(ell, cap, threads);
    const std::string tag = "ell=" + std::to_string(ell);

    int leaks = 0;
    std::string first_leak;
    ojson pairs = ojson::array();
    for (const auto& p : q.pairs) {
      const bool must_close = !(weyl::uses_square_root(p.a) && weyl::uses_square_root(p.b));
      if (must_close && !p.exact() && leaks++ == 0) first_leak = "pair " + pair_label(p.a, p.b);
      ojson jp;
      jp["pair"] = p.pair_name();
      jp["min_grade"] = p.min_grade ? ojson(*p.min_grade) : ojson(nullptr);
      pairs.push_back(std::move(jp));
    }
    s.add("exact_subsector " + tag, leaks, 0, leaks == 0, first_leak);
    const bool real = weyl::verify_reality(ell);
    s.add("reality " + tag, real, true, real);

    if (ell <= 4) {
      const weyl::EmbeddingReport c = weyl::verify_classical(ell, cap, threads);
      int mismatches = 0;
      std::string first;
      for (std::size_t k = 0; k < q.pairs.size(); ++k) {
        if (q.pairs[k].min_grade != c.pairs[k].min_grade && mismatches++ == 0)
          first = "pair " + pair_label(q.pairs[k].a, q.pairs[k].b);
      }
      s.add("classical_agreement " + tag, mismatches, 0, mismatches == 0, first);
    }

    const auto wg = q.worst_grade();
    worst.emplace_back(wg.value_or(cap + 1), ell);
    ojson je;
    je["ell"] = ell;
    je["grade_cap"] = cap;
    je["worst_grade"] = wg ? ojson(*wg) : ojson(nullptr);
    je["pairs"] = std::move(pairs);
    per_ell.push_back(std::move(je));
  }
  bool monotone = true;
  std::string detail;
  for (std::size_t k = 0; k < worst.size(); ++k) {
    if (k + 1 < worst.size() && worst[k + 1].first < worst[k].first) {
      monotone = false;
      detail = "grade drops after ell=" + std::to_string(worst[k].second);
    }
    if (k + 2 < worst.size() && worst[k + 2].first < worst[k].first + 2) {
      monotone = false;
      detail = "grade gains less than 2 from ell=" + std::to_string(worst[k].second);
    }
  }
  s.add("residual_grade_growth", static_cast<int>(worst.size()), "nondecreasing, +2 per two steps",
        monotone, detail);
  s.data["embedding"] = std::move(per_ell);
}

double kpm_spectrum_deviation(const fock::RepSet& rep) {
  const fock::FockBasis basis(rep.m);
  const fock::Matrix k = fock::cplx(0, -1) * rep.rho[lie::gen::Kpm];
  double dev = 0.0;
  for (int i = 0; i < k.rows(); ++i) {
    for (int j = 0; j < k.cols(); ++j) {
      const auto& st = basis[i];
      const double want = i == j ? rep.m - 2 * st.n1 - st.n2 - st.n3 - 1 : 0.0;
      dev = std::max(dev, std::abs(k(i, j) - want));
    }
  }
  return dev;
}

void fock_suite(Report& r, const RunConfig& cfg, int threads) {
  Section& s = r.section("fock_rep");
  const int count = cfg.m.hi - cfg.m.lo + 1;
  struct Row {
    int dim;
    double brackets, reality, trace, spectrum, casimir;
    int commutant;
  };
  std::vector<Row> rows(count);
  parallel_for(count, threads, [&](int k) {
    const fock::RepSet rep = fock::build_rho(cfg.m.lo + k);
    rows[k] = {rep.dim(),
               fock::verify_brackets(rep),
               fock::verify_reality(rep),
               fock::max_trace(rep),
               kpm_spectrum_deviation(rep),
               fock::casimir_deviation(rep),
               fock::commutant_dimension(rep)};
  });
  for (int k = 0; k < count; ++k) {
    const int m = cfg.m.lo + k;
    const Row& w = rows[k];
    const std::string tag = "m=" + std::to_string(m);
    const int want = (m + 2) * (m + 1) * m / 6;
    s.add("dim " + tag, w.dim, want, w.dim == want);
    s.add("brackets " + tag, w.brackets, cfg.tau_rep, w.brackets < cfg.tau_rep);
    s.add("reality " + tag, w.reality, cfg.tau_rep, w.reality < cfg.tau_rep);
    s.add("trace " + tag, w.trace, cfg.tau_rep, w.trace < cfg.tau_rep);
    s.add("kpm_spectrum " + tag, w.spectrum, 1e-12, w.spectrum < 1e-12);
    s.add("commutant " + tag, w.commutant, 1, w.commutant == 1);
    s.add("casimir " + tag, w.casimir, 1e-8, w.casimir < 1e-8);
  }
  if (cfg.m.hi >= 2) {
    const fock::FiltrationReport f = fock::filtration_check(cfg.m.hi);
    s.add("filtration", f.strictly_increasing && f.basis_compatible, true,
          f.strictly_increasing && f.basis_compatible);
    s.data["filtration_off_block"] = f.off_block;
  }
}

void partial_suite(Report& r, const RunConfig& cfg) {
  Section& s = r.section("partial_sums");
  ojson dist = ojson::array();
  for (int m = cfg.m.lo; m <= std::min(cfg.m.hi, 4); ++m) {
    std::vector<double> d;
    for (int ell = cfg.ell.lo; ell <= cfg.ell.hi; ++ell) d.push_back(fock::partial_distance(m, ell));
    bool nonincreasing = true;
    for (std::size_t k = 1; k < d.size(); ++k) nonincreasing = nonincreasing && d[k] <= d[k - 1];
    s.add("distance_nonincreasing m=" + std::to_string(m), d.back(), "nonincreasing in ell",
          nonincreasing);
    ojson row;
    row["m"] = m;
    row["distance"] = d;
    dist.push_back(std::move(row));
  }
  s.data["distance_by_ell"] = std::move(dist);

  double worst = 0.0;
  for (int ell = cfg.ell.lo; ell <= std::min(cfg.ell.hi, 4); ++ell) {
    const weyl::QuantumGenerators g = weyl::embedded_generators(ell);
    for (int m = cfg.m.lo; m <= std::min(cfg.m.hi, 3); ++m) {
      const fock::PartialRepSet p = fock::build_rho_partial(m, ell);
      for (int a = 0; a < lie::kDim; ++a)
        worst = std::max(worst, fock::max_abs(fock::evaluate(g[a], m) - p.rho[a]));
    }
  }
  s.add("symbolic_evaluation", worst, 1e-12, worst < 1e-12);
}

}  // namespace

Report verify_report(const RunConfig& cfg, int threads) {
  validate(cfg);
  Report r;
  r.command = "verify";
  r.config = cfg.to_json();
  lie_suite(r, cfg);
  weyl_suite(r, cfg, threads);
  fock_suite(r, cfg, threads);
  partial_suite(r, cfg);
  return r;
}

Report table_report(const RunConfig& cfg, int threads) {
  validate(cfg);
  Report r;
  r.command = "table";
  r.config = cfg.to_json();

  Section& reps = r.section("representations");
  const int count = cfg.m.hi - cfg.m.lo + 1;
  std::vector<ojson> rows(count);
  std::vector<int> dims(count);
  parallel_for(count, threads, [&](int k) {
    const int m = cfg.m.lo + k;
    const fock::RepSet rep = fock::build_rho(m);
    const Eigen::VectorXd weights = (fock::cplx(0, -1) * rep.rho[lie::gen::Kpm]).diagonal().real();
    std::vector<long> eig;
    for (int i = 0; i < weights.size(); ++i) eig.push_back(std::lround(weights[i]));
    std::sort(eig.begin(), eig.end());
    eig.erase(std::unique(eig.begin(), eig.end()), eig.end());
    ojson row;
    row["m"] = m;
    row["D"] = rep.dim();
    row["kpm_min"] = eig.front();
    row["kpm_max"] = eig.back();
    row["kpm_distinct"] = eig.size();
    row["kpm_deviation"] = kpm_spectrum_deviation(rep);
    row["bracket_residual"] = fock::verify_brackets(rep);
    row["note"] = m == 1 ? "trivial representation" : "";
    dims[k] = rep.dim();
    rows[k] = std::move(row);
  });
  bool dims_ok = true;
  for (int k = 0; k < count; ++k) {
    const int m = cfg.m.lo + k;
    dims_ok = dims_ok && dims[k] == (m + 2) * (m + 1) * m / 6;
  }
  reps.add("dimensions", ojson(dims), "C(m+2,3)", dims_ok);
  reps.data["rows"] = ojson(rows);

  Section& emb = r.section("embedding");
  ojson erows = ojson::array();
  std::vector<int> grades;
  for (int ell = cfg.ell.lo; ell <= cfg.ell.hi; ++ell) {
    const int cap = cfg.grade_cap.value_or(weyl::default_grade_cap(ell));
    const weyl::EmbeddingReport q = weyl::verify_embedding(ell, cap, threads);
    int inexact = 0;
    for (const auto& p : q.pairs) inexact += p.exact() ? 0 : 1;
    ojson row;
    row["ell"] = ell;
    row["grade_cap"] = cap;
    row["quantum_grade"] = q.worst_grade() ? ojson(*q.worst_grade()) : ojson(nullptr);
    if (ell <= 4) {
      const auto c = weyl::verify_classical(ell, cap, threads).worst_grade();
      row["classical_grade"] = c ? ojson(*c) : ojson(nullptr);
    } else {
      row["classical_grade"] = nullptr;
    }
    row["inexact_pairs"] = inexact;
    grades.push_back(q.worst_grade().value_or(cap + 1));
    erows.push_back(std::move(row));
  }
  const bool nondecreasing = std::is_sorted(grades.begin(), grades.end());
  emb.add("grade_nondecreasing", ojson(grades), "nondecreasing in ell", nondecreasing);
  emb.data["rows"] = std::move(erows);
  return r;
}

}  // namespace sphere7::cli
