#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sphere7/sphere.hpp"
#include "sphere7_cli/commands.hpp"

namespace sphere7::cli {

namespace fs = std::filesystem;

namespace {

struct Flags {
  std::optional<std::string> config, m, ell, out, format, mutate;
  std::optional<int> steps, samples, grade_cap;
  std::optional<double> h, tau_rep, tau_sphere;
  std::optional<std::uint64_t> seed;
  bool richardson = false, reproject = false, inline_data = false;
  std::string path_file, generator;
  bool dump_matrix = false;
};

void add_common(CLI::App* sc, Flags& f) {
  sc->set_help_flag("--help", "Print this help message and exit");
  sc->add_option("--config", f.config, "JSON run configuration; flags override its fields");
  sc->add_option("--m", f.m, "m or range a..b");
  sc->add_option("--ell", f.ell, "ell or range a..b");
  sc->add_option("--steps", f.steps, "RK4 steps");
  sc->add_option("--h", f.h, "finite-difference step");
  sc->add_option("--seed", f.seed, "sampling seed");
  sc->add_option("--out", f.out, "output directory");
  sc->add_option("--format", f.format, "json or csv");
  sc->add_option("--tau-rep", f.tau_rep, "representation tolerance");
  sc->add_option("--tau-sphere", f.tau_sphere, "sphere constraint tolerance");
}

RunConfig build_config(const Flags& f) {
  RunConfig cfg = f.config ? load_config_file(*f.config) : RunConfig{};
  if (f.m) cfg.m = parse_range(*f.m);
  if (f.ell) cfg.ell = parse_range(*f.ell);
  if (f.steps) cfg.steps = *f.steps;
  if (f.samples) cfg.samples = *f.samples;
  if (f.grade_cap) cfg.grade_cap = *f.grade_cap;
  if (f.h) cfg.h = *f.h;
  if (f.tau_rep) cfg.tau_rep = *f.tau_rep;
  if (f.tau_sphere) cfg.tau_sphere = *f.tau_sphere;
  if (f.seed) cfg.seed = *f.seed;
  if (f.out) cfg.out_dir = *f.out;
  if (f.format) {
    if (*f.format == "json") {
      cfg.format = Format::json;
    } else if (*f.format == "csv") {
      cfg.format = Format::csv;
    } else {
      throw UsageError("format must be json or csv");
    }
  }
  if (f.mutate) cfg.mutate = *f.mutate;
  if (f.richardson) cfg.richardson = true;
  if (f.reproject) cfg.reproject = true;
  if (f.inline_data) cfg.inline_data = true;
  validate(cfg);
  return cfg;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

// Plain CSV of the rows of one section.
std::string rows_csv(const Section& s) {
  Report one;
  one.sections.push_back({s.name, {}, s.data});
  const std::string full = render_csv(one, "");
  const auto start = full.find("\n# " + s.name + "\n");
  return full.substr(start + s.name.size() + 4);
}

int emit(const Report& r, const RunConfig& cfg, const std::string& timestamp, std::ostream& out,
         std::ostream& err) {
  const std::string text = render(r, cfg.format, timestamp);
  if (cfg.out_dir.empty()) {
    out << text;
  } else {
    fs::create_directories(cfg.out_dir);
    const std::string ext = cfg.format == Format::json ? ".json" : ".csv";
    write_file(fs::path(cfg.out_dir) / (r.command + ext), text);
    if (cfg.format == Format::csv) {
      for (const auto& s : r.sections)
        if (s.data.contains("rows")) write_file(fs::path(cfg.out_dir) / (s.name + ".csv"), rows_csv(s));
    }
    out << r.command << ": " << (r.pass() ? "PASS" : "FAIL") << " ("
        << (fs::path(cfg.out_dir) / (r.command + ext)).string() << ")\n";
  }
  if (!r.pass()) {
    err << "FAIL " << r.first_failure() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::string& timestamp) {
  CLI::App app{"Verification and simulation driver for the quantized 7-sphere"};
  app.name("sphere7");
  app.require_subcommand(1);
  Flags f;

  auto* verify = app.add_subcommand("verify", "Lie algebra, formal embedding and representation suites");
  add_common(verify, f);
  verify->add_option("--grade-cap", f.grade_cap, "sqrt(hbar) grade cap (default 2 ell + 4)");
  verify->add_option("--mutate", f.mutate, "break one structure constant (test fixture)");

  auto* transport = app.add_subcommand("transport", "Parallel transport along a path file");
  add_common(transport, f);
  transport->add_option("path", f.path_file, "path JSON file")->required();
  transport->add_flag("--reproject", f.reproject, "project U back to the unitary group each step");
  transport->add_flag("--dump-matrix", f.dump_matrix, "write U in the dump-rep format to --out");
  transport->add_flag("--inline", f.inline_data, "store dumped matrix data in the JSON header");

  auto* table = app.add_subcommand("table", "Dimension, spectrum and residual tables");
  add_common(table, f);
  table->add_option("--grade-cap", f.grade_cap, "sqrt(hbar) grade cap (default 2 ell + 4)");

  auto* dump = app.add_subcommand("dump-rep", "Write representation matrices");
  add_common(dump, f);
  dump->add_option("--generator", f.generator, "only this generator, e.g. K+- or Kpm");
  dump->add_flag("--inline", f.inline_data, "store data in the JSON header instead of a sidecar");

  auto* eds = app.add_subcommand("eds-check", "Finite-difference check of the structure equations");
  add_common(eds, f);
  eds->add_option("--samples", f.samples, "number of random point/tangent samples");
  eds->add_flag("--richardson", f.richardson, "Richardson-extrapolated differences");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const RunConfig cfg = build_config(f);
    const int threads = thread_budget();
    if (verify->parsed()) return emit(verify_report(cfg, threads), cfg, timestamp, out, err);
    if (table->parsed()) return emit(table_report(cfg, threads), cfg, timestamp, out, err);
    if (eds->parsed()) return emit(eds_report(cfg, threads), cfg, timestamp, out, err);
    if (dump->parsed()) return emit(dump_rep_report(cfg, f.generator), cfg, timestamp, out, err);
    if (transport->parsed()) {
      const PathFile pf = load_path_file(f.path_file, cfg.steps);
      if (f.dump_matrix && cfg.out_dir.empty()) throw UsageError("--dump-matrix needs --out");
      const std::string dump_dir = f.dump_matrix ? cfg.out_dir : std::string();
      return emit(transport_report(cfg, pf, dump_dir), cfg, timestamp, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run(args, out, err);
}

}  // namespace sphere7::cli
