#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "sphere7/connection.hpp"
#include "sphere7_cli/commands.hpp"

namespace sphere7::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::array<double, 4> four(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 4) throw UsageError(what + " must be an array of 4 numbers");
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) {
    if (!j[k].is_number()) throw UsageError(what + " must be an array of 4 numbers");
    out[k] = j[k].get<double>();
  }
  return out;
}

SpherePoint point_from_json(const json& j, const std::string& what) {
  Vec8 v{};
  if (j.is_object() && j.contains("x") && j.contains("y")) {
    const auto x = four(j["x"], what + ".x");
    const auto y = four(j["y"], what + ".y");
    for (int k = 0; k < 4; ++k) {
      v[k] = x[k];
      v[4 + k] = y[k];
    }
  } else if (j.is_array() && j.size() == 8) {
    for (int k = 0; k < 8; ++k) {
      if (!j[k].is_number()) throw UsageError(what + " must hold 8 numbers");
      v[k] = j[k].get<double>();
    }
  } else {
    throw UsageError(what + " must be {\"x\": [4], \"y\": [4]} or 8 numbers");
  }
  if (dot8(v, v) == 0.0) throw UsageError(what + " is the zero vector");
  return SpherePoint::from_ambient(v);
}

const json& need(const json& j, const char* key, const std::string& kind) {
  if (!j.contains(key)) throw UsageError(kind + " path needs \"" + key + "\"");
  return j[key];
}

ToricPoint toric_from_json(const json& j, const std::string& kind) {
  ToricPoint t;
  t.r = four(need(j, "r", kind), "r");
  t.theta = j.contains("theta") ? four(j["theta"], "theta") : std::array<double, 4>{};
  double norm = 0.0;
  for (double r : t.r) {
    if (r < 0) throw UsageError("toric radii must be nonnegative");
    norm += r * r;
  }
  if (norm == 0.0) throw UsageError("toric radii are all zero");
  for (double& r : t.r) r /= std::sqrt(norm);
  return t;
}

conn::Vector state_from_json(const json& j, const fock::FockBasis& basis, const std::string& what) {
  conn::Vector v = conn::Vector::Zero(basis.size());
  if (j.is_number_integer()) {
    const int k = j.get<int>();
    if (k < 0 || k >= basis.size())
      throw UsageError(what + ": basis index " + std::to_string(k) + " out of range");
    v[k] = 1.0;
  } else if (j.is_object() && j.contains("n")) {
    const json& n = j["n"];
    if (!n.is_array() || n.size() != 3) throw UsageError(what + ".n must be [n1, n2, n3]");
    const fock::FockState s{n[0].get<int>(), n[1].get<int>(), n[2].get<int>()};
    const int k = basis.index(s);
    if (k < 0) throw UsageError(what + ": occupation outside the space");
    v[k] = 1.0;
  } else if (j.is_array()) {
    if (static_cast<int>(j.size()) != basis.size())
      throw UsageError(what + " has " + std::to_string(j.size()) + " amplitudes, space has " +
                       std::to_string(basis.size()));
    for (int k = 0; k < basis.size(); ++k) {
      const json& a = j[k];
      if (a.is_number()) {
        v[k] = a.get<double>();
      } else if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
        v[k] = fock::cplx(a[0].get<double>(), a[1].get<double>());
      } else {
        throw UsageError(what + ": amplitude " + std::to_string(k) + " is not a number or [re, im]");
      }
    }
    if (v.norm() == 0.0) throw UsageError(what + " is the zero vector");
  } else {
    throw UsageError(what + " must be an index, {\"n\": [...]} or an amplitude list");
  }
  return v;
}

void write_f64le(std::ostream& out, double x) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  unsigned char b[8];
  for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(bits >> (8 * k));
  out.write(reinterpret_cast<const char*>(b), 8);
}

double read_f64le(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw std::runtime_error("truncated matrix data");
  std::uint64_t bits = 0;
  for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(b[k]) << (8 * k);
  return std::bit_cast<double>(bits);
}

}  // namespace

namespace {

PathFile parse_path_unchecked(const json& j, int default_steps) {
  if (!j.is_object()) throw UsageError("path file must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string()) throw UsageError("path file needs a \"kind\"");
  PathFile pf;
  pf.kind = j["kind"].get<std::string>();
  int steps = default_steps;
  try {
    if (j.contains("steps")) steps = j["steps"].get<int>();
    if (j.contains("m")) pf.m = j["m"].get<int>();
    if (j.contains("allow_switch")) pf.allow_switch = j["allow_switch"].get<bool>();
  } catch (const json::exception&) {
    throw UsageError("steps, m and allow_switch must be integer, integer and boolean");
  }
  if (steps < 2) throw UsageError("steps must be >= 2");
  if (pf.m && *pf.m < 1) throw UsageError("m must be >= 1");
  if (j.contains("states")) pf.states = j["states"];

  const std::string& kind = pf.kind;
  if (kind == "constant") {
    pf.path = conn::PathSpec::stationary(point_from_json(need(j, "point", kind), "point"), steps);
  } else if (kind == "great_circle") {
    const SpherePoint p = point_from_json(need(j, "from", kind), "from");
    const SpherePoint q = point_from_json(need(j, "to", kind), "to");
    const bool loop = j.value("loop", true);
    pf.path = loop ? conn::PathSpec::great_circle_loop(p, q, steps)
                   : conn::PathSpec::great_circle_arc(p, q, steps);
  } else if (kind == "toric") {
    const ToricPoint t = toric_from_json(j, kind);
    const auto omega = four(need(j, "omega", kind), "omega");
    const json& d = need(j, "duration", kind);
    if (!d.is_number() || !(d.get<double>() > 0)) throw UsageError("duration must be positive");
    pf.path = conn::PathSpec::toric_curve(t, omega, d.get<double>(), steps);
  } else if (kind == "reeb") {
    pf.path = conn::PathSpec::toric_curve(toric_from_json(j, kind), {1, 1, 1, 1},
                                          2 * std::numbers::pi, steps);
  } else if (kind == "piecewise") {
    const json& pts = need(j, "points", kind);
    if (!pts.is_array() || pts.size() < 2) throw UsageError("piecewise path needs >= 2 points");
    std::vector<SpherePoint> v;
    for (std::size_t k = 0; k < pts.size(); ++k)
      v.push_back(point_from_json(pts[k], "points[" + std::to_string(k) + "]"));
    pf.path = conn::PathSpec::piecewise_path(v, steps);
  } else {
    throw UsageError("unknown path kind '" + kind + "'");
  }
  const Vec8 a = conn::path_sample(pf.path, pf.path.t0).base.ambient();
  const Vec8 b = conn::path_sample(pf.path, pf.path.t1).base.ambient();
  double gap = 0.0;
  for (int k = 0; k < 8; ++k) gap = std::max(gap, std::abs(a[k] - b[k]));
  pf.closed = gap < 1e-9;
  return pf;
}

}  // namespace

PathFile parse_path_file(const json& j, int default_steps) {
  try {
    return parse_path_unchecked(j, default_steps);
  } catch (const json::exception& e) {
    throw UsageError(std::string("path file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("path file: ") + e.what());
  }
}

PathFile load_path_file(const std::string& file, int default_steps) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot open path file " + file);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw UsageError("path file " + file + ": " + e.what());
  }
  return parse_path_file(j, default_steps);
}

Report transport_report(const RunConfig& cfg, const PathFile& pf, const std::string& dump_dir) {
  validate(cfg);
  Report r;
  r.command = "transport";
  r.config = cfg.to_json();
  const IntRange ms = pf.m ? IntRange{*pf.m, *pf.m} : cfg.m;
  conn::TransportOptions opt;
  opt.reproject = cfg.reproject;
  opt.allow_switch = pf.allow_switch;

  for (int m = ms.lo; m <= ms.hi; ++m) {
    const fock::FockBasis basis(m);
    std::optional<conn::Vector> psi_i, psi_f;
    if (!pf.states.is_null()) {
      if (!pf.states.is_object() || !pf.states.contains("initial"))
        throw UsageError("states needs an \"initial\" entry");
      psi_i = state_from_json(pf.states["initial"], basis, "states.initial");
      if (pf.states.contains("final")) psi_f = state_from_json(pf.states["final"], basis, "states.final");
    }

    const conn::TransportResult res = conn::parallel_transport(pf.path, m, opt);
    Section& s = r.section("m=" + std::to_string(m));
    s.data["kind"] = pf.kind;
    s.data["m"] = m;
    s.data["dim"] = basis.size();
    s.data["steps"] = res.steps;
    s.data["closed"] = pf.closed;
    s.data["start_patch"] = patch_name(res.start_patch);
    ojson sw = ojson::array();
    for (const auto& e : res.switches)
      sw.push_back({{"step", e.step}, {"from", patch_name(e.from)}, {"to", patch_name(e.to)}});
    s.data["switches"] = std::move(sw);
    s.data["reprojected"] = res.reprojected;
    s.data["unitarity_residual"] = res.unitarity_residual;
    s.data["holonomy_distance"] = res.holonomy_distance;

    s.add("unitarity_residual", res.unitarity_residual, 1e-8, res.unitarity_residual < 1e-8);
    if (pf.closed)
      s.add("holonomy_distance", res.holonomy_distance, 1e-5, res.holonomy_distance < 1e-5);

    if (psi_i && psi_f) {
      const double p = conn::born_probability(*psi_i, *psi_f, res.U);
      s.data["probability"] = p;
    } else if (psi_i) {
      ojson table = ojson::array();
      double total = 0.0;
      for (int k = 0; k < basis.size(); ++k) {
        conn::Vector e = conn::Vector::Zero(basis.size());
        e[k] = 1.0;
        const double p = conn::born_probability(*psi_i, e, res.U);
        total += p;
        const auto& st = basis[k];
        table.push_back({{"n", {st.n1, st.n2, st.n3}}, {"probability", p}});
      }
      s.data["probabilities"] = std::move(table);
      s.data["probability_sum"] = total;
      s.add("probability_sum", total, 1e-8, std::abs(total - 1.0) < 1e-8);
    }
    if (!dump_dir.empty()) {
      s.data["matrix"] = write_matrix(dump_dir, "transport_m" + std::to_string(m), m, "U", res.U,
                                      cfg.inline_data);
    }
  }
  return r;
}

std::string sanitize_name(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (c == '+') {
      out += 'p';
    } else if (c == '-') {
      out += 'm';
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      out += c;
    } else {
      out += '_';
    }
  }
  return out;
}

ojson write_matrix(const std::string& dir, const std::string& stem, int m,
                   const std::string& generator, const fock::Matrix& a, bool inline_data) {
  fs::create_directories(dir);
  ojson h;
  h["m"] = m;
  h["dim"] = fock::dim(m);
  h["basis_order"] = "graded-lex: total occupation, then n1, then n2 (ascending)";
  const fock::FockBasis basis(a.rows() == fock::dim(m + 1) && a.rows() != a.cols() ? m + 1 : m);
  ojson states = ojson::array();
  for (const auto& st : basis.states()) states.push_back({st.n1, st.n2, st.n3});
  h["basis"] = std::move(states);
  h["generator"] = generator;
  h["rows"] = a.rows();
  h["cols"] = a.cols();
  h["layout"] = "row-major [re, im] pairs";
  if (inline_data) {
    ojson data = ojson::array();
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) data.push_back({a(i, j).real(), a(i, j).imag()});
    h["data"] = std::move(data);
  } else {
    const std::string bin = stem + ".bin";
    std::ofstream out(fs::path(dir) / bin, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (fs::path(dir) / bin).string());
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < a.cols(); ++j) {
        write_f64le(out, a(i, j).real());
        write_f64le(out, a(i, j).imag());
      }
    }
    h["dtype"] = "f64le";
    h["data_file"] = bin;
  }
  std::ofstream hout(fs::path(dir) / (stem + ".json"));
  if (!hout) throw std::runtime_error("cannot write " + (fs::path(dir) / (stem + ".json")).string());
  hout << h.dump(2) << "\n";
  h.erase("basis");
  h.erase("data");
  h["header_file"] = stem + ".json";
  return h;
}

fock::Matrix read_matrix(const std::string& header_file) {
  std::ifstream in(header_file);
  if (!in) throw std::runtime_error("cannot open " + header_file);
  json h;
  in >> h;
  const int rows = h.at("rows").get<int>(), cols = h.at("cols").get<int>();
  fock::Matrix a(rows, cols);
  if (h.contains("data")) {
    const json& d = h["data"];
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        const json& e = d.at(static_cast<std::size_t>(i * cols + j));
        a(i, j) = fock::cplx(e.at(0).get<double>(), e.at(1).get<double>());
      }
    return a;
  }
  const fs::path bin = fs::path(header_file).parent_path() / h.at("data_file").get<std::string>();
  std::ifstream bin_in(bin, std::ios::binary);
  if (!bin_in) throw std::runtime_error("cannot open " + bin.string());
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = read_f64le(bin_in);
      a(i, j) = fock::cplx(re, read_f64le(bin_in));
    }
  return a;
}

ojson structure_constants_json(lie::Basis basis) {
  const lie::StructureTable& t = lie::table_for(basis);
  ojson out = ojson::array();
  for (int a = 0; a < lie::kDim; ++a) {
    for (int b = a + 1; b < lie::kDim; ++b) {
      ojson terms = ojson::array();
      for (int c = 0; c < lie::kDim; ++c) {
        const CRational& v = t(a, b)[c];
        if (v.is_zero()) continue;
        terms.push_back({{"gen", lie::generator_name(basis, c)},
                         {"re", v.re().get_str()},
                         {"im", v.im().get_str()}});
      }
      out.push_back({{"X", lie::generator_name(basis, a)},
                     {"Y", lie::generator_name(basis, b)},
                     {"result", std::move(terms)}});
    }
  }
  return out;
}

std::string write_structure_constants(const std::string& dir) {
  fs::create_directories(dir);
  ojson j;
  j["spinor"] = structure_constants_json(lie::Basis::spinor);
  j["vector"] = structure_constants_json(lie::Basis::vector);
  const std::string name = "structure_constants.json";
  std::ofstream out(fs::path(dir) / name);
  if (!out) throw std::runtime_error("cannot write " + (fs::path(dir) / name).string());
  out << j.dump(2) << "\n";
  return name;
}

Report dump_rep_report(const RunConfig& cfg, const std::string& generator_filter) {
  validate(cfg);
  const std::string dir = cfg.out_dir.empty() ? "." : cfg.out_dir;
  const auto names = fock::generator_names();
  int only = -1;
  if (!generator_filter.empty()) {
    only = lie::generator_index(lie::Basis::spinor, generator_filter);
    for (int a = 0; a < lie::kDim && only < 0; ++a)
      if (sanitize_name(names[a]) == generator_filter) only = a;
    if (only < 0) throw UsageError("unknown generator '" + generator_filter + "'");
  }
  Report r;
  r.command = "dump-rep";
  r.config = cfg.to_json();
  Section& s = r.section("dump");
  ojson files = ojson::array();
  int written = 0;
  for (int m = cfg.m.lo; m <= cfg.m.hi; ++m) {
    const fock::RepSet rep = fock::build_rho(m);
    for (int a = 0; a < lie::kDim; ++a) {
      if (only >= 0 && a != only) continue;
      const std::string stem = "rho_m" + std::to_string(m) + "_" + sanitize_name(names[a]);
      files.push_back(write_matrix(dir, stem, m, names[a], rep.rho[a], cfg.inline_data));
      ++written;
    }
  }
  const int want = (cfg.m.hi - cfg.m.lo + 1) * (only >= 0 ? 1 : lie::kDim);
  s.add("files_written", written, want, written == want);
  s.data["structure_constants"] = write_structure_constants(dir);
  s.data["files"] = std::move(files);
  return r;
}

}  // namespace sphere7::cli
