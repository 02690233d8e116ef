#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sphere7/connection.hpp"
#include "sphere7_cli/config.hpp"
#include "sphere7_cli/report.hpp"

namespace sphere7::cli {

// Lie algebra, formal embedding and Fock representation suites.
Report verify_report(const RunConfig& cfg, int threads);

// Dimension / spectrum / residual tables over the m range and embedding
// residual grades over the ell range.
Report table_report(const RunConfig& cfg, int threads);

// Structure-equation residuals over cfg.samples random point/tangent pairs.
Report eds_report(const RunConfig& cfg, int threads);

// Path file format (all points are {"x": [4], "y": [4]} or 8 ambient reals):
//   constant     {"point"}
//   great_circle {"from", "to", "loop": true}
//   toric        {"r", "theta", "omega", "duration"}
//   reeb         {"r", "theta"}
//   piecewise    {"points": [...]}
// plus optional "steps", "m", "allow_switch" and
//   "states": {"initial": S, "final": S} with S a basis index, an occupation
//   triple {"n": [n1, n2, n3]} or a list of amplitudes (reals or [re, im]).
// Without "final" the report holds the probability of every basis state.
struct PathFile {
  conn::PathSpec path;
  bool closed = false;
  std::optional<int> m;
  bool allow_switch = true;
  nlohmann::json states;
  std::string kind;
};
// Throws UsageError on malformed input.
PathFile parse_path_file(const nlohmann::json& j, int default_steps);
PathFile load_path_file(const std::string& file, int default_steps);

// dump_dir: write the transport matrix of each m there when non-empty.
Report transport_report(const RunConfig& cfg, const PathFile& pf, const std::string& dump_dir = {});

// Writes rho^{1/m}(X) for every m in range and generator (all if the filter
// is empty) into cfg.out_dir.
Report dump_rep_report(const RunConfig& cfg, const std::string& generator_filter);

// Nonzero brackets of generator pairs a < b as {"X", "Y", "result": [{"gen",
// "re", "im"}]} with exact rational strings.
ojson structure_constants_json(lie::Basis basis);
// Writes both bases to structure_constants.json in dir; returns the file name.
std::string write_structure_constants(const std::string& dir);

// "P+_-" -> "Pp_m"; any other character outside [A-Za-z0-9_] becomes '_'.
std::string sanitize_name(const std::string& name);

// Header JSON plus sidecar of little-endian f64 [re, im] pairs in row-major
// order, or the data inline when inline_data is set. Returns the header.
nlohmann::ordered_json write_matrix(const std::string& dir, const std::string& stem, int m,
                                    const std::string& generator, const fock::Matrix& a,
                                    bool inline_data);
// Inverse of write_matrix, reading the header path.
fock::Matrix read_matrix(const std::string& header_file);

// Entry point. Exit codes: 0 pass, 1 failing check, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::string& timestamp = current_timestamp());
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace sphere7::cli
