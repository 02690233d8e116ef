#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace sphere7::cli {

// Bad flags, bad config values or malformed input files (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IntRange {
  int lo = 0;
  int hi = 0;
};

// "a..b" or "a"; throws UsageError.
IntRange parse_range(const std::string& text);
std::string to_string(const IntRange& r);

enum class Format { json, csv };

struct RunConfig {
  std::uint64_t seed = 1;
  double tau_rep = 1e-10;
  double tau_sphere = 1e-10;
  double h = 1e-4;
  IntRange m{1, 6};
  IntRange ell{0, 4};
  std::optional<int> grade_cap;  // default 2 ell + 4
  int steps = 10000;
  int samples = 100;
  std::string out_dir;  // empty: report goes to stdout
  Format format = Format::json;
  std::string mutate;
  bool richardson = false;
  bool reproject = false;
  bool inline_data = false;

  nlohmann::ordered_json to_json() const;
};

// Reads the fields present in j over the defaults in cfg.
void apply_json(RunConfig& cfg, const nlohmann::json& j);
RunConfig load_config_file(const std::string& path, RunConfig base = {});

// Throws UsageError if a field is out of range.
void validate(const RunConfig& cfg);

// min(hardware threads, SPHERE7_THREADS if set), at least 1.
int thread_budget();

}  // namespace sphere7::cli
