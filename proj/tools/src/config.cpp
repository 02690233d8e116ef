#include "sphere7_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <thread>

namespace sphere7::cli {

namespace {

int parse_int(const std::string& s, const std::string& whole) {
  int v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc() || ptr != last) {
    throw UsageError("not an integer range: '" + whole + "'");
  }
  return v;
}

IntRange range_from_json(const nlohmann::json& j, const char* key) {
  if (j.is_number_integer()) {
    const int v = j.get<int>();
    return {v, v};
  }
  if (j.is_string()) return parse_range(j.get<std::string>());
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
    return {j[0].get<int>(), j[1].get<int>()};
  }
  throw UsageError(std::string("config field '") + key + "' must be an integer, \"a..b\" or [a, b]");
}

template <class T>
T field(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError(std::string("config field '") + key + "' has the wrong type");
  }
}

}  // namespace

IntRange parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = parse_int(text, text);
    return {v, v};
  }
  return {parse_int(text.substr(0, dots), text), parse_int(text.substr(dots + 2), text)};
}

std::string to_string(const IntRange& r) {
  return r.lo == r.hi ? std::to_string(r.lo) : std::to_string(r.lo) + ".." + std::to_string(r.hi);
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["tau_rep"] = tau_rep;
  j["tau_sphere"] = tau_sphere;
  j["h"] = h;
  j["m"] = to_string(m);
  j["ell"] = to_string(ell);
  if (grade_cap) j["grade_cap"] = *grade_cap;
  j["steps"] = steps;
  j["samples"] = samples;
  j["format"] = format == Format::json ? "json" : "csv";
  if (!mutate.empty()) j["mutate"] = mutate;
  j["richardson"] = richardson;
  j["reproject"] = reproject;
  return j;
}

void apply_json(RunConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  static const char* known[] = {"seed",    "tau_rep", "tau_sphere", "h",          "m",
                                "ell",     "grade_cap", "steps",    "samples",    "out",
                                "format",  "mutate",  "richardson", "reproject",  "inline"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) ==
        std::end(known)) {
      throw UsageError("unknown config field '" + key + "'");
    }
  }
  if (j.contains("seed")) cfg.seed = field<std::uint64_t>(j, "seed");
  if (j.contains("tau_rep")) cfg.tau_rep = field<double>(j, "tau_rep");
  if (j.contains("tau_sphere")) cfg.tau_sphere = field<double>(j, "tau_sphere");
  if (j.contains("h")) cfg.h = field<double>(j, "h");
  if (j.contains("m")) cfg.m = range_from_json(j["m"], "m");
  if (j.contains("ell")) cfg.ell = range_from_json(j["ell"], "ell");
  if (j.contains("grade_cap")) cfg.grade_cap = field<int>(j, "grade_cap");
  if (j.contains("steps")) cfg.steps = field<int>(j, "steps");
  if (j.contains("samples")) cfg.samples = field<int>(j, "samples");
  if (j.contains("out")) cfg.out_dir = field<std::string>(j, "out");
  if (j.contains("format")) {
    const auto f = field<std::string>(j, "format");
    if (f == "json") {
      cfg.format = Format::json;
    } else if (f == "csv") {
      cfg.format = Format::csv;
    } else {
      throw UsageError("format must be json or csv");
    }
  }
  if (j.contains("mutate")) cfg.mutate = field<std::string>(j, "mutate");
  if (j.contains("richardson")) cfg.richardson = field<bool>(j, "richardson");
  if (j.contains("reproject")) cfg.reproject = field<bool>(j, "reproject");
  if (j.contains("inline")) cfg.inline_data = field<bool>(j, "inline");
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config file " + path + ": " + e.what());
  }
  apply_json(base, j);
  return base;
}

void validate(const RunConfig& cfg) {
  if (!(cfg.tau_rep > 0) || !(cfg.tau_sphere > 0)) throw UsageError("tolerances must be positive");
  if (!(cfg.h > 0)) throw UsageError("h must be positive");
  if (cfg.m.lo < 1) throw UsageError("m must be >= 1");
  if (cfg.m.hi < cfg.m.lo) throw UsageError("empty m range " + to_string(cfg.m));
  if (cfg.ell.lo < 0) throw UsageError("ell must be >= 0");
  if (cfg.ell.hi < cfg.ell.lo) throw UsageError("empty ell range " + to_string(cfg.ell));
  if (cfg.grade_cap && *cfg.grade_cap < 0) throw UsageError("grade cap must be >= 0");
  if (cfg.steps < 2) throw UsageError("steps must be >= 2");
  if (cfg.samples < 1) throw UsageError("samples must be >= 1");
}

int thread_budget() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("SPHERE7_THREADS")) {
    int cap = 0;
    const std::string s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (ec == std::errc() && ptr == s.data() + s.size() && cap >= 1) n = std::min(n, cap);
  }
  return n;
}

}  // namespace sphere7::cli
