#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sphere7_cli/config.hpp"

namespace sphere7::cli {

using ojson = nlohmann::ordered_json;

struct Check {
  std::string name;
  ojson value;
  ojson threshold;
  bool pass = true;
  std::string detail;
};

struct Section {
  std::string name;
  std::vector<Check> checks;
  ojson data = ojson::object();

  Check& add(std::string name, ojson value, ojson threshold, bool pass, std::string detail = {});
  bool pass() const;
};

struct Report {
  std::string command;
  ojson config;
  std::vector<Section> sections;

  Section& section(const std::string& name);
  bool pass() const;
  // First failing check as "section/check: detail", empty if none.
  std::string first_failure() const;
};

std::string current_timestamp();

// Timestamp is the only field that varies between identical runs.
std::string render(const Report& r, Format f, const std::string& timestamp);
std::string render_json(const Report& r, const std::string& timestamp);
std::string render_csv(const Report& r, const std::string& timestamp);

}  // namespace sphere7::cli
