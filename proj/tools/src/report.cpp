#include "sphere7_cli/report.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

namespace sphere7::cli {

Check& Section::add(std::string check_name, ojson value, ojson threshold, bool ok,
                    std::string detail) {
  checks.push_back({std::move(check_name), std::move(value), std::move(threshold), ok,
                    std::move(detail)});
  return checks.back();
}

bool Section::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Section& Report::section(const std::string& name) {
  for (auto& s : sections)
    if (s.name == name) return s;
  sections.push_back({name, {}, ojson::object()});
  return sections.back();
}

bool Report::pass() const {
  for (const auto& s : sections)
    if (!s.pass()) return false;
  return true;
}

std::string Report::first_failure() const {
  for (const auto& s : sections) {
    for (const auto& c : s.checks) {
      if (c.pass) continue;
      std::string out = s.name + "/" + c.name;
      if (!c.detail.empty()) out += ": " + c.detail;
      return out;
    }
  }
  return {};
}

std::string current_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string render_json(const Report& r, const std::string& timestamp) {
  ojson j;
  j["command"] = r.command;
  j["timestamp"] = timestamp;
  j["pass"] = r.pass();
  j["config"] = r.config;
  ojson sections = ojson::array();
  for (const auto& s : r.sections) {
    ojson js;
    js["name"] = s.name;
    js["pass"] = s.pass();
    ojson checks = ojson::array();
    for (const auto& c : s.checks) {
      ojson jc;
      jc["name"] = c.name;
      jc["value"] = c.value;
      jc["threshold"] = c.threshold;
      jc["pass"] = c.pass;
      if (!c.detail.empty()) jc["detail"] = c.detail;
      checks.push_back(std::move(jc));
    }
    js["checks"] = std::move(checks);
    if (!s.data.empty()) js["data"] = s.data;
    sections.push_back(std::move(js));
  }
  j["sections"] = std::move(sections);
  return j.dump(2) + "\n";
}

namespace {

std::string csv_cell(const ojson& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.is_null() ? std::string() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string render_csv(const Report& r, const std::string& timestamp) {
  std::ostringstream out;
  out << "# command=" << r.command << " timestamp=" << timestamp << "\n";
  out << "section,check,value,threshold,pass,detail\n";
  for (const auto& s : r.sections) {
    for (const auto& c : s.checks) {
      out << csv_cell(s.name) << ',' << csv_cell(c.name) << ',' << csv_cell(c.value) << ','
          << csv_cell(c.threshold) << ',' << (c.pass ? "true" : "false") << ','
          << csv_cell(c.detail) << "\n";
    }
  }
  for (const auto& s : r.sections) {
    if (!s.data.contains("rows")) continue;
    const ojson& rows = s.data["rows"];
    if (!rows.is_array() || rows.empty()) continue;
    out << "\n# " << s.name << "\n";
    bool first = true;
    for (const auto& [key, v] : rows[0].items()) {
      (void)v;
      out << (first ? "" : ",") << key;
      first = false;
    }
    out << "\n";
    for (const auto& row : rows) {
      first = true;
      for (const auto& [key, v] : row.items()) {
        (void)key;
        out << (first ? "" : ",") << csv_cell(v);
        first = false;
      }
      out << "\n";
    }
  }
  return out.str();
}

std::string render(const Report& r, Format f, const std::string& timestamp) {
  return f == Format::json ? render_json(r, timestamp) : render_csv(r, timestamp);
}

}  // namespace sphere7::cli
