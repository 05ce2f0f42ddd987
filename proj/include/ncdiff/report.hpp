#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace ncdiff {

/// A single verification record. `pass`/`fail` are asserted properties;
/// `recorded` marks outcomes that are logged rather than asserted (searches
/// and readings left open by the underlying theory).
struct Check {
  enum class Status { pass, fail, recorded };

  std::string id;
  Status status = Status::pass;
  nlohmann::json details = nlohmann::json::object();

  static Check passed(std::string id, nlohmann::json details = nlohmann::json::object()) {
    return {std::move(id), Status::pass, std::move(details)};
  }
  static Check failed(std::string id, nlohmann::json details = nlohmann::json::object()) {
    return {std::move(id), Status::fail, std::move(details)};
  }
  static Check recorded(std::string id, nlohmann::json details = nlohmann::json::object()) {
    return {std::move(id), Status::recorded, std::move(details)};
  }
  static Check from_bool(std::string id, bool ok, nlohmann::json details = nlohmann::json::object()) {
    return ok ? passed(std::move(id), std::move(details)) : failed(std::move(id), std::move(details));
  }
};

inline const char* to_string(Check::Status s) {
  switch (s) {
    case Check::Status::pass: return "pass";
    case Check::Status::fail: return "fail";
    case Check::Status::recorded: return "recorded";
  }
  return "?";
}

struct Report {
  std::string command;
  std::vector<Check> checks;
  nlohmann::json tables = nlohmann::json::object();

  void add(Check c) { checks.push_back(std::move(c)); }

  void sort_checks() {
    std::stable_sort(checks.begin(), checks.end(),
                     [](const Check& a, const Check& b) { return a.id < b.id; });
  }

  bool all_passed() const {
    for (const auto& c : checks)
      if (c.status == Check::Status::fail) return false;
    return true;
  }

  int exit_status() const { return all_passed() ? 0 : 1; }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["command"] = command;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json jc;
      jc["id"] = c.id;
      jc["status"] = to_string(c.status);
      if (!c.details.empty()) jc["details"] = c.details;
      arr.push_back(jc);
    }
    j["checks"] = arr;
    if (!tables.empty()) j["tables"] = tables;
    j["exit_status"] = exit_status();
    return j;
  }

  void print_human(std::ostream& os) const {
    for (const auto& c : checks) {
      os << "[" << to_string(c.status) << "] " << c.id;
      if (!c.details.empty()) os << "  " << c.details.dump();
      os << "\n";
    }
    if (!tables.empty()) os << "tables: " << tables.dump(2) << "\n";
    os << (all_passed() ? "all checks passed" : "FAILURES present") << "\n";
  }
};

}  // namespace ncdiff
