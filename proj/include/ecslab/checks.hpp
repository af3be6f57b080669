#pragma once

#include <string>
#include <vector>

namespace ecslab {

enum class CheckStatus { Pass, Fail, Warn, Skip };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Warn: return "WARN";
    case CheckStatus::Skip: return "SKIP";
  }
  return "?";
}

struct CheckEntry {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

struct CheckList {
  std::vector<CheckEntry> entries;

  void add(std::string name, CheckStatus status, std::string detail = "") {
    entries.push_back({std::move(name), status, std::move(detail)});
  }
  void add(std::string name, bool ok, std::string detail_on_fail = "") {
    add(std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail,
        ok ? "" : std::move(detail_on_fail));
  }

  bool any_fail() const {
    for (const auto& e : entries)
      if (e.status == CheckStatus::Fail) return true;
    return false;
  }
  bool any_warn() const {
    for (const auto& e : entries)
      if (e.status == CheckStatus::Warn) return true;
    return false;
  }
};

}  // namespace ecslab
