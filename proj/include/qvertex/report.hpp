#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace qv {

struct Check {
  std::string name;
  bool pass = false;
  std::string witness;  // empty on success
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  int n = 0;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Check> checks;
  double elapsed = 0;  // seconds

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }
};

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace qv
