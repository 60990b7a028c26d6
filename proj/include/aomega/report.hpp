#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace aomega {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Ordered list of named checks. Deterministic: no timestamps, no addresses.
class Report {
 public:
  Report() = default;
  explicit Report(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  const std::vector<CheckResult>& checks() const { return checks_; }

  void add(std::string check, bool pass, std::string detail = {}) {
    checks_.push_back({std::move(check), pass, std::move(detail)});
  }
  void merge(const Report& other, const std::string& prefix = {});

  bool passed() const;
  std::size_t failures() const;
  /// First failing check, or nullptr.
  const CheckResult* first_failure() const;

 private:
  std::string name_;
  std::vector<CheckResult> checks_;
};

}  // namespace aomega
