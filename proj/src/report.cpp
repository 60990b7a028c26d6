#include "aomega/report.hpp"

namespace aomega {

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& c : other.checks_) checks_.push_back({prefix + c.name, c.pass, c.detail});
}

bool Report::passed() const { return failures() == 0; }

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks_)
    if (!c.pass) ++n;
  return n;
}

const CheckResult* Report::first_failure() const {
  for (const auto& c : checks_)
    if (!c.pass) return &c;
  return nullptr;
}

}  // namespace aomega
