#include "tomkit/report.hpp"

#include <algorithm>

namespace tomkit {

void ValidationReport::fail(std::string axiom, nlohmann::json witness) {
  violations.push_back({std::move(axiom), std::move(witness)});
}

void ValidationReport::absorb(const ValidationReport& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

bool ValidationReport::has(std::string_view axiom) const { return count(axiom) > 0; }

std::size_t ValidationReport::count(std::string_view axiom) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [&](const Violation& v) { return v.axiom == axiom; }));
}

nlohmann::json ValidationReport::to_json() const {
  nlohmann::json out;
  out["verdict"] = verdict();
  out["violations"] = nlohmann::json::array();
  for (const auto& v : violations) {
    out["violations"].push_back({{"axiom", v.axiom}, {"witness", v.witness}});
  }
  return out;
}

ValidationError::ValidationError(const std::string& what, ValidationReport report)
    : std::runtime_error(what), report_(std::move(report)) {}

}  // namespace tomkit
