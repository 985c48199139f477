#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace tomkit {

struct Violation {
  std::string axiom;
  nlohmann::json witness;
};

/// Outcome of an axiom audit. The verdict is true iff nothing was violated.
struct ValidationReport {
  std::vector<Violation> violations;

  bool verdict() const noexcept { return violations.empty(); }
  void fail(std::string axiom, nlohmann::json witness = nlohmann::json::object());
  void absorb(const ValidationReport& other);
  bool has(std::string_view axiom) const;
  std::size_t count(std::string_view axiom) const;
  nlohmann::json to_json() const;
};

/// Thrown when an operation's input fails the validation it presupposes, or
/// when a postcondition that the theory guarantees does not hold.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

}  // namespace tomkit
