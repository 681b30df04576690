#pragma once

#include <stdexcept>
#include <string>

namespace dqc {

// Error for malformed inputs (configs, specs, grids).  Carries the
// dotted path of the offending field so callers can point at the exact
// entry a user has to fix.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

inline void require(bool condition, const std::string& field,
                    const std::string& message) {
  if (!condition) throw ValidationError(field, message);
}

}  // namespace dqc
