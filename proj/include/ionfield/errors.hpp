#pragma once

#include <stdexcept>
#include <string>

namespace ionfield {

/// Invalid user-facing input. `field()` names the offending parameter using
/// the dotted config path (e.g. `grid.N`) when one exists.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A numerical invariant broke while the scheme was running (negative cell
/// after a CFL-limited step, non-finite values, ...).
class SchemeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ionfield
