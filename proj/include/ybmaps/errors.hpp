#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ybmaps {

enum class ErrorKind {
  SingularMatrix,
  SingularParameter,
  DegeneratePi,
  DegenerateDenominator,
  NonCommuting,
  DegenerateSimilarity,
  DomainError,
  PoleError,
  BranchCut,
  StepTooLarge,
  ToleranceExceeded,
  ConfigError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` carries the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ybmaps
