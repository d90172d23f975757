#include "ybmaps/errors.hpp"

namespace ybmaps {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::SingularParameter: return "SingularParameter";
    case ErrorKind::DegeneratePi: return "DegeneratePi";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::NonCommuting: return "NonCommuting";
    case ErrorKind::DegenerateSimilarity: return "DegenerateSimilarity";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::PoleError: return "PoleError";
    case ErrorKind::BranchCut: return "BranchCut";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::ToleranceExceeded: return "ToleranceExceeded";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace ybmaps
