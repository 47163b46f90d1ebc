#include "anticrit/errors.hpp"

namespace anticrit {

std::string_view guard_name(GuardKind kind) noexcept {
  switch (kind) {
    case GuardKind::hermiticity_violation: return "HermiticityViolation";
    case GuardKind::dimension: return "DimensionGuard";
    case GuardKind::basis: return "BasisGuard";
    case GuardKind::index: return "IndexGuard";
    case GuardKind::critical_point: return "CriticalPointGuard";
    case GuardKind::truncation: return "TruncationGuard";
    case GuardKind::degeneracy: return "DegeneracyGuard";
    case GuardKind::step: return "StepGuard";
    case GuardKind::gap: return "GapGuard";
    case GuardKind::convergence: return "ConvergenceGuard";
  }
  return "GuardError";
}

bool is_numerical(GuardKind kind) noexcept {
  switch (kind) {
    case GuardKind::critical_point:
    case GuardKind::truncation:
    case GuardKind::degeneracy:
    case GuardKind::step:
    case GuardKind::gap:
    case GuardKind::convergence:
      return true;
    default:
      return false;
  }
}

GuardError::GuardError(GuardKind kind, const std::string& detail,
                       std::optional<double> payload)
    : std::runtime_error(std::string(guard_name(kind)) + ": " + detail),
      kind_(kind),
      payload_(payload) {}

}  // namespace anticrit
