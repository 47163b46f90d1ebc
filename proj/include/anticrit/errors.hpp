#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace anticrit {

enum class GuardKind {
  hermiticity_violation,
  dimension,
  basis,
  index,
  critical_point,
  truncation,
  degeneracy,
  step,
  gap,
  convergence,
};

std::string_view guard_name(GuardKind kind) noexcept;

// Numerical guards signal that the physics refuses an answer at this point
// (gap closed, truncation too small, ...). The remaining kinds are input
// validation failures.
bool is_numerical(GuardKind kind) noexcept;

class GuardError : public std::runtime_error {
 public:
  GuardError(GuardKind kind, const std::string& detail,
             std::optional<double> payload = std::nullopt);

  GuardKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return guard_name(kind_); }
  // Offending quantity, e.g. the gap for DegeneracyGuard.
  std::optional<double> payload() const noexcept { return payload_; }

 private:
  GuardKind kind_;
  std::optional<double> payload_;
};

#define ANTICRIT_GUARD(Name, Kind)                                         \
  class Name : public GuardError {                                         \
   public:                                                                 \
    explicit Name(const std::string& detail,                               \
                  std::optional<double> payload = std::nullopt)            \
        : GuardError(GuardKind::Kind, detail, payload) {}                  \
  };

ANTICRIT_GUARD(HermiticityViolation, hermiticity_violation)
ANTICRIT_GUARD(DimensionGuard, dimension)
ANTICRIT_GUARD(BasisGuard, basis)
ANTICRIT_GUARD(IndexGuard, index)
ANTICRIT_GUARD(CriticalPointGuard, critical_point)
ANTICRIT_GUARD(TruncationGuard, truncation)
ANTICRIT_GUARD(DegeneracyGuard, degeneracy)
ANTICRIT_GUARD(StepGuard, step)
ANTICRIT_GUARD(GapGuard, gap)
ANTICRIT_GUARD(ConvergenceGuard, convergence)

#undef ANTICRIT_GUARD

}  // namespace anticrit
