#pragma once

namespace negabeta {

/// Selects the serial reference path or the OpenMP kernel for operations
/// that have both.
enum class Exec { Serial, Parallel };

inline constexpr long kDefaultStepBudget = 10000;
inline constexpr long kDefaultClosureCap = 1000000;

/// Iteration budget: NEGABETA_STEP_BUDGET if set to a positive integer,
/// otherwise `fallback`.
long step_budget(long fallback = kDefaultStepBudget);

}  // namespace negabeta
