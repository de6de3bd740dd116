#pragma once

// Closed-form capacities and minimum-minute computations.

#include <cstdint>
#include <variant>

#include "parweigh/core.hpp"

namespace parweigh::capacity {

using Count = std::uint64_t;

enum class Potential { kAllUnknown, kAllKnown };

struct VariantKey {
  int scales = 1;
  Problem problem = Problem::kJustFind;
  Supply::Kind supply = Supply::Kind::kNone;  // kNone or kUnlimited
  Potential potential = Potential::kAllUnknown;
};

// Largest value any capacity returns; beyond it kRangeExceeded is thrown.
inline constexpr Count kMaxCapacity = Count{1} << 62;

// (2k+1)^n with overflow detection.
Count outcomes_per_run(int scales, int minutes);

Count known_potential_capacity(int scales, int minutes);
// Just-find with an unlimited supply of real coins, n >= 1.
Count unlimited_supply_capacity(int scales, int minutes);
// Find-and-label with an unlimited supply, n >= 0.
Count unlimited_find_label_capacity(int scales, int minutes);
Count just_find_capacity(int scales, int minutes);
Count find_label_capacity(int scales, int minutes);

// Dispatch on the variant; n = 0 follows the per-problem conventions.
Count capacity(const VariantKey& key, int minutes);

struct Unsolvable {};
using MinMinutes = std::variant<int, Unsolvable>;

// Smallest budget whose capacity covers cfg.coins. Finite supplies have no
// closed form and throw kNeedsSolver.
MinMinutes min_minutes(const PuzzleConfig& cfg);

// Recurrence forms, used to cross-check the closed forms.
Count unlimited_supply_by_recursion(int scales, int minutes);
Count unlimited_find_label_by_recursion(int scales, int minutes);

}  // namespace parweigh::capacity
