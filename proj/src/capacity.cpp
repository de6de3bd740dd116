#include "parweigh/capacity.hpp"

#include <string>

namespace parweigh::capacity {
namespace {

void require_args(int scales, int minutes, int min_minutes) {
  if (scales < 1) throw PuzzleError(ErrorCode::kInvalidArgument, "scales must be >= 1");
  if (minutes < min_minutes)
    throw PuzzleError(ErrorCode::kInvalidArgument,
                      "minutes must be >= " + std::to_string(min_minutes));
}

Count checked_mul(Count x, Count y) {
  Count out = 0;
  if (__builtin_mul_overflow(x, y, &out) || out > kMaxCapacity)
    throw PuzzleError(ErrorCode::kRangeExceeded, "capacity exceeds 2^62");
  return out;
}

}  // namespace

Count outcomes_per_run(int scales, int minutes) {
  require_args(scales, minutes, 0);
  Count base = 2 * static_cast<Count>(scales) + 1;
  Count out = 1;
  for (int i = 0; i < minutes; ++i) out = checked_mul(out, base);
  return out;
}

Count known_potential_capacity(int scales, int minutes) { return outcomes_per_run(scales, minutes); }

Count unlimited_supply_by_recursion(int scales, int minutes) {
  require_args(scales, minutes, 1);
  Count k = static_cast<Count>(scales);
  Count u = k + 1;
  for (int n = 2; n <= minutes; ++n) u += checked_mul(k, outcomes_per_run(scales, n - 1));
  return u;
}

Count unlimited_find_label_by_recursion(int scales, int minutes) {
  require_args(scales, minutes, 0);
  if (minutes == 0) return 0;
  Count k = static_cast<Count>(scales);
  Count u = k;
  for (int n = 2; n <= minutes; ++n) u += checked_mul(k, outcomes_per_run(scales, n - 1));
  return u;
}

Count unlimited_supply_capacity(int scales, int minutes) {
  require_args(scales, minutes, 1);
  Count closed = (outcomes_per_run(scales, minutes) + 1) / 2;
  if (closed != unlimited_supply_by_recursion(scales, minutes))
    throw std::logic_error("unlimited-supply recursion disagrees with closed form");
  return closed;
}

Count unlimited_find_label_capacity(int scales, int minutes) {
  require_args(scales, minutes, 0);
  Count closed = (outcomes_per_run(scales, minutes) - 1) / 2;
  if (closed != unlimited_find_label_by_recursion(scales, minutes))
    throw std::logic_error("find-and-label recursion disagrees with closed form");
  return closed;
}

Count just_find_capacity(int scales, int minutes) {
  require_args(scales, minutes, 0);
  if (minutes == 0) return 1;
  return (outcomes_per_run(scales, minutes) + 1) / 2 - static_cast<Count>(scales);
}

Count find_label_capacity(int scales, int minutes) {
  require_args(scales, minutes, 0);
  if (minutes == 0) return 0;
  return (outcomes_per_run(scales, minutes) + 1) / 2 - static_cast<Count>(scales) - 1;
}

Count capacity(const VariantKey& key, int minutes) {
  if (key.potential == Potential::kAllKnown) return known_potential_capacity(key.scales, minutes);
  switch (key.supply) {
    case Supply::Kind::kNone:
      return key.problem == Problem::kJustFind ? just_find_capacity(key.scales, minutes)
                                               : find_label_capacity(key.scales, minutes);
    case Supply::Kind::kUnlimited:
      if (key.problem == Problem::kFindAndLabel)
        return unlimited_find_label_capacity(key.scales, minutes);
      return minutes == 0 ? 1 : unlimited_supply_capacity(key.scales, minutes);
    case Supply::Kind::kFinite:
      break;
  }
  throw PuzzleError(ErrorCode::kNeedsSolver, "finite supply has no closed-form capacity");
}

MinMinutes min_minutes(const PuzzleConfig& cfg) {
  validate_config(cfg);
  if (cfg.supply.kind == Supply::Kind::kFinite)
    throw PuzzleError(ErrorCode::kNeedsSolver,
                      "finite supply of real coins has no closed form; use the solver");
  bool no_supply = cfg.supply.kind == Supply::Kind::kNone;
  if (no_supply && cfg.coins == 2) return Unsolvable{};
  if (no_supply && cfg.coins == 1 && cfg.problem == Problem::kFindAndLabel) return Unsolvable{};
  VariantKey key{cfg.scales, cfg.problem, cfg.supply.kind, Potential::kAllUnknown};
  auto needed = static_cast<Count>(cfg.coins);
  for (int n = 0;; ++n)
    if (capacity(key, n) >= needed) return n;
}

}  // namespace parweigh::capacity
