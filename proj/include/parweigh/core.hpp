#pragma once

// Semantic model for single-fake-coin puzzles on k parallel balance scales:
// hypotheses, weighings, outcome induction and knowledge-state filtering.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "parweigh/error.hpp"

namespace parweigh {

using CoinId = int;

enum class Problem { kJustFind, kFindAndLabel };

struct Supply {
  enum class Kind { kNone, kFinite, kUnlimited };
  Kind kind = Kind::kNone;
  int count = 0;  // meaningful for kFinite only

  static Supply none() { return {}; }
  static Supply finite(int r) { return r == 0 ? Supply{} : Supply{Kind::kFinite, r}; }
  static Supply unlimited() { return {Kind::kUnlimited, 0}; }

  bool operator==(const Supply&) const = default;
};

struct PuzzleConfig {
  int coins = 1;   // suspect coins, ids 0..coins-1
  int scales = 1;  // k
  Problem problem = Problem::kJustFind;
  Supply supply;
  int minutes = 0;  // budget

  bool operator==(const PuzzleConfig&) const = default;
};

// Number of known-real coin ids appended after the suspects. An unlimited
// supply is materialized as one real coin per suspect, which is all any
// weighing can use.
int materialized_reals(const PuzzleConfig& cfg);
inline int total_coins(const PuzzleConfig& cfg) { return cfg.coins + materialized_reals(cfg); }

// Throws kInvalidArgument unless coins >= 1, scales >= 1, minutes >= 0, r >= 0.
void validate_config(const PuzzleConfig& cfg);

enum class Sign : std::uint8_t { kLight, kHeavy };

constexpr Sign flip(Sign s) { return s == Sign::kLight ? Sign::kHeavy : Sign::kLight; }

struct Hypothesis {
  CoinId coin = 0;
  Sign sign = Sign::kLight;

  auto operator<=>(const Hypothesis&) const = default;
};

enum class CoinClass { kUnknown, kPotentiallyLight, kPotentiallyHeavy, kReal };

std::string_view to_string(Problem p);
std::string_view to_string(Sign s);
std::string_view to_string(CoinClass c);
std::optional<Problem> parse_problem(std::string_view text);
std::optional<Sign> parse_sign(std::string_view text);

struct ScaleLoad {
  std::vector<CoinId> left;
  std::vector<CoinId> right;

  bool idle() const { return left.empty() && right.empty(); }
  bool operator==(const ScaleLoad&) const = default;
};

struct ParallelWeighing {
  std::vector<ScaleLoad> loads;

  int scales() const { return static_cast<int>(loads.size()); }
  bool idle() const;
  bool operator==(const ParallelWeighing&) const = default;

  static ParallelWeighing idle_weighing(int scales) {
    return ParallelWeighing{std::vector<ScaleLoad>(scales)};
  }
};

// Returns the reason tag of the first legality violation, or nullopt.
// Tags: "wrong-scale-count", "pan-size-mismatch", "duplicate-coin", "bad-coin-id".
std::optional<std::string> weighing_violation(const ParallelWeighing& w, int scales,
                                              int total_coins);
// Throwing form of weighing_violation (kIllegalWeighing, reason = tag).
void require_legal(const ParallelWeighing& w, int scales, int total_coins);

// One tilt symbol per scale: '<' left pan lighter, '>' left pan heavier,
// '=' balanced.
class OutcomeVector {
 public:
  OutcomeVector() = default;
  explicit OutcomeVector(std::string symbols);

  static OutcomeVector balanced(int scales) { return OutcomeVector(std::string(scales, '=')); }
  // Returns nullopt unless text is `scales` characters over "<=>".
  static std::optional<OutcomeVector> parse(std::string_view text, int scales);

  const std::string& str() const { return symbols_; }
  int scales() const { return static_cast<int>(symbols_.size()); }
  char operator[](int j) const { return symbols_[j]; }
  int tilted_scales() const;

  auto operator<=>(const OutcomeVector&) const = default;

 private:
  std::string symbols_;
};

class KnowledgeState {
 public:
  // All 2N hypotheses; `reals` known-real coins get ids N..N+reals-1.
  static KnowledgeState fresh(int suspects, int reals = 0);
  static KnowledgeState from_hypotheses(int suspects, int reals,
                                        std::span<const Hypothesis> hypotheses);

  int suspects() const { return suspects_; }
  int total_coins() const { return static_cast<int>(masks_.size()); }

  bool contains(Hypothesis h) const;
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  // Sorted by coin, Light before Heavy.
  std::vector<Hypothesis> hypotheses() const;

  CoinClass classify(CoinId coin) const;
  // Coins (any id) whose classification matches, ascending.
  std::vector<CoinId> coins_of(CoinClass cls) const;
  // Coins that may still be fake.
  int suspect_count() const;

  bool operator==(const KnowledgeState&) const = default;

 private:
  friend KnowledgeState apply_outcome(const KnowledgeState&, const ParallelWeighing&,
                                      const OutcomeVector&);
  friend std::vector<std::pair<OutcomeVector, KnowledgeState>> partition_outcomes(
      const KnowledgeState&, const ParallelWeighing&);

  static constexpr std::uint8_t kLightBit = 1, kHeavyBit = 2;

  int suspects_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint8_t> masks_;  // per coin id, bits for Light/Heavy
};

std::vector<CoinClass> classify(const KnowledgeState& s);

OutcomeVector induced_outcome(Hypothesis h, const ParallelWeighing& w);

// Filters `s` to the hypotheses consistent with `o`. Throws
// kContradictoryOutcome if none survive.
KnowledgeState apply_outcome(const KnowledgeState& s, const ParallelWeighing& w,
                             const OutcomeVector& o);

// Outcomes with a nonempty filter, ascending.
std::vector<OutcomeVector> feasible_outcomes(const KnowledgeState& s, const ParallelWeighing& w);

// feasible_outcomes paired with their filtered states, in one pass.
std::vector<std::pair<OutcomeVector, KnowledgeState>> partition_outcomes(
    const KnowledgeState& s, const ParallelWeighing& w);

// Resolution of a concrete state: the answer is forced.
bool is_resolved(const KnowledgeState& s, Problem problem);

// The forced answer of a resolved state: the coin, plus its sign when only
// one sign survives.
std::pair<CoinId, std::optional<Sign>> forced_answer(const KnowledgeState& s);

}  // namespace parweigh
