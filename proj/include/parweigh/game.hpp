#pragma once

// One adversarial game: the weigher proposes weighings, the adversary answers
// with a worst-case outcome, and the game ends on an accusation, a forfeit or
// an exhausted budget. Shared by `play` and the HTTP service.

#include <optional>
#include <string>
#include <vector>

#include "parweigh/core.hpp"
#include "parweigh/solve.hpp"

namespace parweigh::game {

enum class Status { kActive, kWon, kLost, kForfeit };

std::string_view to_string(Status s);
std::string_view to_string(solve::AdversaryMode m);
std::optional<solve::AdversaryMode> parse_adversary(std::string_view text);

struct Move {
  ParallelWeighing weighing;
  OutcomeVector outcome;
};

struct Verdict {
  bool won = false;
  // A surviving hypothesis the answer does not match.
  std::optional<Hypothesis> counterexample;
};

enum class HintSource { kSolver, kScheme, kFallback };
std::string_view to_string(HintSource s);

struct Hint {
  ParallelWeighing weighing;
  HintSource source = HintSource::kFallback;
};

// Fewest minutes that resolve the puzzle, nullopt when unknown or unsolvable.
std::optional<int> optimal_minutes(const PuzzleConfig& cfg);
// optimal_minutes, or 1 when there is none.
int default_budget(const PuzzleConfig& cfg);
// kExact when (2k+1)^budget <= solve::kSolverGuard.
solve::AdversaryMode default_adversary(int scales, int budget);

class Game {
 public:
  // cfg.minutes is the budget. An exact adversary beyond the solver guard
  // throws kInstanceTooLarge.
  Game(const PuzzleConfig& cfg, solve::AdversaryMode adversary);

  const PuzzleConfig& config() const { return cfg_; }
  solve::AdversaryMode adversary() const { return adversary_; }
  const KnowledgeState& state() const { return state_; }
  const std::vector<Move>& history() const { return history_; }
  int minutes_used() const { return static_cast<int>(history_.size()); }
  int budget() const { return cfg_.minutes; }
  Status status() const { return status_; }
  const std::optional<Verdict>& verdict() const { return verdict_; }

  // Throws kIllegalWeighing (reason tag set) or kInvalidArgument with reason
  // "not-active" / "budget-exhausted".
  OutcomeVector weigh(const ParallelWeighing& w);
  // Throws kInvalidArgument with reason "not-active", or "missing-label"
  // for find-and-label without a label.
  Verdict answer(CoinId coin, std::optional<Sign> label);
  void forfeit();
  // nullopt once the game is over or the answer is forced.
  std::optional<Hint> hint() const;

 private:
  void require_active() const;

  PuzzleConfig cfg_;
  solve::AdversaryMode adversary_;
  KnowledgeState state_;
  std::vector<Move> history_;
  Status status_ = Status::kActive;
  std::optional<Verdict> verdict_;
};

}  // namespace parweigh::game
