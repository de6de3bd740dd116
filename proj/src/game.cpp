#include "parweigh/game.hpp"

#include "parweigh/capacity.hpp"
#include "parweigh/strategy.hpp"

namespace parweigh::game {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::kActive: return "active";
    case Status::kWon: return "won";
    case Status::kLost: return "lost";
    case Status::kForfeit: return "forfeit";
  }
  return "active";
}

std::string_view to_string(solve::AdversaryMode m) {
  return m == solve::AdversaryMode::kExact ? "exact" : "greedy";
}

std::optional<solve::AdversaryMode> parse_adversary(std::string_view text) {
  if (text == "exact") return solve::AdversaryMode::kExact;
  if (text == "greedy") return solve::AdversaryMode::kGreedy;
  return std::nullopt;
}

std::string_view to_string(HintSource s) {
  switch (s) {
    case HintSource::kSolver: return "solver";
    case HintSource::kScheme: return "scheme";
    case HintSource::kFallback: return "fallback";
  }
  return "fallback";
}

std::optional<int> optimal_minutes(const PuzzleConfig& cfg) {
  if (cfg.supply.kind != Supply::Kind::kFinite) {
    auto m = capacity::min_minutes(cfg);
    if (auto* n = std::get_if<int>(&m)) return *n;
    return std::nullopt;
  }
  if (cfg.coins > strategy::kSolverThreshold) return std::nullopt;
  auto& solver = solve::shared_solver(cfg.scales, cfg.problem);
  return solver.min_minutes({cfg.coins, 0, 0, cfg.supply.count}, 8);
}

int default_budget(const PuzzleConfig& cfg) {
  if (auto m = optimal_minutes(cfg)) return std::max(*m, 1);
  if (cfg.supply.kind == Supply::Kind::kFinite) {
    // Real coins never hurt, so the no-supply optimum is enough.
    PuzzleConfig bare = cfg;
    bare.supply = Supply::none();
    if (auto m = optimal_minutes(bare)) return std::max(*m, 1);
  }
  return 1;
}

solve::AdversaryMode default_adversary(int scales, int budget) {
  std::uint64_t runs = 1;
  for (int i = 0; i < budget; ++i) {
    runs *= static_cast<std::uint64_t>(2 * scales + 1);
    if (runs > solve::kSolverGuard) return solve::AdversaryMode::kGreedy;
  }
  return solve::AdversaryMode::kExact;
}

Game::Game(const PuzzleConfig& cfg, solve::AdversaryMode adversary)
    : cfg_(cfg),
      adversary_(adversary),
      state_(KnowledgeState::fresh(cfg.coins, materialized_reals(cfg))) {
  validate_config(cfg);
  if (adversary == solve::AdversaryMode::kExact &&
      default_adversary(cfg.scales, cfg.minutes) != solve::AdversaryMode::kExact)
    throw PuzzleError(ErrorCode::kInstanceTooLarge,
                      "exact adversary needs (2k+1)^budget <= " +
                          std::to_string(solve::kSolverGuard));
}

void Game::require_active() const {
  if (status_ != Status::kActive)
    throw PuzzleError(ErrorCode::kInvalidArgument,
                      "game is " + std::string(to_string(status_)), "not-active");
}

OutcomeVector Game::weigh(const ParallelWeighing& w) {
  require_active();
  if (minutes_used() >= budget())
    throw PuzzleError(ErrorCode::kInvalidArgument, "no minutes left", "budget-exhausted");
  require_legal(w, cfg_.scales, state_.total_coins());
  auto& solver = solve::shared_solver(cfg_.scales, cfg_.problem);
  int left = budget() - minutes_used();
  auto o = solve::worst_outcome(state_, w, left, adversary_, solver);
  state_ = apply_outcome(state_, w, o);
  history_.push_back({w, o});
  if (minutes_used() == budget() && !is_resolved(state_, cfg_.problem)) {
    status_ = Status::kLost;
    // Against the first surviving answer, another hypothesis survives.
    auto hs = state_.hypotheses();
    Verdict v;
    for (Hypothesis h : hs)
      if (h != hs.front() && (cfg_.problem == Problem::kFindAndLabel || h.coin != hs.front().coin)) {
        v.counterexample = h;
        break;
      }
    verdict_ = v;
  }
  return o;
}

Verdict Game::answer(CoinId coin, std::optional<Sign> label) {
  require_active();
  if (cfg_.problem == Problem::kFindAndLabel && !label)
    throw PuzzleError(ErrorCode::kInvalidArgument, "find-and-label needs a label",
                      "missing-label");
  Verdict v;
  v.won = true;
  for (Hypothesis h : state_.hypotheses()) {
    bool matches =
        h.coin == coin && (cfg_.problem == Problem::kJustFind || h.sign == *label);
    if (!matches) {
      v.won = false;
      v.counterexample = h;
      break;
    }
  }
  status_ = v.won ? Status::kWon : Status::kLost;
  verdict_ = v;
  return v;
}

void Game::forfeit() {
  require_active();
  status_ = Status::kForfeit;
}

std::optional<Hint> Game::hint() const {
  if (status_ != Status::kActive || is_resolved(state_, cfg_.problem)) return std::nullopt;
  int left = budget() - minutes_used();
  auto cs = solve::count_state(state_);
  auto& solver = solve::shared_solver(cfg_.scales, cfg_.problem);
  if (cs.suspects() <= strategy::kSolverThreshold) {
    // Within the budget if possible, else the fastest resolution.
    auto m = solver.min_minutes(cs, std::max(left, 0));
    if (!m) m = solver.min_minutes(cs, left + 3);
    if (m)
      if (auto w = solver.witness(cs, *m)) return Hint{solve::concretize(*w, state_), HintSource::kSolver};
  } else {
    for (int m : {left, left + 3}) {
      try {
        return Hint{strategy::scheme_weighing(state_, cfg_.scales, m, cfg_.problem),
                    HintSource::kScheme};
      } catch (const PuzzleError&) {
      }
    }
  }
  // Nothing resolves in time; at least halve the suspects on the first scale.
  auto w = ParallelWeighing::idle_weighing(cfg_.scales);
  auto suspects = state_.coins_of(CoinClass::kUnknown);
  for (auto cls : {CoinClass::kPotentiallyLight, CoinClass::kPotentiallyHeavy})
    for (CoinId c : state_.coins_of(cls)) suspects.push_back(c);
  std::size_t half = suspects.size() / 2;
  for (std::size_t i = 0; i < half; ++i) w.loads[0].left.push_back(suspects[i]);
  for (std::size_t i = half; i < 2 * half; ++i) w.loads[0].right.push_back(suspects[i]);
  if (half == 0 && !suspects.empty()) {
    auto reals = state_.coins_of(CoinClass::kReal);
    if (!reals.empty()) w.loads[0] = {{suspects[0]}, {reals[0]}};
  }
  return Hint{w, HintSource::kFallback};
}

}  // namespace parweigh::game
