#include "parweigh/strategy.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "parweigh/capacity.hpp"

namespace parweigh::strategy {
namespace {

using capacity::Count;

Count leftover_capacity(int scales, int minutes, Problem problem) {
  if (problem == Problem::kFindAndLabel) return capacity::unlimited_find_label_capacity(scales, minutes);
  return minutes == 0 ? 1 : capacity::unlimited_supply_capacity(scales, minutes);
}

[[noreturn]] void exceeded(const std::string& what) {
  throw PuzzleError(ErrorCode::kCapacityExceeded, what);
}

class Builder {
 public:
  Builder(int scales, Problem problem)
      : scales_(scales), problem_(problem), solver_(solve::shared_solver(scales, problem)) {}

  StrategyTree node(const KnowledgeState& s, int minutes, bool root) {
    if (is_resolved(s, problem_)) {
      auto [coin, sign] = forced_answer(s);
      return make_answer(coin, sign);
    }
    auto cs = solve::count_state(s);
    if (!root && cs.suspects() <= kSolverThreshold) return from_solver(s, cs, minutes);
    try {
      auto [w, used] = scheme(s, cs, minutes);
      return expand(s, w, used);
    } catch (const PuzzleError&) {
      if (cs.suspects() > kSolverThreshold) throw;
      return from_solver(s, cs, minutes);
    }
  }

  // Weighing plus the minutes the scheme budgets for the subtree.
  std::pair<ParallelWeighing, int> scheme(const KnowledgeState& s, solve::CountState cs,
                                          int minutes) {
    if (cs.a == 0) {
      int m = 0;
      while (capacity::known_potential_capacity(scales_, m) < static_cast<Count>(cs.suspects()))
        if (++m > minutes) exceeded("known-potential suspects exceed (2k+1)^n");
      return {known_scheme(s, m), m};
    }
    if (cs.b + cs.c != 0) exceeded("mixed unknown and known-potential suspects");
    for (int m = 0; m <= minutes; ++m)
      if (scheme_capacity(scales_, m, cs.r, problem_) >= static_cast<Count>(cs.a))
        return {unknown_scheme(s, cs, m), m};
    exceeded("unknown suspects exceed the scheme capacity");
  }

 private:
  StrategyTree from_solver(const KnowledgeState& s, solve::CountState cs, int minutes) {
    if (!solver_.solvable(cs, minutes))
      exceeded("residual state not solvable in " + std::to_string(minutes) + " minutes");
    return solve::extract_tree(s, minutes, solver_);
  }

  StrategyTree expand(const KnowledgeState& s, const ParallelWeighing& w, int minutes) {
    WeighNode node;
    node.weighing = w;
    for (auto& [outcome, child] : partition_outcomes(s, w))
      node.children.push_back({outcome, this->node(child, minutes - 1, false)});
    return StrategyNode{std::move(node)};
  }

  // Pairs of equal potential split across the pans of one scale; each tilt
  // cell and the leftover get about a (2k+1)-th of the suspects.
  ParallelWeighing known_scheme(const KnowledgeState& s, int minutes) {
    if (minutes == 0) exceeded("no minutes left");
    auto lights = s.coins_of(CoinClass::kPotentiallyLight);
    auto heavies = s.coins_of(CoinClass::kPotentiallyHeavy);
    const Count cell_cap = capacity::known_potential_capacity(scales_, minutes - 1);
    const int total = static_cast<int>(lights.size() + heavies.size());
    const int target = (total + 2 * scales_) / (2 * scales_ + 1);
    std::size_t next_light = 0, next_heavy = 0;
    auto w = ParallelWeighing::idle_weighing(scales_);
    for (auto& load : w.loads) {
      int light_pairs = std::min<int>((lights.size() - next_light) / 2, target);
      int heavy_pairs = std::min<int>((heavies.size() - next_heavy) / 2, target - light_pairs);
      for (int i = 0; i < light_pairs; ++i) load.left.push_back(lights[next_light++]);
      for (int i = 0; i < light_pairs; ++i) load.right.push_back(lights[next_light++]);
      for (int i = 0; i < heavy_pairs; ++i) load.left.push_back(heavies[next_heavy++]);
      for (int i = 0; i < heavy_pairs; ++i) load.right.push_back(heavies[next_heavy++]);
    }
    Count rest = (lights.size() - next_light) + (heavies.size() - next_heavy);
    if (w.idle() || rest > cell_cap) exceeded("pairing leaves too many coins aside");
    return w;
  }

  // Unknown suspects, fewest on the scales such that the balanced outcome
  // stays within what the next minute handles.
  ParallelWeighing unknown_scheme(const KnowledgeState& s, solve::CountState cs, int minutes) {
    if (minutes == 0) exceeded("no minutes left");
    auto unknown = s.coins_of(CoinClass::kUnknown);
    auto reals = s.coins_of(CoinClass::kReal);
    const int n = cs.a;
    const Count rest_cap = leftover_capacity(scales_, minutes - 1, problem_);
    int first = static_cast<Count>(n) > rest_cap ? n - static_cast<int>(rest_cap) : 0;
    for (int weighed = std::max(first, 1); weighed <= n; ++weighed) {
      int rest = n - weighed;
      Count rest_limit = scheme_capacity(scales_, minutes - 1, cs.r + weighed, problem_);
      if (static_cast<Count>(rest) > rest_limit) continue;
      if (auto w = place_unknowns(unknown, reals, weighed, minutes)) return *w;
    }
    exceeded("cannot place unknown coins");
  }

  // Loads `count` unknowns, at most (2k+1)^(m-1) per scale. Against real
  // coins when there are enough, otherwise split across the pans with one
  // real coin evening an odd scale.
  std::optional<ParallelWeighing> place_unknowns(const std::vector<CoinId>& unknown,
                                                 const std::vector<CoinId>& reals, int count,
                                                 int minutes) {
    const int per_scale =
        static_cast<int>(std::min<Count>(capacity::known_potential_capacity(scales_, minutes - 1),
                                         static_cast<Count>(count)));
    auto w = ParallelWeighing::idle_weighing(scales_);
    std::size_t next_unknown = 0, next_real = 0;
    int left_to_place = count;
    bool against_reals = static_cast<int>(reals.size()) >= count;
    for (auto& load : w.loads) {
      int u = std::min(per_scale, left_to_place);
      if (u == 0) break;
      if (against_reals) {
        for (int i = 0; i < u; ++i) load.left.push_back(unknown[next_unknown++]);
        for (int i = 0; i < u; ++i) load.right.push_back(reals[next_real++]);
      } else {
        if (u % 2 == 1 && next_real >= reals.size()) --u;
        if (u == 0) continue;
        int left = (u + 1) / 2, right = u / 2;
        for (int i = 0; i < left; ++i) load.left.push_back(unknown[next_unknown++]);
        for (int i = 0; i < right; ++i) load.right.push_back(unknown[next_unknown++]);
        if (left != right) load.right.push_back(reals[next_real++]);
      }
      left_to_place -= u;
    }
    if (left_to_place > 0) return std::nullopt;
    return w;
  }

  int scales_;
  Problem problem_;
  solve::Solver& solver_;
};

void require_positive(int coins, int scales, int minutes) {
  if (coins < 1 || scales < 1 || minutes < 0)
    throw PuzzleError(ErrorCode::kInvalidArgument, "coins and scales must be >= 1, minutes >= 0");
}

}  // namespace

Count scheme_capacity(int scales, int minutes, int reals, Problem problem) {
  if (minutes == 0) return problem == Problem::kJustFind ? 1 : 0;
  Count per_scale = capacity::known_potential_capacity(scales, minutes - 1);
  Count odd_ready = static_cast<Count>(std::min(reals, scales));
  Count loaded = odd_ready * per_scale + (static_cast<Count>(scales) - odd_ready) * (per_scale - 1);
  return loaded + leftover_capacity(scales, minutes - 1, problem);
}

StrategyTree build_known_potential(const KnowledgeState& state, int scales, int minutes,
                                   Problem problem) {
  auto cs = solve::count_state(state);
  if (cs.a != 0)
    throw PuzzleError(ErrorCode::kInvalidArgument, "state has coins of unknown potential");
  if (static_cast<Count>(cs.suspects()) > capacity::known_potential_capacity(scales, minutes))
    exceeded("suspects exceed (2k+1)^n");
  try {
    return Builder(scales, problem).node(state, minutes, true);
  } catch (const PuzzleError& e) {
    if (e.code() != ErrorCode::kCapacityExceeded) throw;
    throw PuzzleError(ErrorCode::kUnresolvableState,
                      "known-potential state cannot be resolved in " + std::to_string(minutes) +
                          " minutes with " + std::to_string(cs.r) + " real coins");
  }
}

StrategyTree build_known_potential(int lights, int heavies, int reals, int scales, int minutes,
                                   Problem problem) {
  return build_known_potential(solve::assign_ids({0, lights, heavies, reals}), scales, minutes,
                               problem);
}

StrategyTree build_unlimited(int coins, int scales, int minutes, Problem problem) {
  require_positive(coins, scales, minutes);
  capacity::VariantKey key{scales, problem, Supply::Kind::kUnlimited};
  if (static_cast<Count>(coins) > capacity::capacity(key, minutes))
    exceeded(std::to_string(coins) + " coins exceed the unlimited-supply capacity");
  return Builder(scales, problem).node(KnowledgeState::fresh(coins, coins), minutes, true);
}

StrategyTree build_general(int coins, int scales, int minutes, Problem problem) {
  require_positive(coins, scales, minutes);
  if (coins == 2)
    throw PuzzleError(ErrorCode::kTwoCoinException, "the fake among 2 coins cannot be identified");
  if (problem == Problem::kFindAndLabel && coins == 1)
    throw PuzzleError(ErrorCode::kUnresolvableState,
                      "a lone coin cannot be labelled without a real coin");
  capacity::VariantKey key{scales, problem, Supply::Kind::kNone};
  if (static_cast<Count>(coins) > capacity::capacity(key, minutes))
    exceeded(std::to_string(coins) + " coins exceed the capacity for " + std::to_string(minutes) +
             " minutes");
  return Builder(scales, problem).node(KnowledgeState::fresh(coins), minutes, true);
}

StrategyTree build(const PuzzleConfig& cfg) {
  validate_config(cfg);
  switch (cfg.supply.kind) {
    case Supply::Kind::kNone: return build_general(cfg.coins, cfg.scales, cfg.minutes, cfg.problem);
    case Supply::Kind::kUnlimited:
      return build_unlimited(cfg.coins, cfg.scales, cfg.minutes, cfg.problem);
    case Supply::Kind::kFinite: break;
  }
  return Builder(cfg.scales, cfg.problem)
      .node(KnowledgeState::fresh(cfg.coins, cfg.supply.count), cfg.minutes, true);
}

ParallelWeighing scheme_weighing(const KnowledgeState& state, int scales, int minutes,
                                 Problem problem) {
  Builder builder(scales, problem);
  return builder.scheme(state, solve::count_state(state), minutes).first;
}

}  // namespace parweigh::strategy
