#pragma once

// Exhaustive checks of strategies against every fake-coin hypothesis.

#include <string>
#include <utility>
#include <vector>

#include "parweigh/core.hpp"
#include "parweigh/tree.hpp"

namespace parweigh::verify {

struct StaticStrategy {
  std::vector<ParallelWeighing> weighings;

  bool operator==(const StaticStrategy&) const = default;
};

struct Failure {
  Hypothesis hypothesis;
  std::string where;   // node path, e.g. "root/<=/=="
  std::string reason;
};

struct VerificationReport {
  bool legal = true;
  bool correct = false;
  int depth = 0;
  std::vector<std::string> legality_issues;  // "path: reason"
  std::vector<Failure> failures;             // sorted by hypothesis
  std::vector<CoinId> lazy_coins;            // suspects never on a pan
  std::size_t hypotheses_checked = 0;
};

// Structure only: pan sizes, disjointness, coin ids, depth vs budget,
// outcome keys, answer ids.
VerificationReport check_legal(const StrategyTree& t, const PuzzleConfig& cfg);
// Legality plus a walk of each of the 2N hypotheses down the tree.
VerificationReport check_correct(const StrategyTree& t, const PuzzleConfig& cfg);

// Just-find: hypotheses with equal outcome signatures must share a coin.
// Find-and-label: all signatures must differ.
VerificationReport verify_static(const StaticStrategy& ss, const PuzzleConfig& cfg);

// The adaptive tree that performs the same weighings whatever happens. Each
// leaf answers the first surviving hypothesis.
StrategyTree static_to_tree(const StaticStrategy& ss, const PuzzleConfig& cfg);

struct LazyCoinResult {
  int max_static = 0;        // for cfg.problem
  int max_with_lazy = 0;     // best just-find strategy containing a lazy coin
  int max_without_lazy = 0;  // best strategy with every coin weighed
  bool all_maximal_have_lazy = false;
};

// Exhaustive search over static strategies up to coin relabelling and pan
// swaps. Uses cfg.scales, cfg.minutes, cfg.problem and cfg.supply (coins is
// ignored). Throws kInstanceTooLarge when (2k+1)^n > 81 or the balance
// lattice is too big to tabulate.
LazyCoinResult lazy_coin_search(const PuzzleConfig& cfg);

// Every canonical static strategy with no real coins: each coin is a
// distinct placement word, words pairwise not mirror images, every pan
// balanced. Small instances only ((2k+1)^n <= 9).
std::vector<std::pair<StaticStrategy, int>> enumerate_static_strategies(int scales, int minutes);

}  // namespace parweigh::verify
