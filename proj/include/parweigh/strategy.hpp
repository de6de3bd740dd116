#pragma once

// Constructive weighing schemes.
//
// Known-potential suspects are paired by potential and each pair split across
// the two pans of one scale, so every tilt outcome keeps at most a
// (2k+1)-th of them. Unknown suspects are loaded so that each scale's tilt
// leaves at most (2k+1)^(m-1) known-potential coins, while the balanced
// outcome keeps no more than the next minute can handle given the real
// coins it then has. Residual states with at most kSolverThreshold suspects
// below the root are handed to the exact solver.

#include "parweigh/core.hpp"
#include "parweigh/solve.hpp"
#include "parweigh/tree.hpp"

namespace parweigh::strategy {

inline constexpr int kSolverThreshold = 30;

// Every suspect must be potentially light or heavy. Throws kUnresolvableState
// when the suspects fit (2k+1)^n but cannot be resolved (e.g. one light and
// one heavy coin with no real coin), kCapacityExceeded when they do not fit.
StrategyTree build_known_potential(const KnowledgeState& state, int scales, int minutes,
                                   Problem problem = Problem::kJustFind);
// Convenience: lights get ids 0.., heavies follow, then `reals` real coins.
StrategyTree build_known_potential(int lights, int heavies, int reals, int scales, int minutes,
                                   Problem problem = Problem::kJustFind);

// Fresh N coins plus N real coins (ids N..2N-1).
StrategyTree build_unlimited(int coins, int scales, int minutes,
                             Problem problem = Problem::kJustFind);

// Fresh N coins, no extra real coins.
StrategyTree build_general(int coins, int scales, int minutes, Problem problem);

// Dispatches on cfg.supply with budget cfg.minutes.
StrategyTree build(const PuzzleConfig& cfg);

// Most coins the scheme resolves in `minutes` starting from all-unknown
// suspects with `reals` real coins.
std::uint64_t scheme_capacity(int scales, int minutes, int reals, Problem problem);

// The scheme's next weighing for a concrete state, using the fewest minutes
// (at most `minutes`) it needs. Throws kCapacityExceeded when it has none.
ParallelWeighing scheme_weighing(const KnowledgeState& state, int scales, int minutes,
                                 Problem problem);

}  // namespace parweigh::strategy
