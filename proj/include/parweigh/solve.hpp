#pragma once

// Exact minimax solver over class-count states.
//
// A state (a, b, c, r) counts suspects of each class: a unknown (both signs
// possible), b potentially light, c potentially heavy, and r known-real
// coins. Coins of one class are interchangeable, so solvability depends on
// the counts alone. A state is "solvable in m" when some strategy of depth at
// most m forces the answer.

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "parweigh/core.hpp"
#include "parweigh/tree.hpp"

namespace parweigh::solve {

struct CountState {
  int a = 0;  // unknown
  int b = 0;  // potentially light
  int c = 0;  // potentially heavy
  int r = 0;  // known real

  int suspects() const { return a + b + c; }
  int hypotheses() const { return 2 * a + b + c; }
  int total() const { return a + b + c + r; }
  auto operator<=>(const CountState&) const = default;
};

struct PanCounts {
  int unknown = 0;
  int light = 0;
  int heavy = 0;
  int real = 0;

  int size() const { return unknown + light + heavy + real; }
  auto operator<=>(const PanCounts&) const = default;
};

struct CountLoad {
  PanCounts left;
  PanCounts right;

  bool idle() const { return left.size() == 0 && right.size() == 0; }
  auto operator<=>(const CountLoad&) const = default;
};

struct CountWeighing {
  std::vector<CountLoad> scales;

  bool operator==(const CountWeighing&) const = default;
};

// Upper limit (2k+1)^n for max_coins and other exhaustive entry points.
inline constexpr std::uint64_t kSolverGuard = 700;

CountState count_state(const KnowledgeState& s);

bool resolved(CountState s, Problem problem);

// Throws kIllegalWeighing unless pans balance per scale and class totals fit.
void require_legal(CountState s, const CountWeighing& w);

// Class counts after observing `o`. Throws kInfeasibleOutcome when no
// hypothesis survives.
CountState transition(CountState s, const CountWeighing& w, const OutcomeVector& o);

// All legal weighings up to symmetry: per scale left <= right
// lexicographically, scales in nondecreasing order, all-idle excluded.
// Moves that reveal nothing (light v heavy) are kept.
std::vector<CountWeighing> enumerate_weighings(CountState s, int scales);

// Plain recursion over enumerate_weighings, no memo, no pruning. Test oracle
// for small states.
bool solvable_reference(CountState s, int minutes, int scales, Problem problem);

class Solver {
 public:
  struct Options {
    // Reals beyond one per suspect never matter; off only to validate that.
    bool cap_reals = true;
    // Decide known-potential states with a real coin per suspect through
    // their solvable-set frontier instead of the generic search.
    bool frontier = true;
  };

  Solver(int scales, Problem problem) : Solver(scales, problem, Options{}) {}
  Solver(int scales, Problem problem, Options options);

  int scales() const { return scales_; }
  Problem problem() const { return problem_; }

  bool solvable(CountState s, int minutes);
  // Smallest m <= max_minutes with solvable(s, m).
  std::optional<int> min_minutes(CountState s, int max_minutes);
  // First weighing of a depth-<=minutes strategy; nullopt when s is not
  // solvable in `minutes` or is already resolved.
  std::optional<CountWeighing> witness(CountState s, int minutes);

  std::size_t memo_size() const;

 private:
  std::uint64_t key(CountState s, int minutes) const;
  CountState canonical(CountState s) const;
  // Decides a canonical, unresolved, unpruned state; fills `witness` if given.
  bool search(CountState s, int minutes, CountWeighing* witness);

  bool ample(CountState cs) const;
  // Frontier of the ample known-potential states solvable in `minutes`:
  // (x, y) is solvable iff y <= f[x]; f[x] = -1 when no y works.
  std::vector<std::int64_t> frontier(int minutes, int max_x);
  CountWeighing ample_witness(CountState cs, int minutes);

  int scales_;
  Problem problem_;
  Options options_;
  mutable std::mutex mutex_;
  std::unordered_map<std::uint64_t, bool> memo_;
  std::unordered_map<std::uint64_t, CountWeighing> witnesses_;
  std::vector<std::vector<std::int64_t>> frontiers_;  // by minutes
  int frontier_x_ = -1;
};

// Process-wide solver per (scales, problem); thread-safe.
Solver& shared_solver(int scales, Problem problem);

struct MaxCoinsResult {
  int max_coins = 0;
  // Sorted N in [1, (2k+1)^n] with solvable((N,0,0,r0), n).
  std::vector<int> solvable_counts;
  // Every N in [3, max_coins] is solvable, i.e. the solvable set is an
  // interval apart from the small exceptions N = 1, 2.
  bool monotone = true;
};

// Largest N resolvable in n minutes; scans all N up to (2k+1)^n. Throws
// kInstanceTooLarge when (2k+1)^n > kSolverGuard.
MaxCoinsResult max_coins_scan(int scales, int minutes, Problem problem, Supply supply);
int max_coins(int scales, int minutes, Problem problem, Supply supply);

// Real-coin count the solver uses for a fresh N-coin puzzle.
int initial_reals(int coins, Supply supply);

// Places class counts onto concrete ids: per scale left then right, each
// class taken lowest id first.
ParallelWeighing concretize(const CountWeighing& w, const KnowledgeState& s);

// Optimal-depth strategy for a concrete state. Throws kNotSolvable.
StrategyTree extract_tree(const KnowledgeState& s, int minutes, Solver& solver);
// Count-state form: ids assigned unknown, light, heavy, real in that order.
StrategyTree extract_tree(CountState s, int minutes, int scales, Problem problem);
// The concrete state extract_tree(CountState...) assigns ids for.
KnowledgeState assign_ids(CountState s);

enum class AdversaryMode { kExact, kGreedy };

// Worst-case outcome: prefer children not solvable in minutes_left - 1
// (exact mode only), then more remaining suspects, then the smallest vector.
OutcomeVector worst_outcome(const KnowledgeState& s, const ParallelWeighing& w, int minutes_left,
                            AdversaryMode mode, Solver& solver);

}  // namespace parweigh::solve
