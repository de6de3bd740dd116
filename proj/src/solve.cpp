#include "parweigh/solve.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <map>
#include <string>

#include "parweigh/capacity.hpp"

namespace parweigh::solve {
namespace {

constexpr int kInf = INT_MAX / 4;
constexpr int kFieldBits = 13;
constexpr int kFieldMax = (1 << kFieldBits) - 1;

// (2k+1)^m, saturating well above any coin count we handle.
std::int64_t outcome_bound(int scales, int minutes) {
  std::int64_t out = 1;
  for (int i = 0; i < minutes; ++i) {
    out *= 2 * scales + 1;
    if (out > (std::int64_t{1} << 40)) return std::int64_t{1} << 40;
  }
  return out;
}

CountState flipped(CountState s) { return {s.a, s.c, s.b, s.r}; }

PanCounts flipped(PanCounts p) { return {p.unknown, p.heavy, p.light, p.real}; }

CountWeighing flipped(const CountWeighing& w) {
  CountWeighing out = w;
  for (auto& load : out.scales) {
    load.left = flipped(load.left);
    load.right = flipped(load.right);
  }
  return out;
}

PanCounts operator+(PanCounts x, PanCounts y) {
  return {x.unknown + y.unknown, x.light + y.light, x.heavy + y.heavy, x.real + y.real};
}

bool fits(PanCounts used, CountState s) {
  return used.unknown <= s.a && used.light <= s.b && used.heavy <= s.c && used.real <= s.r;
}

// Child state when scale `load` tips with its left pan lighter.
CountState left_lighter_child(CountState s, const CountLoad& load) {
  int light = load.left.unknown + load.left.light;
  int heavy = load.right.unknown + load.right.heavy;
  return {0, light, heavy, s.total() - light - heavy};
}

// Single-scale canonical loads: left <= right, idle included.
std::vector<CountLoad> single_scale_loads(CountState s) {
  std::vector<CountLoad> out;
  for (int la = 0; la <= s.a; ++la)
    for (int lb = 0; lb <= s.b; ++lb)
      for (int lc = 0; lc <= s.c; ++lc)
        for (int lr = 0; lr <= s.r; ++lr) {
          PanCounts left{la, lb, lc, lr};
          for (int ra = 0; ra <= s.a - la; ++ra)
            for (int rb = 0; rb <= s.b - lb; ++rb)
              for (int rc = 0; rc <= s.c - lc; ++rc) {
                int rr = left.size() - ra - rb - rc;
                if (rr < 0 || rr > s.r - lr) continue;
                PanCounts right{ra, rb, rc, rr};
                if (right < left) continue;
                out.push_back({left, right});
              }
        }
  std::sort(out.begin(), out.end());
  return out;
}

void extend_weighings(CountState s, int scales, const std::vector<CountLoad>& loads,
                      std::size_t first, PanCounts used, CountWeighing& partial,
                      std::vector<CountWeighing>& out) {
  if (static_cast<int>(partial.scales.size()) == scales) {
    bool all_idle = std::all_of(partial.scales.begin(), partial.scales.end(),
                                [](const CountLoad& l) { return l.idle(); });
    if (!all_idle) out.push_back(partial);
    return;
  }
  for (std::size_t i = first; i < loads.size(); ++i) {
    PanCounts next = used + loads[i].left + loads[i].right;
    if (!fits(next, s)) continue;
    partial.scales.push_back(loads[i]);
    extend_weighings(s, scales, loads, i, next, partial, out);
    partial.scales.pop_back();
  }
}

std::vector<OutcomeVector> single_tilt_outcomes(int scales) {
  std::vector<OutcomeVector> out{OutcomeVector::balanced(scales)};
  for (int j = 0; j < scales; ++j)
    for (char sym : {'<', '>'}) {
      std::string v(scales, '=');
      v[j] = sym;
      out.emplace_back(std::move(v));
    }
  std::sort(out.begin(), out.end());
  return out;
}

using Frontier = std::vector<std::int64_t>;

constexpr std::int64_t kFrontierCap = std::int64_t{1} << 40;

// Frontier of the Minkowski sum of two down-sets.
Frontier minkowski(const Frontier& f, const Frontier& g) {
  Frontier out(f.size(), -1);
  for (std::size_t x1 = 0; x1 < f.size() && f[x1] >= 0; ++x1)
    for (std::size_t x2 = 0; x1 + x2 < out.size() && x2 < g.size() && g[x2] >= 0; ++x2)
      out[x1 + x2] = std::min(kFrontierCap, std::max(out[x1 + x2], f[x1] + g[x2]));
  return out;
}

Frontier origin_only(std::size_t size) {
  Frontier out(size, -1);
  out[0] = 0;
  return out;
}

}  // namespace

CountState count_state(const KnowledgeState& s) {
  CountState out;
  for (CoinId c = 0; c < s.total_coins(); ++c) {
    switch (s.classify(c)) {
      case CoinClass::kUnknown: ++out.a; break;
      case CoinClass::kPotentiallyLight: ++out.b; break;
      case CoinClass::kPotentiallyHeavy: ++out.c; break;
      case CoinClass::kReal: ++out.r; break;
    }
  }
  return out;
}

bool resolved(CountState s, Problem problem) {
  if (problem == Problem::kFindAndLabel) return s.a == 0 && s.b + s.c == 1;
  return (s.a == 1 && s.b + s.c == 0) || (s.a == 0 && s.b + s.c == 1);
}

void require_legal(CountState s, const CountWeighing& w) {
  PanCounts used;
  for (const auto& load : w.scales) {
    if (load.left.size() != load.right.size())
      throw PuzzleError(ErrorCode::kIllegalWeighing, "pan sizes differ", "pan-size-mismatch");
    used = used + load.left + load.right;
  }
  if (!fits(used, s))
    throw PuzzleError(ErrorCode::kIllegalWeighing, "weighing uses more coins than the state has",
                      "bad-coin-id");
}

CountState transition(CountState s, const CountWeighing& w, const OutcomeVector& o) {
  require_legal(s, w);
  if (o.scales() != static_cast<int>(w.scales.size()))
    throw PuzzleError(ErrorCode::kInvalidArgument, "outcome length does not match scale count");
  CountState out;
  if (o.tilted_scales() > 1)
    throw PuzzleError(ErrorCode::kInfeasibleOutcome, "at most one scale can tip");
  if (o.tilted_scales() == 0) {
    PanCounts used;
    for (const auto& load : w.scales) used = used + load.left + load.right;
    out = {s.a - used.unknown, s.b - used.light, s.c - used.heavy, 0};
    out.r = s.total() - out.suspects();
  } else {
    int j = 0;
    while (o[j] == '=') ++j;
    const auto& load = w.scales[j];
    CountLoad mirrored{load.right, load.left};
    out = left_lighter_child(s, o[j] == '<' ? load : mirrored);
  }
  if (out.hypotheses() == 0)
    throw PuzzleError(ErrorCode::kInfeasibleOutcome,
                      "outcome " + o.str() + " leaves no consistent hypothesis");
  return out;
}

std::vector<CountWeighing> enumerate_weighings(CountState s, int scales) {
  std::vector<CountWeighing> out;
  auto loads = single_scale_loads(s);
  CountWeighing partial;
  extend_weighings(s, scales, loads, 0, PanCounts{}, partial, out);
  return out;
}

bool solvable_reference(CountState s, int minutes, int scales, Problem problem) {
  if (resolved(s, problem)) return true;
  if (minutes == 0) return false;
  auto outcomes = single_tilt_outcomes(scales);
  for (const auto& w : enumerate_weighings(s, scales)) {
    bool all_ok = true;
    for (const auto& o : outcomes) {
      CountState child;
      try {
        child = transition(s, w, o);
      } catch (const PuzzleError& e) {
        if (e.code() == ErrorCode::kInfeasibleOutcome) continue;
        throw;
      }
      if (!solvable_reference(child, minutes - 1, scales, problem)) {
        all_ok = false;
        break;
      }
    }
    if (all_ok) return true;
  }
  return false;
}

Solver::Solver(int scales, Problem problem, Options options)
    : scales_(scales), problem_(problem), options_(options) {
  if (scales < 1) throw PuzzleError(ErrorCode::kInvalidArgument, "scales must be >= 1");
}

CountState Solver::canonical(CountState s) const {
  if (s.b > s.c) s = flipped(s);
  if (options_.cap_reals) s.r = std::min(s.r, s.suspects());
  return s;
}

std::uint64_t Solver::key(CountState s, int minutes) const {
  if (s.a > kFieldMax || s.b > kFieldMax || s.c > kFieldMax || s.r > kFieldMax || minutes > 63)
    throw PuzzleError(ErrorCode::kInstanceTooLarge, "state too large for the solver");
  auto u = [](int v) { return static_cast<std::uint64_t>(v); };
  return u(s.a) | u(s.b) << kFieldBits | u(s.c) << (2 * kFieldBits) |
         u(s.r) << (3 * kFieldBits) | u(minutes) << (4 * kFieldBits);
}

std::size_t Solver::memo_size() const {
  std::lock_guard lock(mutex_);
  return memo_.size();
}

bool Solver::solvable(CountState s, int minutes) {
  if (s.a < 0 || s.b < 0 || s.c < 0 || s.r < 0 || minutes < 0)
    throw PuzzleError(ErrorCode::kInvalidArgument, "negative count or minutes");
  if (s.hypotheses() == 0)
    throw PuzzleError(ErrorCode::kInvalidArgument, "state has no hypotheses");
  if (resolved(s, problem_)) return true;
  if (minutes == 0) return false;
  // Each leaf names one coin (and, for labelling, one hypothesis).
  std::int64_t leaves = outcome_bound(scales_, minutes);
  if (s.suspects() > leaves) return false;
  if (problem_ == Problem::kFindAndLabel && s.hypotheses() > leaves) return false;

  CountState cs = canonical(s);
  if (ample(cs)) return cs.c <= frontier(minutes, cs.b)[cs.b];
  auto k = key(cs, minutes);
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
  }
  bool value = search(cs, minutes, nullptr);
  std::lock_guard lock(mutex_);
  memo_.emplace(k, value);
  return value;
}

std::optional<int> Solver::min_minutes(CountState s, int max_minutes) {
  for (int m = 0; m <= max_minutes; ++m)
    if (solvable(s, m)) return m;
  return std::nullopt;
}

std::optional<CountWeighing> Solver::witness(CountState s, int minutes) {
  if (resolved(s, problem_) || !solvable(s, minutes)) return std::nullopt;
  bool flip = s.b > s.c;
  CountState cs = canonical(s);
  auto k = key(cs, minutes);
  std::optional<CountWeighing> found;
  {
    std::lock_guard lock(mutex_);
    if (auto it = witnesses_.find(k); it != witnesses_.end()) found = it->second;
  }
  if (!found && ample(cs)) {
    found = ample_witness(cs, minutes);
  } else if (!found) {
    CountWeighing w;
    if (!search(cs, minutes, &w)) throw std::logic_error("memo claimed solvable, search disagrees");
    std::lock_guard lock(mutex_);
    found = witnesses_.emplace(k, std::move(w)).first->second;
  }
  // Reals were capped for the search; the result never uses more than that.
  return flip ? flipped(*found) : *found;
}

bool Solver::ample(CountState cs) const {
  return options_.frontier && cs.a == 0 && cs.r >= cs.b + cs.c;
}

// With a real coin per suspect, a known-potential state (0, x, y) only
// matters through (x, y), and its solvable set is a down-set: dropping a
// hypothesis never hurts. A weighing splits the suspects into 2k+1 cells
// (each scale's two tilt outcomes plus the balanced one), every pair of
// cells being realizable on one scale with reals padding the lighter pan.
// So the solvable set at m is the (2k+1)-fold Minkowski sum of the set at
// m-1, which frontiers represent exactly.
std::vector<std::int64_t> Solver::frontier(int minutes, int max_x) {
  std::lock_guard lock(mutex_);
  if (frontier_x_ < max_x || static_cast<int>(frontiers_.size()) <= minutes) {
    int width = std::max({max_x, frontier_x_, 1});
    int levels = std::max(minutes + 1, static_cast<int>(frontiers_.size()));
    std::vector<Frontier> fresh;
    Frontier base(width + 1, -1);
    base[0] = 1;  // (0,1) and (1,0) are resolved
    base[1] = 0;
    fresh.push_back(std::move(base));
    for (int m = 1; m < levels; ++m) {
      Frontier acc = origin_only(width + 1);
      for (int i = 0; i < 2 * scales_ + 1; ++i) acc = minkowski(acc, fresh.back());
      fresh.push_back(std::move(acc));
    }
    frontiers_ = std::move(fresh);
    frontier_x_ = width;
  }
  return frontiers_[minutes];
}

CountWeighing Solver::ample_witness(CountState cs, int minutes) {
  const int parts = 2 * scales_ + 1;
  Frontier cell = frontier(minutes - 1, cs.b);
  cell.resize(cs.b + 1);
  // reach[j] = frontier of sums of j cells.
  std::vector<Frontier> reach{origin_only(cs.b + 1)};
  for (int j = 1; j < parts; ++j) reach.push_back(minkowski(reach.back(), cell));

  std::vector<std::pair<int, int>> cells;
  int x_left = cs.b;
  std::int64_t y_left = cs.c;
  for (int j = parts; j >= 1; --j) {
    const Frontier& rest = reach[j - 1];
    bool placed = false;
    for (int x = x_left; x >= 0 && !placed; --x) {
      if (cell[x] < 0) continue;
      std::int64_t y = std::min(y_left, cell[x]);
      std::int64_t need = rest[x_left - x];
      if (need < 0 || y_left - y > need) continue;
      cells.emplace_back(x, static_cast<int>(y));
      x_left -= x;
      y_left -= y;
      placed = true;
    }
    if (!placed) throw std::logic_error("frontier decomposition failed");
  }

  CountWeighing w;
  for (int j = 0; j < scales_; ++j) {
    auto [x1, y1] = cells[2 * j];      // left pan lighter: left lights, right heavies
    auto [x2, y2] = cells[2 * j + 1];  // left pan heavier: right lights, left heavies
    int left = x1 + y2, right = x2 + y1;
    int reals = std::abs(left - right);
    CountLoad load{{0, x1, y2, left < right ? reals : 0}, {0, x2, y1, left < right ? 0 : reals}};
    w.scales.push_back(load);
  }
  std::stable_sort(w.scales.begin(), w.scales.end(), [](const CountLoad& x, const CountLoad& y) {
    int sx = x.left.size(), sy = y.left.size();
    if (sx != sy) return sx > sy;
    return y < x;
  });
  return w;
}

// The weighing decomposes per scale: a scale's two tilt children depend only
// on its own load, while the balanced child depends on the class totals of
// all loads. So first collect, per class total (A, B, C), the cheapest (in
// real coins) single-scale load whose tilt children are solvable, then
// combine k such loads by a small knapsack and test the balanced child.
bool Solver::search(CountState s, int minutes, CountWeighing* witness) {
  const int total = s.total();
  const int child_minutes = minutes - 1;
  const std::int64_t child_bound = outcome_bound(scales_, child_minutes);

  const int dim_b = s.b + 1, dim_c = s.c + 1;
  const int cells = (s.a + 1) * dim_b * dim_c;
  auto index = [&](int a, int b, int c) { return (a * dim_b + b) * dim_c + c; };

  // Tilt-child solvability by (lights, heavies), cached for this search.
  const int max_x = s.a + s.b, max_y = s.a + s.c;
  std::vector<std::int8_t> cell_cache(static_cast<std::size_t>(max_x + 1) * (max_y + 1), -1);
  auto cell_ok = [&](int x, int y) {
    if (x + y == 0) return true;
    if (x + y > child_bound) return false;
    auto& slot = cell_cache[static_cast<std::size_t>(x) * (max_y + 1) + y];
    if (slot < 0) slot = solvable(CountState{0, x, y, total - x - y}, child_minutes) ? 1 : 0;
    return slot == 1;
  };

  std::vector<int> single(cells, kInf);
  std::vector<CountLoad> single_load(cells);
  for (int la = 0; la <= s.a; ++la) {
    for (int ra = 0; ra <= s.a - la; ++ra) {
      for (int lb = 0; lb <= s.b; ++lb) {
        if (la + lb + ra > child_bound) break;
        for (int rc = 0; rc <= s.c; ++rc) {
          int x1 = la + lb, y1 = ra + rc;
          if (x1 + y1 > child_bound) break;
          if (!cell_ok(x1, y1)) continue;
          for (int rb = 0; rb <= s.b - lb; ++rb) {
            if (ra + rb + la > child_bound) break;
            for (int lc = 0; lc <= s.c - rc; ++lc) {
              int x2 = ra + rb, y2 = la + lc;
              if (x2 + y2 > child_bound) break;
              int left = la + lb + lc, right = ra + rb + rc;
              if (left + right == 0) continue;
              int reals = std::abs(left - right);
              if (reals > s.r) continue;
              int idx = index(la + ra, lb + rb, lc + rc);
              if (reals >= single[idx]) continue;
              if (!cell_ok(x2, y2)) continue;
              single[idx] = reals;
              PanCounts lp{la, lb, lc, left < right ? reals : 0};
              PanCounts rp{ra, rb, rc, left < right ? 0 : reals};
              single_load[idx] = {lp, rp};
            }
          }
        }
      }
    }
  }
  std::vector<int> contributions;
  for (int i = 0; i < cells; ++i)
    if (single[i] < kInf) contributions.push_back(i);
  if (contributions.empty()) return false;

  // reach[i] = min reals to realize class totals i with the scales so far.
  std::vector<int> reach(cells, kInf);
  reach[0] = 0;
  // back[step][i] = (previous index, contribution) or (-1, -1) for idle.
  std::vector<std::vector<std::pair<int, int>>> back(scales_);
  for (int step = 0; step < scales_; ++step) {
    std::vector<int> next = reach;
    auto& bp = back[step];
    bp.assign(cells, {-1, -1});
    for (int i = 0; i < cells; ++i) {
      if (reach[i] >= kInf) continue;
      int ia = i / (dim_b * dim_c), ib = (i / dim_c) % dim_b, ic = i % dim_c;
      for (int ci : contributions) {
        int ca = ci / (dim_b * dim_c), cb = (ci / dim_c) % dim_b, cc = ci % dim_c;
        if (ia + ca > s.a || ib + cb > s.b || ic + cc > s.c) continue;
        int reals = reach[i] + single[ci];
        if (reals > s.r) continue;
        int j = index(ia + ca, ib + cb, ic + cc);
        if (reals < next[j]) {
          next[j] = reals;
          bp[j] = {i, ci};
        }
      }
    }
    reach = std::move(next);
  }

  // Prefer weighing more coins: try class totals from the largest down.
  for (int i = cells - 1; i > 0; --i) {
    if (reach[i] >= kInf) continue;
    int ua = i / (dim_b * dim_c), ub = (i / dim_c) % dim_b, uc = i % dim_c;
    CountState rest{s.a - ua, s.b - ub, s.c - uc, 0};
    rest.r = total - rest.suspects();
    if (rest.hypotheses() != 0 && !solvable(rest, child_minutes)) continue;
    if (witness) {
      witness->scales.clear();
      int j = i;
      for (int step = scales_ - 1; step >= 0; --step) {
        auto [prev, ci] = back[step][j];
        if (prev < 0) {
          witness->scales.push_back(CountLoad{});
        } else {
          witness->scales.push_back(single_load[ci]);
          j = prev;
        }
      }
      std::stable_sort(witness->scales.begin(), witness->scales.end(),
                       [](const CountLoad& x, const CountLoad& y) {
                         int sx = x.left.size(), sy = y.left.size();
                         if (sx != sy) return sx > sy;
                         return y < x;
                       });
    }
    return true;
  }
  return false;
}

Solver& shared_solver(int scales, Problem problem) {
  static std::mutex registry_mutex;
  static std::map<std::pair<int, Problem>, std::unique_ptr<Solver>> registry;
  std::lock_guard lock(registry_mutex);
  auto& slot = registry[{scales, problem}];
  if (!slot) slot = std::make_unique<Solver>(scales, problem);
  return *slot;
}

int initial_reals(int coins, Supply supply) {
  switch (supply.kind) {
    case Supply::Kind::kNone: return 0;
    case Supply::Kind::kFinite: return supply.count;
    case Supply::Kind::kUnlimited: return coins;
  }
  return 0;
}

MaxCoinsResult max_coins_scan(int scales, int minutes, Problem problem, Supply supply) {
  auto bound = capacity::outcomes_per_run(scales, minutes);
  if (bound > kSolverGuard)
    throw PuzzleError(ErrorCode::kInstanceTooLarge,
                      "(2k+1)^n = " + std::to_string(bound) + " exceeds the solver guard of " +
                          std::to_string(kSolverGuard));
  auto& solver = shared_solver(scales, problem);
  MaxCoinsResult out;
  for (int n = 1; n <= static_cast<int>(bound); ++n)
    if (solver.solvable(CountState{n, 0, 0, initial_reals(n, supply)}, minutes))
      out.solvable_counts.push_back(n);
  if (!out.solvable_counts.empty()) out.max_coins = out.solvable_counts.back();
  for (int n = 3; n <= out.max_coins; ++n)
    if (!std::binary_search(out.solvable_counts.begin(), out.solvable_counts.end(), n))
      out.monotone = false;
  return out;
}

int max_coins(int scales, int minutes, Problem problem, Supply supply) {
  return max_coins_scan(scales, minutes, problem, supply).max_coins;
}

ParallelWeighing concretize(const CountWeighing& w, const KnowledgeState& s) {
  std::vector<CoinId> pools[4] = {s.coins_of(CoinClass::kUnknown),
                                  s.coins_of(CoinClass::kPotentiallyLight),
                                  s.coins_of(CoinClass::kPotentiallyHeavy),
                                  s.coins_of(CoinClass::kReal)};
  std::size_t next[4] = {0, 0, 0, 0};
  auto take = [&](int cls, int count, std::vector<CoinId>& pan) {
    for (int i = 0; i < count; ++i) {
      if (next[cls] >= pools[cls].size())
        throw PuzzleError(ErrorCode::kIllegalWeighing, "weighing needs more coins than available",
                          "bad-coin-id");
      pan.push_back(pools[cls][next[cls]++]);
    }
  };
  auto fill = [&](const PanCounts& p, std::vector<CoinId>& pan) {
    take(0, p.unknown, pan);
    take(1, p.light, pan);
    take(2, p.heavy, pan);
    take(3, p.real, pan);
  };
  ParallelWeighing out;
  for (const auto& load : w.scales) {
    ScaleLoad sl;
    fill(load.left, sl.left);
    fill(load.right, sl.right);
    out.loads.push_back(std::move(sl));
  }
  return out;
}

namespace {

StrategyTree extract_at(const KnowledgeState& s, int minutes, Solver& solver) {
  if (is_resolved(s, solver.problem())) {
    auto [coin, sign] = forced_answer(s);
    return make_answer(coin, sign);
  }
  CountState cs = count_state(s);
  auto w = solver.witness(cs, minutes);
  if (!w) throw PuzzleError(ErrorCode::kNotSolvable, "state is not solvable in the given minutes");
  WeighNode node;
  node.weighing = concretize(*w, s);
  for (auto& [outcome, child] : partition_outcomes(s, node.weighing))
    node.children.push_back({outcome, extract_at(child, minutes - 1, solver)});
  return StrategyNode{std::move(node)};
}

}  // namespace

StrategyTree extract_tree(const KnowledgeState& s, int minutes, Solver& solver) {
  auto best = solver.min_minutes(count_state(s), minutes);
  if (!best)
    throw PuzzleError(ErrorCode::kNotSolvable,
                      "state is not solvable in " + std::to_string(minutes) + " minutes");
  return extract_at(s, *best, solver);
}

KnowledgeState assign_ids(CountState s) {
  std::vector<Hypothesis> hyps;
  int id = 0;
  for (int i = 0; i < s.a; ++i, ++id) {
    hyps.push_back({id, Sign::kLight});
    hyps.push_back({id, Sign::kHeavy});
  }
  for (int i = 0; i < s.b; ++i, ++id) hyps.push_back({id, Sign::kLight});
  for (int i = 0; i < s.c; ++i, ++id) hyps.push_back({id, Sign::kHeavy});
  return KnowledgeState::from_hypotheses(s.suspects(), s.r, hyps);
}

StrategyTree extract_tree(CountState s, int minutes, int scales, Problem problem) {
  return extract_tree(assign_ids(s), minutes, shared_solver(scales, problem));
}

OutcomeVector worst_outcome(const KnowledgeState& s, const ParallelWeighing& w, int minutes_left,
                            AdversaryMode mode, Solver& solver) {
  auto cells = partition_outcomes(s, w);
  if (cells.empty()) throw PuzzleError(ErrorCode::kInvalidArgument, "empty knowledge state");
  const OutcomeVector* best = nullptr;
  bool best_breaks = false;
  int best_suspects = -1;
  for (const auto& [outcome, child] : cells) {
    bool breaks = false;
    if (mode == AdversaryMode::kExact) {
      auto cs = count_state(child);
      breaks = minutes_left <= 0 ? !resolved(cs, solver.problem())
                                 : !solver.solvable(cs, minutes_left - 1);
    }
    int suspects = child.suspect_count();
    // cells are ascending, so strict comparisons keep the smallest vector.
    if (!best || breaks > best_breaks || (breaks == best_breaks && suspects > best_suspects)) {
      best = &outcome;
      best_breaks = breaks;
      best_suspects = suspects;
    }
  }
  return *best;
}

}  // namespace parweigh::solve
