#pragma once

// Independent reference computations used to check the library. Nothing
// here calls into the solver or the builders.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "parweigh/core.hpp"
#include "parweigh/tree.hpp"

namespace oracle {

using namespace parweigh;

inline std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

struct Counts {
  int a = 0, b = 0, c = 0, r = 0;
  bool operator==(const Counts&) const = default;
};

// Class counts straight from hypothesis membership.
inline Counts counts(const KnowledgeState& s) {
  Counts out;
  for (CoinId c = 0; c < s.total_coins(); ++c) {
    bool light = c < s.suspects() && s.contains({c, Sign::kLight});
    bool heavy = c < s.suspects() && s.contains({c, Sign::kHeavy});
    if (light && heavy) ++out.a;
    else if (light) ++out.b;
    else if (heavy) ++out.c;
    else ++out.r;
  }
  return out;
}

// Tilt of one scale under one hypothesis, from first principles.
inline char tilt(Hypothesis h, const ScaleLoad& load) {
  auto on = [&](const std::vector<CoinId>& pan) {
    for (CoinId c : pan)
      if (c == h.coin) return true;
    return false;
  };
  bool light = h.sign == Sign::kLight;
  if (on(load.left)) return light ? '<' : '>';
  if (on(load.right)) return light ? '>' : '<';
  return '=';
}

inline std::string outcome(Hypothesis h, const ParallelWeighing& w) {
  std::string s;
  for (const auto& load : w.loads) s += tilt(h, load);
  return s;
}

// Every legal weighing over coins 0..total-1 on k scales: each coin goes
// to one of 2k pans or stays off, pans balance per scale. Includes idle.
inline void for_each_weighing(int total, int scales,
                              const std::function<void(const ParallelWeighing&)>& f) {
  std::vector<int> place(total, 0);  // 0 off, 2j+1 left of j, 2j+2 right of j
  const int choices = 2 * scales + 1;
  for (;;) {
    std::vector<int> left(scales, 0), right(scales, 0);
    for (int p : place)
      if (p > 0) ((p - 1) % 2 == 0 ? left : right)[(p - 1) / 2]++;
    if (left == right) {
      auto w = ParallelWeighing::idle_weighing(scales);
      for (int c = 0; c < total; ++c)
        if (place[c] > 0) {
          auto& load = w.loads[(place[c] - 1) / 2];
          ((place[c] - 1) % 2 == 0 ? load.left : load.right).push_back(c);
        }
      f(w);
    }
    int i = 0;
    while (i < total && place[i] == choices - 1) place[i++] = 0;
    if (i == total) break;
    ++place[i];
  }
}

inline bool resolved(const std::vector<Hypothesis>& hs, Problem p) {
  if (p == Problem::kFindAndLabel) return hs.size() == 1;
  for (auto h : hs)
    if (h.coin != hs.front().coin) return false;
  return true;
}

// Minimax over explicit hypothesis sets and every concrete weighing.
class ExplicitSolver {
 public:
  ExplicitSolver(int total, int scales, Problem p) : total_(total), scales_(scales), problem_(p) {
    for_each_weighing(total, scales, [&](const ParallelWeighing& w) {
      if (!w.idle()) moves_.push_back(w);
    });
  }

  bool solvable(const std::vector<Hypothesis>& hs, int m) {
    if (resolved(hs, problem_)) return true;
    if (m == 0) return false;
    std::string key = std::to_string(m) + ":";
    for (auto h : hs) key += std::to_string(h.coin * 2 + (h.sign == Sign::kHeavy)) + ",";
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool ok = false;
    for (const auto& w : moves_) {
      std::map<std::string, std::vector<Hypothesis>> cells;
      for (auto h : hs) cells[outcome(h, w)].push_back(h);
      bool all = true;
      for (auto& [o, cell] : cells)
        if (!solvable(cell, m - 1)) {
          all = false;
          break;
        }
      if (all) {
        ok = true;
        break;
      }
    }
    memo_[key] = ok;
    return ok;
  }

  std::vector<Hypothesis> fresh(int suspects) const {
    std::vector<Hypothesis> hs;
    for (CoinId c = 0; c < suspects; ++c) {
      hs.push_back({c, Sign::kLight});
      hs.push_back({c, Sign::kHeavy});
    }
    return hs;
  }

 private:
  int total_, scales_;
  Problem problem_;
  std::vector<ParallelWeighing> moves_;
  std::map<std::string, bool> memo_;
};

// Walks every hypothesis of a fresh N-coin puzzle down a tree.
inline bool tree_correct(const StrategyNode& t, int coins, Problem p) {
  for (CoinId c = 0; c < coins; ++c)
    for (Sign s : {Sign::kLight, Sign::kHeavy}) {
      const StrategyNode* node = &t;
      while (!node->is_answer()) {
        const StrategyNode* next = nullptr;
        std::string o = outcome({c, s}, node->weigh().weighing);
        for (const auto& b : node->weigh().children)
          if (b.outcome.str() == o) next = &b.node;
        if (!next) return false;
        node = next;
      }
      if (node->answer().coin != c) return false;
      if (p == Problem::kFindAndLabel && node->answer().label != s) return false;
    }
  return true;
}

}  // namespace oracle
