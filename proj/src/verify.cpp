#include "parweigh/verify.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "parweigh/capacity.hpp"

namespace parweigh::verify {
namespace {

std::string child_path(const std::string& path, const OutcomeVector& o) {
  return path + "/" + o.str();
}

bool well_formed(const OutcomeVector& o, int scales) {
  return OutcomeVector::parse(o.str(), scales).has_value();
}

struct LegalityWalk {
  const PuzzleConfig& cfg;
  VerificationReport& report;
  std::vector<bool> weighed;

  void issue(const std::string& path, const std::string& reason) {
    report.legal = false;
    report.legality_issues.push_back(path + ": " + reason);
  }

  void walk(const StrategyNode& node, const std::string& path, int depth) {
    report.depth = std::max(report.depth, depth);
    if (node.is_answer()) {
      const auto& a = node.answer();
      if (a.coin < 0 || a.coin >= cfg.coins)
        issue(path, "answer coin " + std::to_string(a.coin) + " is not a suspect");
      return;
    }
    const auto& w = node.weigh();
    if (depth + 1 > cfg.minutes)
      issue(path, "exceeds the budget of " + std::to_string(cfg.minutes) + " minutes");
    if (auto v = weighing_violation(w.weighing, cfg.scales, total_coins(cfg))) issue(path, *v);
    for (const auto& load : w.weighing.loads)
      for (const auto* pan : {&load.left, &load.right})
        for (CoinId c : *pan)
          if (c >= 0 && c < cfg.coins) weighed[c] = true;
    for (std::size_t i = 0; i < w.children.size(); ++i) {
      const auto& b = w.children[i];
      if (!well_formed(b.outcome, cfg.scales)) {
        issue(path, "bad outcome key \"" + b.outcome.str() + "\"");
        continue;
      }
      if (i > 0 && !(w.children[i - 1].outcome < b.outcome))
        issue(path, "duplicate or unsorted outcome key \"" + b.outcome.str() + "\"");
      walk(b.node, child_path(path, b.outcome), depth + 1);
    }
  }
};

void fill_lazy(VerificationReport& report, const std::vector<bool>& weighed) {
  for (std::size_t c = 0; c < weighed.size(); ++c)
    if (!weighed[c]) report.lazy_coins.push_back(static_cast<CoinId>(c));
}

std::vector<Hypothesis> all_hypotheses(int coins) {
  std::vector<Hypothesis> hs;
  hs.reserve(2 * static_cast<std::size_t>(coins));
  for (CoinId c = 0; c < coins; ++c) {
    hs.push_back({c, Sign::kLight});
    hs.push_back({c, Sign::kHeavy});
  }
  return hs;
}

std::string hypothesis_text(Hypothesis h) {
  return "(" + std::to_string(h.coin) + ", " + std::string(to_string(h.sign)) + ")";
}

}  // namespace

VerificationReport check_legal(const StrategyTree& t, const PuzzleConfig& cfg) {
  VerificationReport report;
  LegalityWalk walk{cfg, report, std::vector<bool>(std::max(cfg.coins, 0), false)};
  walk.walk(t, "root", 0);
  fill_lazy(report, walk.weighed);
  return report;
}

VerificationReport check_correct(const StrategyTree& t, const PuzzleConfig& cfg) {
  VerificationReport report = check_legal(t, cfg);
  if (!report.legal) return report;
  for (Hypothesis h : all_hypotheses(cfg.coins)) {
    ++report.hypotheses_checked;
    const StrategyNode* node = &t;
    std::string path = "root";
    while (!node->is_answer()) {
      auto o = induced_outcome(h, node->weigh().weighing);
      const StrategyNode* next = node->child(o);
      if (!next) {
        report.failures.push_back({h, path, "missing child for outcome \"" + o.str() + "\""});
        break;
      }
      path = child_path(path, o);
      node = next;
    }
    if (!node->is_answer()) continue;
    const auto& a = node->answer();
    if (a.coin != h.coin)
      report.failures.push_back({h, path, "answered coin " + std::to_string(a.coin)});
    else if (cfg.problem == Problem::kFindAndLabel && !a.label)
      report.failures.push_back({h, path, "missing label"});
    else if (cfg.problem == Problem::kFindAndLabel && *a.label != h.sign)
      report.failures.push_back({h, path, "answered label " + std::string(to_string(*a.label))});
  }
  report.correct = report.failures.empty();
  return report;
}

VerificationReport verify_static(const StaticStrategy& ss, const PuzzleConfig& cfg) {
  VerificationReport report;
  report.depth = static_cast<int>(ss.weighings.size());
  std::vector<bool> weighed(std::max(cfg.coins, 0), false);
  if (report.depth != cfg.minutes) {
    report.legal = false;
    report.legality_issues.push_back("static: " + std::to_string(report.depth) +
                                     " weighings for a budget of " + std::to_string(cfg.minutes));
  }
  for (std::size_t t = 0; t < ss.weighings.size(); ++t) {
    const auto& w = ss.weighings[t];
    if (auto v = weighing_violation(w, cfg.scales, total_coins(cfg))) {
      report.legal = false;
      report.legality_issues.push_back("minute " + std::to_string(t + 1) + ": " + *v);
    }
    for (const auto& load : w.loads)
      for (const auto* pan : {&load.left, &load.right})
        for (CoinId c : *pan)
          if (c >= 0 && c < cfg.coins) weighed[c] = true;
  }
  fill_lazy(report, weighed);
  if (!report.legal) return report;

  std::map<std::string, Hypothesis> first_with;
  for (Hypothesis h : all_hypotheses(cfg.coins)) {
    ++report.hypotheses_checked;
    std::string signature;
    for (const auto& w : ss.weighings) signature += induced_outcome(h, w).str() + "|";
    auto [it, inserted] = first_with.emplace(signature, h);
    if (inserted) continue;
    Hypothesis other = it->second;
    if (cfg.problem == Problem::kJustFind && other.coin == h.coin) continue;
    report.failures.push_back({h, "signature " + signature,
                               "indistinguishable from " + hypothesis_text(other)});
  }
  report.correct = report.failures.empty();
  return report;
}

namespace {

StrategyNode unroll(const StaticStrategy& ss, const KnowledgeState& s, std::size_t minute,
                    Problem problem) {
  if (minute == ss.weighings.size()) {
    auto hs = s.hypotheses();
    if (is_resolved(s, problem)) {
      auto [coin, sign] = forced_answer(s);
      return make_answer(coin, sign);
    }
    return make_answer(hs.front().coin, hs.front().sign);
  }
  WeighNode node;
  node.weighing = ss.weighings[minute];
  for (auto& [o, child] : partition_outcomes(s, node.weighing))
    node.children.push_back({o, unroll(ss, child, minute + 1, problem)});
  return StrategyNode{std::move(node)};
}

}  // namespace

StrategyTree static_to_tree(const StaticStrategy& ss, const PuzzleConfig& cfg) {
  for (const auto& w : ss.weighings) require_legal(w, cfg.scales, total_coins(cfg));
  return unroll(ss, KnowledgeState::fresh(cfg.coins, materialized_reals(cfg)), 0, cfg.problem);
}

// Static strategies as placement words. Coin i gets a word over
// {0, +1..+k, -1..-k}^n: +j means the left pan of scale j at that minute,
// -j the right pan. Hypothesis (i, Light) then has signature w_i and (i, Heavy)
// signature -w_i (as tilt directions), so just-find is correct iff no two
// coins have equal or opposite words, and find-and-label also forbids the zero
// word. Up to relabelling and pan swaps a strategy is a set of oriented
// classes {w, -w} plus an optional zero word (the lazy coin). Each oriented
// class adds +-1 to the pan difference of every (minute, scale) it touches;
// the pans balance when the coordinate sums are absorbed by real coins.
namespace {

struct WordSpace {
  int scales;
  int minutes;
  int dims;  // minutes * scales
  // Chosen representatives of nonzero classes: first nonzero letter positive.
  std::vector<std::vector<int>> classes;  // letters in [-k, k]

  WordSpace(int k, int n) : scales(k), minutes(n), dims(k * n) {
    std::vector<int> word(n, 0);
    std::fill(word.begin(), word.end(), -k);
    for (;;) {
      auto first = std::find_if(word.begin(), word.end(), [](int x) { return x != 0; });
      if (first != word.end() && *first > 0) classes.push_back(word);
      int i = n - 1;
      while (i >= 0 && word[i] == k) word[i--] = -k;
      if (i < 0) break;
      ++word[i];
    }
    std::sort(classes.begin(), classes.end());
  }

  // Coordinate (minute t, scale j) contributions of a word.
  std::vector<int> delta(const std::vector<int>& word) const {
    std::vector<int> d(dims, 0);
    for (int t = 0; t < minutes; ++t)
      if (word[t] != 0) d[t * scales + std::abs(word[t]) - 1] = word[t] > 0 ? 1 : -1;
    return d;
  }
};

// Whether the difference vector can be evened by `reals` real coins per
// minute (reals < 0 means unlimited).
bool balanced(const std::vector<int>& sums, int scales, int minutes, int reals) {
  for (int t = 0; t < minutes; ++t) {
    int need = 0;
    for (int j = 0; j < scales; ++j) need += std::abs(sums[t * scales + j]);
    if (reals >= 0 && need > reals) return false;
  }
  return true;
}

constexpr std::uint64_t kLatticeLimit = std::uint64_t{1} << 27;

// Most nonzero classes whose oriented sum is balanced.
int max_balanced_classes(const WordSpace& space, int reals) {
  const int dims = space.dims;
  std::vector<int> bound(dims, 0);
  std::vector<std::vector<int>> deltas;
  for (const auto& w : space.classes) {
    deltas.push_back(space.delta(w));
    for (int d = 0; d < dims; ++d) bound[d] += std::abs(deltas.back()[d]);
  }
  std::vector<std::uint64_t> stride(dims, 1);
  std::uint64_t cells = 1;
  for (int d = 0; d < dims; ++d) {
    stride[d] = cells;
    cells *= static_cast<std::uint64_t>(2 * bound[d] + 1);
    if (cells > kLatticeLimit)
      throw PuzzleError(ErrorCode::kInstanceTooLarge, "static balance lattice too large");
  }
  auto index = [&](const std::vector<int>& sums) {
    std::uint64_t idx = 0;
    for (int d = 0; d < dims; ++d) idx += static_cast<std::uint64_t>(sums[d] + bound[d]) * stride[d];
    return idx;
  };
  // best[x] = most classes reaching sum x, -1 if unreachable.
  std::vector<std::int8_t> best(cells, -1), next;
  best[index(std::vector<int>(dims, 0))] = 0;
  std::vector<int> sums(dims);
  for (const auto& delta : deltas) {
    next = best;
    std::int64_t shift = 0;
    for (int d = 0; d < dims; ++d) shift += delta[d] * static_cast<std::int64_t>(stride[d]);
    for (std::uint64_t x = 0; x < cells; ++x) {
      if (best[x] < 0) continue;
      auto up = static_cast<std::int64_t>(x) + shift, down = static_cast<std::int64_t>(x) - shift;
      // Bounds grow only as far as classes seen so far reach, so both stay in range.
      std::int8_t v = static_cast<std::int8_t>(best[x] + 1);
      if (next[up] < v) next[up] = v;
      if (next[down] < v) next[down] = v;
    }
    best.swap(next);
  }
  int result = 0;
  for (std::uint64_t x = 0; x < cells; ++x) {
    if (best[x] <= result) continue;
    std::uint64_t rest = x;
    for (int d = dims - 1; d >= 0; --d) {
      sums[d] = static_cast<int>(rest / stride[d]) - bound[d];
      rest %= stride[d];
    }
    if (balanced(sums, space.scales, space.minutes, reals)) result = best[x];
  }
  return result;
}

}  // namespace

LazyCoinResult lazy_coin_search(const PuzzleConfig& cfg) {
  if (cfg.scales < 1 || cfg.minutes < 0)
    throw PuzzleError(ErrorCode::kInvalidArgument, "scales must be >= 1, minutes >= 0");
  auto words = capacity::outcomes_per_run(cfg.scales, cfg.minutes);
  if (words > 81)
    throw PuzzleError(ErrorCode::kInstanceTooLarge,
                      "(2k+1)^n = " + std::to_string(words) + " exceeds 81");
  int reals = cfg.supply.kind == Supply::Kind::kUnlimited ? -1
              : cfg.supply.kind == Supply::Kind::kFinite  ? cfg.supply.count
                                                          : 0;
  WordSpace space(cfg.scales, cfg.minutes);
  int nonzero = max_balanced_classes(space, reals);
  LazyCoinResult r;
  r.max_without_lazy = nonzero;
  r.max_with_lazy = nonzero + 1;
  r.max_static = cfg.problem == Problem::kJustFind ? r.max_with_lazy : r.max_without_lazy;
  // A maximal just-find strategy without a lazy coin would have
  // max_with_lazy coins all weighed, i.e. that many balanced classes.
  r.all_maximal_have_lazy = r.max_without_lazy < r.max_with_lazy;
  return r;
}

std::vector<std::pair<StaticStrategy, int>> enumerate_static_strategies(int scales, int minutes) {
  if (capacity::outcomes_per_run(scales, minutes) > 9)
    throw PuzzleError(ErrorCode::kInstanceTooLarge, "enumeration limited to (2k+1)^n <= 9");
  WordSpace space(scales, minutes);
  const int m = static_cast<int>(space.classes.size());
  std::vector<std::pair<StaticStrategy, int>> out;
  // Each class absent, +, or -; lazy coin absent or present. The first
  // chosen class keeps its + orientation (pan swap of the whole strategy).
  std::vector<int> choice(m, 0);
  for (;;) {
    auto first = std::find_if(choice.begin(), choice.end(), [](int x) { return x != 0; });
    bool canonical = first == choice.end() || *first == 1;
    std::vector<int> sums(space.dims, 0);
    std::vector<std::vector<int>> words;
    for (int i = 0; i < m; ++i) {
      if (choice[i] == 0) continue;
      auto w = space.classes[i];
      if (choice[i] == 2)
        for (int& x : w) x = -x;
      auto d = space.delta(w);
      for (int e = 0; e < space.dims; ++e) sums[e] += d[e];
      words.push_back(w);
    }
    if (canonical && balanced(sums, scales, minutes, 0)) {
      for (int lazy = 0; lazy < 2; ++lazy) {
        int coins = static_cast<int>(words.size()) + lazy;
        if (coins == 0) continue;
        StaticStrategy ss;
        for (int t = 0; t < minutes; ++t) {
          auto w = ParallelWeighing::idle_weighing(scales);
          for (std::size_t c = 0; c < words.size(); ++c) {
            int x = words[c][t];
            if (x > 0) w.loads[x - 1].left.push_back(static_cast<CoinId>(c));
            if (x < 0) w.loads[-x - 1].right.push_back(static_cast<CoinId>(c));
          }
          ss.weighings.push_back(std::move(w));
        }
        out.emplace_back(std::move(ss), coins);
      }
    }
    int i = 0;
    while (i < m && choice[i] == 2) choice[i++] = 0;
    if (i == m) break;
    ++choice[i];
  }
  return out;
}

}  // namespace parweigh::verify
