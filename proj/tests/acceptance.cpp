// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "parweigh/capacity.hpp"
#include "parweigh/solve.hpp"
#include "parweigh/strategy.hpp"
#include "parweigh/verify.hpp"

using namespace parweigh;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [" << what << "]";
    }
  }
  template <class A, class B>
  void equal(const A& got, const B& want, const std::string& what) {
    if (!(got == want)) {
      ok = false;
      detail << " [" << what << ": got " << got << ", want " << want << "]";
    }
  }
};

int failures = 0;

void criterion(const char* name, double limit_seconds, const std::function<void(Check&)>& body) {
  Check c;
  auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail << " [exception: " << e.what() << "]";
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    c.ok = false;
    c.detail << " [took longer than " << limit_seconds << " s]";
  }
  if (!c.ok) ++failures;
  std::printf("%s %s (%.3f s)%s\n", c.ok ? "PASS" : "FAIL", name, secs, c.detail.str().c_str());
  std::fflush(stdout);
}

int known_potential_max(int k, int n) {
  auto& solver = solve::shared_solver(k, Problem::kJustFind);
  int q = 0;
  for (int x = 1;; ++x) {
    bool all = solver.solvable({0, x, 0, 0}, n);
    for (int b = 0; all && b <= x; ++b) all = solver.solvable({0, b, x - b, x}, n);
    if (!all) return q;
    q = x;
  }
}

ParallelWeighing random_weighing(std::mt19937& rng, int total, int scales) {
  auto w = ParallelWeighing::idle_weighing(scales);
  std::uniform_int_distribution<int> pick(0, 2 * scales);
  for (int id = 0; id < total; ++id) {
    int p = pick(rng);
    if (p == 0) continue;
    auto& l = w.loads[(p - 1) / 2];
    ((p - 1) % 2 == 0 ? l.left : l.right).push_back(id);
  }
  for (auto& l : w.loads) {
    auto n = std::min(l.left.size(), l.right.size());
    l.left.resize(n);
    l.right.resize(n);
  }
  return w;
}

KnowledgeState random_state(std::mt19937& rng, int coins) {
  int suspects = 1 + static_cast<int>(rng() % coins);
  int reals = static_cast<int>(rng() % (coins - suspects + 1));
  std::vector<Hypothesis> hs;
  for (CoinId c = 0; c < suspects; ++c)
    switch (rng() % 4) {
      case 0: hs.push_back({c, Sign::kLight}); hs.push_back({c, Sign::kHeavy}); break;
      case 1: hs.push_back({c, Sign::kLight}); break;
      case 2: hs.push_back({c, Sign::kHeavy}); break;
      default: break;
    }
  if (hs.empty()) hs.push_back({0, Sign::kLight});
  return KnowledgeState::from_hypotheses(suspects, reals, hs);
}

solve::CountWeighing counts_of(const ParallelWeighing& w, const KnowledgeState& s) {
  solve::CountWeighing cw;
  for (const auto& l : w.loads) {
    solve::CountLoad cl;
    for (auto [pan, out] : {std::pair{&l.left, &cl.left}, std::pair{&l.right, &cl.right}})
      for (CoinId c : *pan) switch (s.classify(c)) {
          case CoinClass::kUnknown: ++out->unknown; break;
          case CoinClass::kPotentiallyLight: ++out->light; break;
          case CoinClass::kPotentiallyHeavy: ++out->heavy; break;
          case CoinClass::kReal: ++out->real; break;
        }
    cw.scales.push_back(cl);
  }
  return cw;
}

StrategyNode weigh(ParallelWeighing w, std::vector<std::pair<const char*, StrategyNode>> kids) {
  WeighNode node{std::move(w), {}};
  for (auto& [o, child] : kids) node.children.push_back({OutcomeVector(o), std::move(child)});
  return StrategyNode{std::move(node)};
}

ParallelWeighing one_scale(std::vector<CoinId> left, std::vector<CoinId> right) {
  return ParallelWeighing{{{std::move(left), std::move(right)}}};
}

}  // namespace

int main() {
  criterion("headline capacity: 2 scales, 5 minutes resolve 1561 coins", 1, [](Check& c) {
    c.equal(capacity::capacity({2, Problem::kJustFind, Supply::Kind::kNone}, 5), 1561u, "capacity");
  });

  criterion("strategy witness: 1561 coins built and verified over 3122 hypotheses", 10,
            [](Check& c) {
              PuzzleConfig cfg{1561, 2, Problem::kJustFind, Supply::none(), 5};
              auto tree = strategy::build(cfg);
              auto r = verify::check_correct(tree, cfg);
              c.expect(r.legal, "legal");
              c.expect(r.correct, "correct");
              c.equal(r.hypotheses_checked, 3122u, "hypotheses");
              c.equal(r.depth, 5, "depth");
            });

  criterion("solver matches the closed forms", 120, [](Check& c) {
    using solve::max_coins;
    auto none = Supply::none(), unl = Supply::unlimited();
    auto jf = Problem::kJustFind, fl = Problem::kFindAndLabel;
    struct Row {
      int k, n;
      Problem p;
      Supply s;
      int want;
    };
    for (auto row : {Row{1, 1, jf, none, 1}, Row{1, 2, jf, none, 4}, Row{1, 3, jf, none, 13},
                     Row{1, 2, fl, none, 3}, Row{1, 3, fl, none, 12}, Row{2, 1, jf, none, 1},
                     Row{2, 2, jf, none, 11}, Row{2, 1, jf, unl, 3}, Row{2, 2, jf, unl, 13},
                     Row{2, 1, fl, none, 0}, Row{2, 2, fl, none, 10}, Row{3, 1, jf, none, 1},
                     Row{3, 1, jf, unl, 4}}) {
      std::string what = "k=" + std::to_string(row.k) + " n=" + std::to_string(row.n) + " " +
                         std::string(to_string(row.p)) + " " +
                         (row.s == unl ? "unlimited" : "none");
      c.equal(max_coins(row.k, row.n, row.p, row.s), row.want, what);
      c.equal(capacity::capacity({row.k, row.p, row.s.kind}, row.n),
              static_cast<std::uint64_t>(row.want), what + " formula");
    }
    for (int n : {1, 2}) {
      int want = n == 1 ? 5 : 25;
      c.equal(known_potential_max(2, n), want, "known potential n=" + std::to_string(n));
      c.equal(capacity::known_potential_capacity(2, n), static_cast<std::uint64_t>(want),
              "known potential formula");
    }
  });

  criterion("two coins cannot be resolved in up to 6 minutes on 1 or 2 scales", 0, [](Check& c) {
    for (int k : {1, 2})
      for (int m = 0; m <= 6; ++m)
        c.expect(!solve::shared_solver(k, Problem::kJustFind).solvable({2, 0, 0, 0}, m),
                 "k=" + std::to_string(k) + " m=" + std::to_string(m));
  });

  criterion("two extra real coins: (5^n + 1) / 2 coins for n = 1, 2", 0, [](Check& c) {
    c.equal(solve::max_coins(2, 1, Problem::kJustFind, Supply::finite(2)), 3, "n=1");
    c.equal(solve::max_coins(2, 2, Problem::kJustFind, Supply::finite(2)), 13, "n=2");
  });

  criterion("known-potential small cases: 1-and-1 and 1-and-3 need a real coin", 0, [](Check& c) {
    auto& s = solve::shared_solver(2, Problem::kJustFind);
    c.expect(!s.solvable({0, 1, 1, 0}, 1), "(0,1,1,0) unsolvable");
    c.expect(s.solvable({0, 1, 1, 1}, 1), "(0,1,1,1) solvable");
    c.expect(!s.solvable({0, 1, 3, 0}, 1), "(0,1,3,0) unsolvable");
    c.expect(s.solvable({0, 1, 3, 1}, 1), "(0,1,3,1) solvable");
  });

  criterion("lazy coin: 4 coins statically, all maximal strategies lazy; 3 with labels", 30,
            [](Check& c) {
              auto jf = verify::lazy_coin_search({1, 1, Problem::kJustFind, Supply::none(), 2});
              auto fl = verify::lazy_coin_search({1, 1, Problem::kFindAndLabel, Supply::none(), 2});
              c.equal(jf.max_static, 4, "just-find");
              c.expect(jf.all_maximal_have_lazy, "all maximal lazy");
              c.equal(fl.max_static, 3, "find-and-label");
            });

  criterion("count abstraction: 1000 random triples, zero mismatches", 0, [](Check& c) {
    std::mt19937 rng(20261014);
    int mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
      int scales = 1 + static_cast<int>(rng() % 3);
      auto s = random_state(rng, 8);
      auto w = random_weighing(rng, s.total_coins(), scales);
      auto cells = partition_outcomes(s, w);
      auto& [o, child] = cells[rng() % cells.size()];
      auto before = oracle::counts(s);
      auto after = oracle::counts(child);
      auto t = solve::transition({before.a, before.b, before.c, before.r}, counts_of(w, s), o);
      if (!(oracle::Counts{t.a, t.b, t.c, t.r} == after)) ++mismatches;
    }
    c.equal(mismatches, 0, "mismatches");
  });

  criterion("four-coin adaptive example on one scale in 2 minutes", 0, [](Check& c) {
    auto second = [](CoinId on_lighter_first) {
      return weigh(one_scale({0, 1}, {2, 3}), {{"<", make_answer(on_lighter_first)},
                                               {">", make_answer(1 - on_lighter_first)}});
    };
    auto tree = weigh(one_scale({0}, {1}),
                      {{"<", second(0)},
                       {"=", weigh(one_scale({2}, {0}), {{"<", make_answer(2)},
                                                         {"=", make_answer(3)},
                                                         {">", make_answer(2)}})},
                       {">", second(1)}});
    PuzzleConfig cfg{4, 1, Problem::kJustFind, Supply::none(), 2};
    c.expect(verify::check_legal(tree, cfg).legal, "legal");
    c.expect(verify::check_correct(tree, cfg).correct, "correct");
  });

  std::printf("%s: %d failing\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
