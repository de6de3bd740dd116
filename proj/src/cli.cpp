#include "parweigh/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "parweigh/capacity.hpp"
#include "parweigh/game.hpp"
#include "parweigh/service.hpp"
#include "parweigh/solve.hpp"
#include "parweigh/strategy.hpp"
#include "parweigh/strategy_file.hpp"
#include "parweigh/verify.hpp"

namespace parweigh::cli {
namespace {

struct UsageError {
  std::string message;
};

Problem problem_arg(const std::string& text) {
  auto p = parse_problem(text);
  if (!p) throw UsageError{"unknown problem \"" + text + "\" (just-find|find-and-label)"};
  return *p;
}

Supply supply_arg(const std::string& text) {
  auto s = verify::parse_supply(text);
  if (!s) throw UsageError{"unknown supply \"" + text + "\" (none|unlimited|R)"};
  return *s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_ids(std::string_view text, std::vector<CoinId>& ids) {
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    CoinId c = 0;
    auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), c);
    if (ec != std::errc{} || end != token.data() + token.size()) return false;
    ids.push_back(c);
  }
  return true;
}

std::string ids_text(const std::vector<CoinId>& ids) {
  std::string s;
  for (CoinId c : ids) s += (s.empty() ? "" : " ") + std::to_string(c);
  return s.empty() ? "-" : s;
}

std::string hypothesis_text(Hypothesis h) {
  return "(" + std::to_string(h.coin) + ", " + std::string(to_string(h.sign)) + ")";
}

char scale_letter(int j) { return static_cast<char>('A' + j); }

// ---- capacity / solve / build / verify ----

int cmd_capacity(int scales, int minutes, const std::string& problem, const std::string& supply,
                 const std::string& potential, std::ostream& out) {
  if (potential != "known" && potential != "unknown")
    throw UsageError{"--potential must be known or unknown"};
  out << service::query_capacity(scales, minutes, problem_arg(problem), supply_arg(supply),
                                 potential == "known")
      << "\n";
  return kOk;
}

int cmd_solve(int coins, int scales, const std::string& problem_text,
              const std::string& supply_text, int max_minutes, bool exact, std::ostream& out) {
  PuzzleConfig cfg{coins, scales, problem_arg(problem_text), supply_arg(supply_text), 0};
  validate_config(cfg);
  std::optional<int> minutes;
  if (!exact && cfg.supply.kind != Supply::Kind::kFinite) {
    auto m = capacity::min_minutes(cfg);
    if (auto* n = std::get_if<int>(&m); n && *n <= max_minutes) minutes = *n;
  } else {
    if (static_cast<std::uint64_t>(coins) > solve::kSolverGuard)
      throw PuzzleError(ErrorCode::kInstanceTooLarge,
                        "exact search limited to " + std::to_string(solve::kSolverGuard) + " coins");
    solve::CountState s{coins, 0, 0, solve::initial_reals(coins, cfg.supply)};
    minutes = solve::shared_solver(scales, cfg.problem).min_minutes(s, max_minutes);
  }
  if (!minutes) {
    out << "unsolvable\n";
    return kNegative;
  }
  out << *minutes << "\n";
  return kOk;
}

int cmd_build(const PuzzleConfig& cfg, const std::string& path, std::ostream& out,
              std::ostream& err) {
  auto tree = strategy::build(cfg);
  auto report = verify::check_correct(tree, cfg);
  std::ofstream file(path);
  if (!file) throw UsageError{"cannot write " + path};
  file << verify::serialize(cfg, tree, 1);
  if (!file) throw UsageError{"cannot write " + path};
  err << "wrote " << path << " (depth " << report.depth << ", " << tree_size(tree)
      << " nodes)\n";
  out << "verified: " << (report.correct ? "true" : "false") << "\n";
  return report.correct ? kOk : kNegative;
}

void print_report(const verify::VerificationReport& r, std::ostream& out) {
  out << "legal: " << (r.legal ? "true" : "false") << "\n";
  out << "correct: " << (r.correct ? "true" : "false") << "\n";
  out << "depth: " << r.depth << "\n";
  out << "hypotheses: " << r.hypotheses_checked << "\n";
  out << "failures: " << r.failures.size() << "\n";
  out << "lazy coins: " << ids_text(r.lazy_coins) << "\n";
  constexpr std::size_t kShown = 10;
  for (std::size_t i = 0; i < std::min(kShown, r.legality_issues.size()); ++i)
    out << "  illegal " << r.legality_issues[i] << "\n";
  for (std::size_t i = 0; i < std::min(kShown, r.failures.size()); ++i) {
    const auto& f = r.failures[i];
    out << "  " << hypothesis_text(f.hypothesis) << " at " << f.where << ": " << f.reason << "\n";
  }
}

int cmd_verify(const std::string& path, bool is_static, std::ostream& out) {
  std::ifstream file(path);
  if (!file) throw UsageError{"cannot read " + path};
  std::stringstream text;
  text << file.rdbuf();
  auto doc = verify::parse_strategy_file(text.str());
  if (is_static != doc.is_static())
    throw UsageError{is_static ? "--static given but the file holds an adaptive tree"
                               : "the file holds a static strategy; pass --static"};
  auto report = doc.is_static() ? verify::verify_static(doc.static_strategy(), doc.config)
                                : verify::check_correct(doc.tree(), doc.config);
  print_report(report, out);
  return report.correct ? kOk : kNegative;
}

// ---- play ----

void print_state(const game::Game& g, std::ostream& out) {
  const auto& s = g.state();
  auto cs = solve::count_state(s);
  out << "minute " << g.minutes_used() << "/" << g.budget() << ": " << s.suspect_count()
      << " suspects, " << s.size() << " hypotheses (unknown " << cs.a << ", light " << cs.b
      << ", heavy " << cs.c << ", real " << cs.r << ")\n";
  for (auto cls : {CoinClass::kUnknown, CoinClass::kPotentiallyLight, CoinClass::kPotentiallyHeavy}) {
    std::vector<CoinId> ids;
    for (CoinId c : s.coins_of(cls))
      if (c < s.suspects()) ids.push_back(c);
    if (!ids.empty()) out << "  " << to_string(cls) << ": " << ids_text(ids) << "\n";
  }
}

void print_verdict(const game::Game& g, std::ostream& out) {
  const auto& v = g.verdict();
  if (g.status() == game::Status::kWon) out << "won\n";
  if (g.status() == game::Status::kForfeit) out << "forfeit\n";
  if (g.status() == game::Status::kLost) {
    out << "lost";
    if (v && v->counterexample) out << ": " << hypothesis_text(*v->counterexample) << " is still possible";
    out << "\n";
  }
}

int cmd_play(PuzzleConfig cfg, const std::string& adversary, std::optional<int> budget,
             std::istream& in, std::ostream& out) {
  validate_config(cfg);
  cfg.minutes = budget ? *budget : game::default_budget(cfg);
  if (cfg.minutes < 1) throw UsageError{"--budget must be >= 1"};
  auto mode = game::default_adversary(cfg.scales, cfg.minutes);
  if (!adversary.empty()) {
    auto m = game::parse_adversary(adversary);
    if (!m) throw UsageError{"--adversary must be exact or greedy"};
    mode = *m;
  }
  game::Game g(cfg, mode);
  auto optimal = game::optimal_minutes(cfg);
  out << "coins 0.." << cfg.coins - 1;
  if (materialized_reals(cfg) > 0)
    out << ", real coins " << cfg.coins << ".." << total_coins(cfg) - 1;
  out << "; " << cfg.scales << " scale(s); " << to_string(cfg.problem) << "\n";
  out << "adversary: " << game::to_string(mode) << "\n";
  out << "budget: " << cfg.minutes << " minutes; optimal: "
      << (optimal ? std::to_string(*optimal) : std::string("unknown")) << "\n";
  std::string line;
  while (g.status() == game::Status::kActive && std::getline(in, line)) {
    std::string_view cmd = trim(line);
    if (cmd.empty() || cmd.front() == '#') continue;
    auto space = cmd.find_first_of(" \t");
    std::string_view verb = cmd.substr(0, space);
    std::string_view rest = space == std::string_view::npos ? "" : trim(cmd.substr(space));
    try {
      if (verb == "weigh") {
        std::string error;
        auto w = parse_weighing_text(rest, cfg.scales, &error);
        if (!w) {
          out << "error: " << error << "\n";
          continue;
        }
        auto o = g.weigh(*w);
        out << "outcome: " << o.str() << "\n";
        print_state(g, out);
      } else if (verb == "answer") {
        std::istringstream args{std::string(rest)};
        std::string coin_text, label_text, extra;
        args >> coin_text >> label_text >> extra;
        CoinId coin = 0;
        auto [end, ec] = std::from_chars(coin_text.data(), coin_text.data() + coin_text.size(), coin);
        if (coin_text.empty() || ec != std::errc{} || end != coin_text.data() + coin_text.size() ||
            !extra.empty()) {
          out << "error: usage: answer COIN [light|heavy]\n";
          continue;
        }
        std::optional<Sign> label;
        if (!label_text.empty()) {
          label = parse_sign(label_text);
          if (!label) {
            out << "error: label must be light or heavy\n";
            continue;
          }
        }
        g.answer(coin, label);
      } else if (verb == "hint") {
        auto h = g.hint();
        if (h)
          out << "hint: " << format_weighing(h->weighing) << "\n";
        else
          out << "hint: the answer is forced\n";
      } else if (verb == "state") {
        print_state(g, out);
      } else if (verb == "quit") {
        g.forfeit();
      } else {
        out << "error: commands are weigh, answer, hint, state, quit\n";
      }
    } catch (const PuzzleError& e) {
      out << "error: " << (e.reason().empty() ? std::string(e.what()) : e.reason()) << "\n";
    }
  }
  if (g.status() == game::Status::kActive) g.forfeit();
  print_verdict(g, out);
  return g.status() == game::Status::kWon ? kOk : kNegative;
}

int cmd_serve(int port, const std::string& bind, std::ostream& out, std::ostream& err) {
  service::Api api;
  service::HttpServer server(api);
  int bound = server.bind(bind, port);
  if (bound < 0) {
    err << "error: cannot bind " << bind << ":" << port << "\n";
    return kUsage;
  }
  out << "listening on " << bind << ":" << bound << std::endl;
  return server.run() ? kOk : kUsage;
}

int exit_code(const PuzzleError& e) {
  switch (e.code()) {
    case ErrorCode::kInstanceTooLarge:
    case ErrorCode::kRangeExceeded:
    case ErrorCode::kNeedsSolver: return kGuard;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParseError: return kUsage;
    default: return kNegative;
  }
}

}  // namespace

std::optional<ParallelWeighing> parse_weighing_text(std::string_view text, int scales,
                                                    std::string* error) {
  auto fail = [&](const std::string& what) -> std::optional<ParallelWeighing> {
    if (error) *error = what;
    return std::nullopt;
  };
  auto w = ParallelWeighing::idle_weighing(scales);
  std::vector<bool> seen(scales, false);
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view part = trim(text.substr(start, end - start));
    start = end + 1;
    if (part.empty()) continue;
    auto colon = part.find(':');
    if (colon == std::string_view::npos) return fail("expected \"A: ids v ids\"");
    std::string_view label = trim(part.substr(0, colon));
    if (label.size() != 1 || !std::isalpha(static_cast<unsigned char>(label[0])))
      return fail("scale label must be a letter");
    int j = std::toupper(static_cast<unsigned char>(label[0])) - 'A';
    if (j >= scales) return fail("no scale " + std::string(label));
    if (seen[j]) return fail("scale " + std::string(label) + " given twice");
    seen[j] = true;
    std::string_view pans = part.substr(colon + 1);
    // Separator: a standalone "v".
    std::size_t v = std::string_view::npos;
    for (std::size_t i = 0; i < pans.size(); ++i) {
      bool before = i == 0 || std::isspace(static_cast<unsigned char>(pans[i - 1]));
      bool after = i + 1 == pans.size() || std::isspace(static_cast<unsigned char>(pans[i + 1]));
      if ((pans[i] == 'v' || pans[i] == 'V') && before && after) {
        if (v != std::string_view::npos) return fail("more than one \"v\" on a scale");
        v = i;
      }
    }
    if (v == std::string_view::npos) return fail("missing \"v\" between the pans");
    if (!parse_ids(pans.substr(0, v), w.loads[j].left) ||
        !parse_ids(pans.substr(v + 1), w.loads[j].right))
      return fail("coin ids must be integers");
    if (start > text.size()) break;
  }
  return w;
}

std::string format_weighing(const ParallelWeighing& w) {
  std::string s;
  for (int j = 0; j < w.scales(); ++j) {
    const auto& load = w.loads[j];
    if (load.idle()) continue;
    if (!s.empty()) s += "; ";
    s += std::string(1, scale_letter(j)) + ": " + ids_text(load.left) + " v " + ids_text(load.right);
  }
  return s.empty() ? "idle" : s;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Counterfeit-coin strategies on parallel balance scales", "parweigh"};
  app.require_subcommand(1);

  int coins = 0, scales = 0, minutes = 0, max_minutes = 8, port = 8080, budget = 0;
  std::string problem = "just-find", supply = "none", potential = "unknown", out_path, path,
              adversary, bind = "127.0.0.1";
  bool is_static = false, exact = false;

  auto* capacity = app.add_subcommand("capacity", "Largest number of coins resolvable");
  capacity->add_option("--scales", scales)->required()->check(CLI::PositiveNumber);
  capacity->add_option("--minutes", minutes)->required()->check(CLI::NonNegativeNumber);
  capacity->add_option("--problem", problem);
  capacity->add_option("--supply", supply);
  capacity->add_option("--potential", potential);

  auto* solve = app.add_subcommand("solve", "Fewest minutes for a puzzle");
  solve->add_option("--coins", coins)->required()->check(CLI::PositiveNumber);
  solve->add_option("--scales", scales)->required()->check(CLI::PositiveNumber);
  solve->add_option("--problem", problem);
  solve->add_option("--supply", supply);
  solve->add_option("--max-minutes", max_minutes)->check(CLI::NonNegativeNumber);
  solve->add_flag("--exact", exact, "Use the exhaustive solver even where a formula applies");

  auto* build = app.add_subcommand("build", "Write a verified strategy tree");
  build->add_option("--coins", coins)->required()->check(CLI::PositiveNumber);
  build->add_option("--scales", scales)->required()->check(CLI::PositiveNumber);
  build->add_option("--minutes", minutes)->required()->check(CLI::NonNegativeNumber);
  build->add_option("--problem", problem);
  build->add_option("--supply", supply);
  build->add_option("--out", out_path)->required();

  auto* verify = app.add_subcommand("verify", "Check a strategy file against every hypothesis");
  verify->add_option("--strategy", path)->required();
  verify->add_flag("--static", is_static);

  auto* play = app.add_subcommand("play", "Play against the adversary on the terminal");
  play->add_option("--coins", coins)->required()->check(CLI::PositiveNumber);
  play->add_option("--scales", scales)->required()->check(CLI::PositiveNumber);
  play->add_option("--problem", problem);
  play->add_option("--supply", supply);
  play->add_option("--adversary", adversary);
  auto* budget_opt = play->add_option("--budget", budget)->check(CLI::PositiveNumber);

  auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
  serve->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve->add_option("--bind", bind);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (capacity->parsed()) return cmd_capacity(scales, minutes, problem, supply, potential, out);
    if (solve->parsed())
      return cmd_solve(coins, scales, problem, supply, max_minutes, exact, out);
    if (build->parsed())
      return cmd_build({coins, scales, problem_arg(problem), supply_arg(supply), minutes},
                       out_path, out, err);
    if (verify->parsed()) return cmd_verify(path, is_static, out);
    if (play->parsed())
      return cmd_play({coins, scales, problem_arg(problem), supply_arg(supply), 0}, adversary,
                      budget_opt->count() ? std::optional<int>(budget) : std::nullopt, in, out);
    if (serve->parsed()) return cmd_serve(port, bind, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.message << "\n";
    return kUsage;
  } catch (const PuzzleError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e);
  }
  return kUsage;
}

}  // namespace parweigh::cli
