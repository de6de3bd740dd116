#include "parweigh/core.hpp"

#include <algorithm>
#include <array>

namespace parweigh {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kContradictoryOutcome: return "ContradictoryOutcome";
    case ErrorCode::kInfeasibleOutcome: return "InfeasibleOutcome";
    case ErrorCode::kIllegalWeighing: return "IllegalWeighing";
    case ErrorCode::kRangeExceeded: return "RangeExceeded";
    case ErrorCode::kNeedsSolver: return "NeedsSolver";
    case ErrorCode::kUnresolvableState: return "UnresolvableState";
    case ErrorCode::kCapacityExceeded: return "CapacityExceeded";
    case ErrorCode::kTwoCoinException: return "TwoCoinException";
    case ErrorCode::kNotSolvable: return "NotSolvable";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

int materialized_reals(const PuzzleConfig& cfg) {
  switch (cfg.supply.kind) {
    case Supply::Kind::kNone: return 0;
    case Supply::Kind::kFinite: return cfg.supply.count;
    case Supply::Kind::kUnlimited: return cfg.coins;
  }
  return 0;
}

void validate_config(const PuzzleConfig& cfg) {
  if (cfg.coins < 1) throw PuzzleError(ErrorCode::kInvalidArgument, "coins must be >= 1");
  if (cfg.scales < 1) throw PuzzleError(ErrorCode::kInvalidArgument, "scales must be >= 1");
  if (cfg.minutes < 0) throw PuzzleError(ErrorCode::kInvalidArgument, "minutes must be >= 0");
  if (cfg.supply.kind == Supply::Kind::kFinite && cfg.supply.count < 0)
    throw PuzzleError(ErrorCode::kInvalidArgument, "supply must be >= 0");
}

std::string_view to_string(Problem p) {
  return p == Problem::kJustFind ? "just-find" : "find-and-label";
}

std::string_view to_string(Sign s) { return s == Sign::kLight ? "light" : "heavy"; }

std::string_view to_string(CoinClass c) {
  switch (c) {
    case CoinClass::kUnknown: return "unknown";
    case CoinClass::kPotentiallyLight: return "potentially-light";
    case CoinClass::kPotentiallyHeavy: return "potentially-heavy";
    case CoinClass::kReal: return "real";
  }
  return "?";
}

std::optional<Problem> parse_problem(std::string_view text) {
  if (text == "just-find") return Problem::kJustFind;
  if (text == "find-and-label") return Problem::kFindAndLabel;
  return std::nullopt;
}

std::optional<Sign> parse_sign(std::string_view text) {
  if (text == "light") return Sign::kLight;
  if (text == "heavy") return Sign::kHeavy;
  return std::nullopt;
}

bool ParallelWeighing::idle() const {
  return std::all_of(loads.begin(), loads.end(), [](const ScaleLoad& l) { return l.idle(); });
}

std::optional<std::string> weighing_violation(const ParallelWeighing& w, int scales,
                                              int total_coins) {
  if (w.scales() != scales) return "wrong-scale-count";
  for (const auto& load : w.loads)
    if (load.left.size() != load.right.size()) return "pan-size-mismatch";
  std::vector<bool> seen(static_cast<std::size_t>(std::max(total_coins, 0)), false);
  for (const auto& load : w.loads) {
    for (const auto* pan : {&load.left, &load.right}) {
      for (CoinId id : *pan) {
        if (id < 0 || id >= total_coins) return "bad-coin-id";
        if (seen[id]) return "duplicate-coin";
        seen[id] = true;
      }
    }
  }
  return std::nullopt;
}

void require_legal(const ParallelWeighing& w, int scales, int total_coins) {
  if (auto reason = weighing_violation(w, scales, total_coins))
    throw PuzzleError(ErrorCode::kIllegalWeighing, "illegal weighing: " + *reason, *reason);
}

OutcomeVector::OutcomeVector(std::string symbols) : symbols_(std::move(symbols)) {}

std::optional<OutcomeVector> OutcomeVector::parse(std::string_view text, int scales) {
  if (static_cast<int>(text.size()) != scales) return std::nullopt;
  for (char ch : text)
    if (ch != '<' && ch != '=' && ch != '>') return std::nullopt;
  return OutcomeVector(std::string(text));
}

int OutcomeVector::tilted_scales() const {
  return static_cast<int>(std::count_if(symbols_.begin(), symbols_.end(),
                                        [](char ch) { return ch != '='; }));
}

KnowledgeState KnowledgeState::fresh(int suspects, int reals) {
  KnowledgeState s;
  s.suspects_ = suspects;
  s.masks_.assign(static_cast<std::size_t>(suspects + reals), 0);
  std::fill_n(s.masks_.begin(), suspects, kLightBit | kHeavyBit);
  s.count_ = 2 * static_cast<std::size_t>(suspects);
  return s;
}

KnowledgeState KnowledgeState::from_hypotheses(int suspects, int reals,
                                               std::span<const Hypothesis> hypotheses) {
  KnowledgeState s;
  s.suspects_ = suspects;
  s.masks_.assign(static_cast<std::size_t>(suspects + reals), 0);
  for (const auto& h : hypotheses) {
    if (h.coin < 0 || h.coin >= suspects)
      throw PuzzleError(ErrorCode::kInvalidArgument,
                        "hypothesis names non-suspect coin " + std::to_string(h.coin));
    auto bit = h.sign == Sign::kLight ? kLightBit : kHeavyBit;
    if (!(s.masks_[h.coin] & bit)) ++s.count_;
    s.masks_[h.coin] |= bit;
  }
  return s;
}

bool KnowledgeState::contains(Hypothesis h) const {
  if (h.coin < 0 || h.coin >= total_coins()) return false;
  return masks_[h.coin] & (h.sign == Sign::kLight ? kLightBit : kHeavyBit);
}

std::vector<Hypothesis> KnowledgeState::hypotheses() const {
  std::vector<Hypothesis> out;
  out.reserve(count_);
  for (CoinId c = 0; c < suspects_; ++c) {
    if (masks_[c] & kLightBit) out.push_back({c, Sign::kLight});
    if (masks_[c] & kHeavyBit) out.push_back({c, Sign::kHeavy});
  }
  return out;
}

CoinClass KnowledgeState::classify(CoinId coin) const {
  switch (masks_.at(coin)) {
    case kLightBit | kHeavyBit: return CoinClass::kUnknown;
    case kLightBit: return CoinClass::kPotentiallyLight;
    case kHeavyBit: return CoinClass::kPotentiallyHeavy;
    default: return CoinClass::kReal;
  }
}

std::vector<CoinId> KnowledgeState::coins_of(CoinClass cls) const {
  std::vector<CoinId> out;
  for (CoinId c = 0; c < total_coins(); ++c)
    if (classify(c) == cls) out.push_back(c);
  return out;
}

int KnowledgeState::suspect_count() const {
  return static_cast<int>(std::count_if(masks_.begin(), masks_.end(),
                                        [](std::uint8_t m) { return m != 0; }));
}

std::vector<CoinClass> classify(const KnowledgeState& s) {
  std::vector<CoinClass> out;
  out.reserve(s.suspects());
  for (CoinId c = 0; c < s.suspects(); ++c) out.push_back(s.classify(c));
  return out;
}

OutcomeVector induced_outcome(Hypothesis h, const ParallelWeighing& w) {
  std::string symbols(w.loads.size(), '=');
  for (std::size_t j = 0; j < w.loads.size(); ++j) {
    const auto& load = w.loads[j];
    bool on_left = std::find(load.left.begin(), load.left.end(), h.coin) != load.left.end();
    bool on_right = std::find(load.right.begin(), load.right.end(), h.coin) != load.right.end();
    if (on_left) symbols[j] = h.sign == Sign::kLight ? '<' : '>';
    else if (on_right) symbols[j] = h.sign == Sign::kLight ? '>' : '<';
  }
  return OutcomeVector(std::move(symbols));
}

namespace {

// Per-coin placement: 0 off the scales, +(j+1) left pan of scale j,
// -(j+1) right pan.
std::vector<int> placements(const ParallelWeighing& w, int total_coins) {
  std::vector<int> pos(static_cast<std::size_t>(total_coins), 0);
  for (std::size_t j = 0; j < w.loads.size(); ++j) {
    for (CoinId id : w.loads[j].left) pos.at(id) = static_cast<int>(j) + 1;
    for (CoinId id : w.loads[j].right) pos.at(id) = -static_cast<int>(j) - 1;
  }
  return pos;
}

// Outcome index in [0, 2k]: 0 all balanced, 2j+1 scale j '<', 2j+2 scale j '>'.
int outcome_index(int placement, Sign sign) {
  if (placement == 0) return 0;
  int j = std::abs(placement) - 1;
  bool left_lighter = (placement > 0) == (sign == Sign::kLight);
  return 2 * j + (left_lighter ? 1 : 2);
}

OutcomeVector outcome_from_index(int index, int scales) {
  std::string symbols(scales, '=');
  if (index > 0) symbols[(index - 1) / 2] = (index % 2 == 1) ? '<' : '>';
  return OutcomeVector(std::move(symbols));
}

}  // namespace

std::vector<std::pair<OutcomeVector, KnowledgeState>> partition_outcomes(
    const KnowledgeState& s, const ParallelWeighing& w) {
  int k = w.scales();
  auto pos = placements(w, s.total_coins());
  std::vector<KnowledgeState> cells(2 * k + 1);
  for (auto& cell : cells) {
    cell.suspects_ = s.suspects_;
    cell.masks_.assign(s.masks_.size(), 0);
  }
  for (CoinId c = 0; c < s.suspects_; ++c) {
    for (Sign sign : {Sign::kLight, Sign::kHeavy}) {
      auto bit = sign == Sign::kLight ? KnowledgeState::kLightBit : KnowledgeState::kHeavyBit;
      if (!(s.masks_[c] & bit)) continue;
      auto& cell = cells[outcome_index(pos[c], sign)];
      cell.masks_[c] |= bit;
      ++cell.count_;
    }
  }
  std::vector<std::pair<OutcomeVector, KnowledgeState>> out;
  for (int i = 0; i <= 2 * k; ++i)
    if (cells[i].count_ > 0) out.emplace_back(outcome_from_index(i, k), std::move(cells[i]));
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

KnowledgeState apply_outcome(const KnowledgeState& s, const ParallelWeighing& w,
                             const OutcomeVector& o) {
  if (o.scales() != w.scales())
    throw PuzzleError(ErrorCode::kInvalidArgument, "outcome length does not match scale count");
  for (auto& [outcome, cell] : partition_outcomes(s, w))
    if (outcome == o) return std::move(cell);
  throw PuzzleError(ErrorCode::kContradictoryOutcome,
                    "outcome " + o.str() + " is inconsistent with every remaining hypothesis");
}

std::vector<OutcomeVector> feasible_outcomes(const KnowledgeState& s, const ParallelWeighing& w) {
  std::vector<OutcomeVector> out;
  for (auto& [outcome, cell] : partition_outcomes(s, w)) out.push_back(outcome);
  return out;
}

bool is_resolved(const KnowledgeState& s, Problem problem) {
  if (s.empty()) return false;
  if (problem == Problem::kFindAndLabel) return s.size() == 1;
  return s.suspect_count() == 1;
}

std::pair<CoinId, std::optional<Sign>> forced_answer(const KnowledgeState& s) {
  auto hyps = s.hypotheses();
  if (hyps.empty()) throw PuzzleError(ErrorCode::kInvalidArgument, "empty knowledge state");
  CoinId coin = hyps.front().coin;
  std::optional<Sign> sign;
  if (hyps.size() == 1) sign = hyps.front().sign;
  return {coin, sign};
}

}  // namespace parweigh
