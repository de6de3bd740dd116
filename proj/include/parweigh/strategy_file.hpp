#pragma once

// JSON strategy documents:
//   {"config": {"coins", "scales", "minutes", "problem", "supply"}, "root": node}
// with weigh nodes {"type":"weigh","scales":[{"left":[..],"right":[..]}..],
// "children":{"<=": node, ..}} and answer nodes
// {"type":"answer","coin":id,"label":"light"|"heavy"|null}. Static
// strategies replace "root" by "weighings": [{"scales":[..]}, ..].

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "parweigh/core.hpp"
#include "parweigh/tree.hpp"
#include "parweigh/verify.hpp"

namespace parweigh::verify {

struct StrategyFile {
  PuzzleConfig config;
  std::variant<StrategyTree, StaticStrategy> body;

  bool is_static() const { return std::holds_alternative<StaticStrategy>(body); }
  const StrategyTree& tree() const { return std::get<StrategyTree>(body); }
  const StaticStrategy& static_strategy() const { return std::get<StaticStrategy>(body); }
};

std::string serialize(const PuzzleConfig& cfg, const StrategyTree& tree, int indent = -1);
std::string serialize(const PuzzleConfig& cfg, const StaticStrategy& ss, int indent = -1);

// Throws kParseError on malformed JSON or schema violations. Children are
// sorted by outcome; legality is left to check_legal.
StrategyFile parse_strategy_file(std::string_view text);

// Shared with the service wire format.
std::string supply_text(Supply s);
std::optional<Supply> parse_supply(std::string_view text);

}  // namespace parweigh::verify
