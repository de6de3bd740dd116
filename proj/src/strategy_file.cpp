#include "parweigh/strategy_file.hpp"

#include <algorithm>
#include <charconv>

#include <json.hpp>

namespace parweigh::verify {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw PuzzleError(ErrorCode::kParseError, what); }

json config_json(const PuzzleConfig& cfg) {
  json supply;
  switch (cfg.supply.kind) {
    case Supply::Kind::kNone: supply = "none"; break;
    case Supply::Kind::kUnlimited: supply = "unlimited"; break;
    case Supply::Kind::kFinite: supply = cfg.supply.count; break;
  }
  return {{"coins", cfg.coins},
          {"scales", cfg.scales},
          {"minutes", cfg.minutes},
          {"problem", std::string(to_string(cfg.problem))},
          {"supply", supply}};
}

json weighing_json(const ParallelWeighing& w) {
  json scales = json::array();
  for (const auto& load : w.loads) scales.push_back({{"left", load.left}, {"right", load.right}});
  return scales;
}

json node_json(const StrategyNode& node) {
  if (node.is_answer()) {
    const auto& a = node.answer();
    json label = nullptr;
    if (a.label) label = std::string(to_string(*a.label));
    return {{"type", "answer"}, {"coin", a.coin}, {"label", label}};
  }
  const auto& w = node.weigh();
  json children = json::object();
  for (const auto& b : w.children) children[b.outcome.str()] = node_json(b.node);
  return {{"type", "weigh"}, {"scales", weighing_json(w.weighing)}, {"children", children}};
}

const json& field(const json& j, const char* name) {
  if (!j.is_object()) bad("expected an object");
  auto it = j.find(name);
  if (it == j.end()) bad(std::string("missing field \"") + name + "\"");
  return *it;
}

int int_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer()) bad(std::string("field \"") + name + "\" must be an integer");
  return v.get<int>();
}

PuzzleConfig parse_config(const json& j) {
  PuzzleConfig cfg;
  cfg.coins = int_field(j, "coins");
  cfg.scales = int_field(j, "scales");
  cfg.minutes = int_field(j, "minutes");
  const json& p = field(j, "problem");
  if (!p.is_string()) bad("problem must be a string");
  auto problem = parse_problem(p.get<std::string>());
  if (!problem) bad("unknown problem \"" + p.get<std::string>() + "\"");
  cfg.problem = *problem;
  const json& s = field(j, "supply");
  if (s.is_number_integer()) {
    if (s.get<int>() < 0) bad("supply must be >= 0");
    cfg.supply = Supply::finite(s.get<int>());
  } else if (s.is_string()) {
    auto supply = parse_supply(s.get<std::string>());
    if (!supply) bad("unknown supply \"" + s.get<std::string>() + "\"");
    cfg.supply = *supply;
  } else {
    bad("supply must be \"none\", \"unlimited\" or an integer");
  }
  try {
    validate_config(cfg);
  } catch (const PuzzleError& e) {
    bad(e.what());
  }
  return cfg;
}

std::vector<CoinId> parse_ids(const json& j) {
  if (!j.is_array()) bad("pan must be an array of coin ids");
  std::vector<CoinId> ids;
  for (const auto& v : j) {
    if (!v.is_number_integer()) bad("coin ids must be integers");
    ids.push_back(v.get<CoinId>());
  }
  return ids;
}

ParallelWeighing parse_weighing(const json& j) {
  if (!j.is_array()) bad("scales must be an array");
  ParallelWeighing w;
  for (const auto& load : j)
    w.loads.push_back({parse_ids(field(load, "left")), parse_ids(field(load, "right"))});
  return w;
}

StrategyNode parse_node(const json& j, int scales) {
  const json& type = field(j, "type");
  if (type == "answer") {
    AnswerNode a;
    a.coin = int_field(j, "coin");
    auto it = j.find("label");
    if (it != j.end() && !it->is_null()) {
      if (!it->is_string()) bad("label must be a string or null");
      auto sign = parse_sign(it->get<std::string>());
      if (!sign) bad("unknown label \"" + it->get<std::string>() + "\"");
      a.label = sign;
    }
    return StrategyNode{a};
  }
  if (type != "weigh") bad("node type must be \"weigh\" or \"answer\"");
  WeighNode w;
  w.weighing = parse_weighing(field(j, "scales"));
  const json& children = field(j, "children");
  if (!children.is_object()) bad("children must be an object");
  for (const auto& [key, child] : children.items()) {
    auto o = OutcomeVector::parse(key, scales);
    if (!o) bad("bad outcome key \"" + key + "\"");
    w.children.push_back({*o, parse_node(child, scales)});
  }
  std::sort(w.children.begin(), w.children.end(),
            [](const Branch& x, const Branch& y) { return x.outcome < y.outcome; });
  return StrategyNode{std::move(w)};
}

std::string dump(const json& j, int indent) { return j.dump(indent) + "\n"; }

}  // namespace

std::string supply_text(Supply s) {
  switch (s.kind) {
    case Supply::Kind::kNone: return "none";
    case Supply::Kind::kUnlimited: return "unlimited";
    case Supply::Kind::kFinite: break;
  }
  return std::to_string(s.count);
}

std::optional<Supply> parse_supply(std::string_view text) {
  if (text == "none") return Supply::none();
  if (text == "unlimited") return Supply::unlimited();
  int r = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), r);
  if (ec != std::errc{} || end != text.data() + text.size() || r < 0 || text.empty())
    return std::nullopt;
  return Supply::finite(r);
}

std::string serialize(const PuzzleConfig& cfg, const StrategyTree& tree, int indent) {
  return dump({{"config", config_json(cfg)}, {"root", node_json(tree)}}, indent);
}

std::string serialize(const PuzzleConfig& cfg, const StaticStrategy& ss, int indent) {
  json weighings = json::array();
  for (const auto& w : ss.weighings) weighings.push_back({{"scales", weighing_json(w)}});
  return dump({{"config", config_json(cfg)}, {"weighings", weighings}}, indent);
}

StrategyFile parse_strategy_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  StrategyFile file;
  file.config = parse_config(field(doc, "config"));
  if (doc.contains("weighings")) {
    const json& ws = doc["weighings"];
    if (!ws.is_array()) bad("weighings must be an array");
    StaticStrategy ss;
    for (const auto& w : ws) ss.weighings.push_back(parse_weighing(field(w, "scales")));
    file.body = std::move(ss);
  } else {
    file.body = parse_node(field(doc, "root"), file.config.scales);
  }
  return file;
}

}  // namespace parweigh::verify
