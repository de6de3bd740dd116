#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "parweigh/core.hpp"

namespace parweigh {

struct Branch;

struct AnswerNode {
  CoinId coin = 0;
  std::optional<Sign> label;  // nullopt = unspecified

  bool operator==(const AnswerNode&) const = default;
};

struct WeighNode {
  ParallelWeighing weighing;
  std::vector<Branch> children;  // ascending by outcome

  bool operator==(const WeighNode& other) const;
};

// Adaptive strategy: a weighing with one child per reachable outcome, or a
// final answer.
struct StrategyNode {
  std::variant<AnswerNode, WeighNode> content;

  bool is_answer() const { return std::holds_alternative<AnswerNode>(content); }
  const AnswerNode& answer() const { return std::get<AnswerNode>(content); }
  const WeighNode& weigh() const { return std::get<WeighNode>(content); }
  WeighNode& weigh() { return std::get<WeighNode>(content); }

  // nullptr when this is an answer or the outcome has no child.
  const StrategyNode* child(const OutcomeVector& o) const;

  bool operator==(const StrategyNode&) const = default;
};

struct Branch {
  OutcomeVector outcome;
  StrategyNode node;

  bool operator==(const Branch&) const = default;
};

using StrategyTree = StrategyNode;

inline StrategyNode make_answer(CoinId coin, std::optional<Sign> label = std::nullopt) {
  return StrategyNode{AnswerNode{coin, label}};
}

int tree_depth(const StrategyNode& t);
std::size_t tree_size(const StrategyNode& t);

}  // namespace parweigh
