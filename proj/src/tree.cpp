#include "parweigh/tree.hpp"

#include <algorithm>

namespace parweigh {

bool WeighNode::operator==(const WeighNode& other) const {
  return weighing == other.weighing && children == other.children;
}

const StrategyNode* StrategyNode::child(const OutcomeVector& o) const {
  if (is_answer()) return nullptr;
  const auto& kids = weigh().children;
  auto it = std::lower_bound(kids.begin(), kids.end(), o,
                             [](const Branch& b, const OutcomeVector& key) { return b.outcome < key; });
  if (it == kids.end() || it->outcome != o) return nullptr;
  return &it->node;
}

int tree_depth(const StrategyNode& t) {
  if (t.is_answer()) return 0;
  int deepest = 0;
  for (const auto& b : t.weigh().children) deepest = std::max(deepest, tree_depth(b.node));
  return deepest + 1;
}

std::size_t tree_size(const StrategyNode& t) {
  std::size_t n = 1;
  if (!t.is_answer())
    for (const auto& b : t.weigh().children) n += tree_size(b.node);
  return n;
}

}  // namespace parweigh
