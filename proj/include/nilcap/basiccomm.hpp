#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nilcap/errors.hpp"

namespace nilcap {

class CommTree;
using CommTreeP = std::shared_ptr<const CommTree>;

/// Immutable bracket tree over generator symbols x_1..x_r. A leaf is a
/// generator; a node [u,v] carries its cached weight wt(u)+wt(v).
class CommTree {
 public:
  static CommTreeP leaf(int gen);
  static CommTreeP node(CommTreeP left, CommTreeP right);

  bool is_leaf() const { return gen_ > 0; }
  int gen() const { return gen_; }  // 1-based; 0 for nodes
  const CommTreeP& left() const { return left_; }
  const CommTreeP& right() const { return right_; }
  int weight() const { return weight_; }
  int max_gen() const { return max_gen_; }

  /// Canonical text form: left spines flatten to comma lists, so
  /// [[x2,x1],x1] prints as "[x2,x1,x1]".
  std::string label() const;

  std::size_t hash() const { return hash_; }

 private:
  CommTree(int gen);
  CommTree(CommTreeP l, CommTreeP r);
  int gen_;
  CommTreeP left_, right_;
  int weight_;
  int max_gen_;
  std::size_t hash_;
};

bool tree_equal(const CommTreeP& a, const CommTreeP& b);

/// Hall's conditions (2a)-(2c): leaves are basic; [u,v] is basic iff u, v are
/// basic, u > v, and (when u = [s,t]) v >= t.
bool is_basic(const CommTreeP& t);

/// Total order on basic commutators: by weight, then recursively by
/// (right component, left component); weight-1 by generator index.
/// Rejects non-basic inputs.
int compare(const CommTreeP& a, const CommTreeP& b);

struct TwoGenShape {
  int prefix_gen;                 // the w in [x2,x1,w,...], 1 or 2
  std::vector<CommTreeP> tail;    // c_4, ..., c_r
};

/// Decomposes a basic commutator of weight >= 3 on two generators as the
/// left-normed [x2,x1,w,c_4,...,c_r] with w a generator.
TwoGenShape two_generator_shape(const CommTreeP& c);

/// Rebuilds the tree from a shape (inverse of two_generator_shape).
CommTreeP tree_from_shape(const TwoGenShape& shape);

/// The ordered sequence of basic commutators on r generators of weight <= k.
/// Trees are hash-consed: structurally equal subtrees share one node, so
/// index lookups are O(1) map hits.
class BasicSequence {
 public:
  BasicSequence(int generators, int max_weight);

  int generators() const { return r_; }
  int max_weight() const { return k_; }
  int size() const { return static_cast<int>(items_.size()); }

  const CommTreeP& item(int idx) const { return items_[idx]; }
  int weight_of(int idx) const { return items_[idx]->weight(); }
  const std::string& label_of(int idx) const { return labels_[idx]; }

  /// Index of a structurally equal basic commutator, if enumerated.
  std::optional<int> index_of(const CommTreeP& t) const;

  /// First index with the given weight (== size() if none).
  int weight_begin(int w) const { return weight_begin_[w]; }
  int count_of_weight(int w) const { return weight_begin_[w + 1] - weight_begin_[w]; }

 private:
  int r_, k_;
  std::vector<CommTreeP> items_;
  std::vector<std::string> labels_;
  std::vector<int> weight_begin_;  // size k_+2
  struct TreeKeyHash { std::size_t operator()(const CommTreeP& t) const { return t->hash(); } };
  struct TreeKeyEq { bool operator()(const CommTreeP& a, const CommTreeP& b) const { return tree_equal(a, b); } };
  std::unordered_map<CommTreeP, int, TreeKeyHash, TreeKeyEq> index_;
};

}  // namespace nilcap
