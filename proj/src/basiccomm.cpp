#include "nilcap/basiccomm.hpp"

#include <algorithm>

namespace nilcap {

CommTree::CommTree(int gen)
    : gen_(gen), weight_(1), max_gen_(gen) {
  hash_ = std::hash<int>()(gen) * 0x9e3779b97f4a7c15ull + 1;
}

CommTree::CommTree(CommTreeP l, CommTreeP r)
    : gen_(0), left_(std::move(l)), right_(std::move(r)) {
  weight_ = left_->weight() + right_->weight();
  max_gen_ = std::max(left_->max_gen(), right_->max_gen());
  hash_ = left_->hash() * 0x9e3779b97f4a7c15ull ^ (right_->hash() + 0x517cc1b727220a95ull);
}

CommTreeP CommTree::leaf(int gen) {
  if (gen < 1) throw computation_error("generator index must be >= 1");
  return CommTreeP(new CommTree(gen));
}

CommTreeP CommTree::node(CommTreeP left, CommTreeP right) {
  if (!left || !right) throw computation_error("null commutator component");
  return CommTreeP(new CommTree(std::move(left), std::move(right)));
}

std::string CommTree::label() const {
  if (is_leaf()) return "x" + std::to_string(gen_);
  // flatten the left spine: [[..[a,b],c..],d] -> "[a,b,c,..,d]"
  std::vector<const CommTree*> rights;
  const CommTree* cur = this;
  while (!cur->is_leaf()) {
    rights.push_back(cur->right_.get());
    cur = cur->left_.get();
  }
  std::string out = "[";
  out += cur->label();
  for (auto it = rights.rbegin(); it != rights.rend(); ++it) {
    out += ",";
    out += (*it)->label();
  }
  out += "]";
  return out;
}

bool tree_equal(const CommTreeP& a, const CommTreeP& b) {
  if (a.get() == b.get()) return true;
  if (a->is_leaf() != b->is_leaf() || a->weight() != b->weight() || a->hash() != b->hash())
    return false;
  if (a->is_leaf()) return a->gen() == b->gen();
  return tree_equal(a->left(), b->left()) && tree_equal(a->right(), b->right());
}

static int compare_unchecked(const CommTreeP& a, const CommTreeP& b) {
  if (a->weight() != b->weight()) return a->weight() < b->weight() ? -1 : 1;
  if (a->is_leaf()) return a->gen() == b->gen() ? 0 : (a->gen() < b->gen() ? -1 : 1);
  int c = compare_unchecked(a->right(), b->right());
  if (c != 0) return c;
  return compare_unchecked(a->left(), b->left());
}

bool is_basic(const CommTreeP& t) {
  if (t->is_leaf()) return true;
  const CommTreeP& u = t->left();
  const CommTreeP& v = t->right();
  if (!is_basic(u) || !is_basic(v)) return false;
  if (compare_unchecked(u, v) <= 0) return false;
  if (!u->is_leaf() && compare_unchecked(v, u->right()) < 0) return false;
  return true;
}

int compare(const CommTreeP& a, const CommTreeP& b) {
  if (!is_basic(a) || !is_basic(b))
    throw computation_error("compare is defined on basic commutators only");
  return compare_unchecked(a, b);
}

TwoGenShape two_generator_shape(const CommTreeP& c) {
  if (c->max_gen() > 2)
    throw computation_error("two_generator_shape needs a commutator on two generators");
  if (c->weight() < 3)
    throw computation_error("two_generator_shape needs weight >= 3");
  if (!is_basic(c))
    throw computation_error("two_generator_shape needs a basic commutator");
  TwoGenShape shape;
  CommTreeP cur = c;
  while (!cur->left()->is_leaf() && cur->left()->weight() >= 3) {
    shape.tail.push_back(cur->right());
    cur = cur->left();
  }
  // cur is now [[x2,x1], w]
  const CommTreeP& core = cur->left();
  if (core->is_leaf() || !core->left()->is_leaf() || !core->right()->is_leaf() ||
      core->left()->gen() != 2 || core->right()->gen() != 1 || !cur->right()->is_leaf())
    throw computation_error("not of the left-normed [x2,x1,w,...] form");
  shape.prefix_gen = cur->right()->gen();
  std::reverse(shape.tail.begin(), shape.tail.end());
  return shape;
}

CommTreeP tree_from_shape(const TwoGenShape& shape) {
  CommTreeP t = CommTree::node(CommTree::node(CommTree::leaf(2), CommTree::leaf(1)),
                               CommTree::leaf(shape.prefix_gen));
  for (const auto& c : shape.tail) t = CommTree::node(t, c);
  return t;
}

BasicSequence::BasicSequence(int generators, int max_weight) : r_(generators), k_(max_weight) {
  if (r_ < 1 || r_ > 16)
    throw computation_error("generator count must be in [1, 16], got " + std::to_string(r_));
  if (k_ < 1 || k_ > 10)
    throw computation_error("weight cap must be in [1, 10], got " + std::to_string(k_));
  constexpr std::size_t kMaxItems = 1u << 20;

  weight_begin_.assign(k_ + 2, 0);
  for (int g = 1; g <= r_; ++g) items_.push_back(CommTree::leaf(g));
  weight_begin_[1] = 0;
  for (int w = 2; w <= k_ + 1; ++w) weight_begin_[w] = r_;
  for (int i = 0; i < r_; ++i) index_[items_[i]] = i;

  for (int n = 2; n <= k_; ++n) {
    // all pairs (u, v) with wt u + wt v = n satisfying (2a)-(2c), ordered by
    // (index of v, index of u)
    std::vector<std::pair<std::pair<int, int>, CommTreeP>> found;
    for (int wu = 1; wu < n; ++wu) {
      int wv = n - wu;
      for (int iu = weight_begin_[wu]; iu < weight_begin_[wu + 1]; ++iu) {
        for (int iv = weight_begin_[wv]; iv < weight_begin_[wv + 1]; ++iv) {
          if (iu <= iv) continue;  // u > v
          const CommTreeP& u = items_[iu];
          const CommTreeP& v = items_[iv];
          if (!u->is_leaf()) {
            auto it = index_.find(u->right());
            if (iv < it->second) continue;  // v >= right component of u
          }
          found.push_back({{iv, iu}, CommTree::node(u, v)});
        }
      }
    }
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& f : found) items_.push_back(std::move(f.second));
    weight_begin_[n + 1] = static_cast<int>(items_.size());
    if (items_.size() > kMaxItems)
      throw cap_error("basic-commutator sequence exceeds " + std::to_string(kMaxItems) +
                      " items; reduce generators or class");
    // keep the index fresh for the (2c) lookups of the next weight
    for (int i = weight_begin_[n]; i < weight_begin_[n + 1]; ++i) index_[items_[i]] = i;
  }
  labels_.reserve(items_.size());
  for (const auto& t : items_) labels_.push_back(t->label());
}

std::optional<int> BasicSequence::index_of(const CommTreeP& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace nilcap
