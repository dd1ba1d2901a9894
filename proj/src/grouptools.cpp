#include "nilcap/grouptools.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "nilcap/valuation.hpp"

namespace nilcap {

GVec FiniteGroup::comm(const GVec& a, const GVec& b) const {
  return mul(mul(inv(a), inv(b)), mul(a, b));
}

GVec FiniteGroup::pw(const GVec& a, const mpz_class& n) const {
  if (n == 0) return identity();
  const mpz_class na = abs(n);
  GVec base = n > 0 ? a : inv(a);
  GVec acc = identity();
  for (long bit = static_cast<long>(mpz_sizeinbase(na.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
    acc = mul(acc, acc);
    if (mpz_tstbit(na.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) acc = mul(acc, base);
  }
  return acc;
}

GVec NilprodGroup::identity() const { return nilcap::identity(basis_).e; }
GVec NilprodGroup::mul(const GVec& a, const GVec& b) const {
  return nilcap::mul(unwrap(a), unwrap(b)).e;
}
GVec NilprodGroup::inv(const GVec& a) const { return nilcap::inv(unwrap(a)).e; }
std::vector<GVec> NilprodGroup::generators() const {
  std::vector<GVec> out;
  for (int g = 1; g <= basis_->spec().rank(); ++g) out.push_back(nilcap::generator(basis_, g).e);
  return out;
}
mpz_class NilprodGroup::order() const { return basis_->order(); }

void NilprodGroup::enumerate(const std::function<void(const GVec&)>& visit,
                             std::uint64_t cap) const {
  if (!basis_->finite()) throw computation_error("cannot enumerate an infinite group");
  if (basis_->order() > static_cast<unsigned long>(cap))
    throw cap_error("group order " + basis_->order().get_str() + " exceeds cap " +
                    std::to_string(cap));
  GVec v(basis_->size(), 0);
  for (;;) {
    visit(v);
    int i = 0;
    for (; i < basis_->size(); ++i) {
      if (++v[i] < static_cast<std::int64_t>(basis_->modulus(i))) break;
      v[i] = 0;
    }
    if (i == basis_->size()) return;
  }
}

std::string NilprodGroup::show(const GVec& a) const {
  std::string s = format(unwrap(a));
  return s.empty() ? "e" : s;
}

DihedralGroup::DihedralGroup(std::uint64_t n) : n_(static_cast<std::int64_t>(n)) {
  if (n < 2) throw computation_error("dihedral groups need rotation order >= 2");
}
GVec DihedralGroup::identity() const { return {0, 0}; }
GVec DihedralGroup::mul(const GVec& a, const GVec& b) const {
  // (r^a1 f^s1)(r^a2 f^s2) = r^(a1 + (-1)^s1 a2) f^(s1+s2)
  std::int64_t rot = a[0] + (a[1] ? n_ - b[0] : b[0]);
  return {rot % n_, (a[1] + b[1]) % 2};
}
GVec DihedralGroup::inv(const GVec& a) const {
  if (a[1]) return a;
  return {(n_ - a[0]) % n_, 0};
}
std::vector<GVec> DihedralGroup::generators() const { return {{0, 1}, {1, 0}}; }
mpz_class DihedralGroup::order() const { return mpz_class(2 * static_cast<long>(n_)); }
void DihedralGroup::enumerate(const std::function<void(const GVec&)>& visit,
                              std::uint64_t cap) const {
  if (static_cast<std::uint64_t>(2 * n_) > cap) throw cap_error("dihedral order exceeds cap");
  for (std::int64_t f = 0; f < 2; ++f)
    for (std::int64_t a = 0; a < n_; ++a) visit({a, f});
}
std::string DihedralGroup::show(const GVec& a) const {
  std::string s;
  if (a[0]) s += "r^" + std::to_string(a[0]);
  if (a[1]) s += (s.empty() ? "" : " ") + std::string("f");
  return s.empty() ? "e" : s;
}

bool Subgroup::contains(const GVec& v) const {
  return std::binary_search(elements.begin(), elements.end(), v);
}

Subgroup closure(const FiniteGroupP& parent, std::vector<GVec> gens, std::uint64_t cap) {
  if (cap < 1) throw computation_error("closure cap must be positive");
  std::set<GVec> seen;
  seen.insert(parent->identity());
  // include inverses so the closure is a subgroup even with non-involutive gens
  std::vector<GVec> work;
  for (const auto& g : gens) {
    if (seen.insert(g).second) work.push_back(g);
    GVec gi = parent->inv(g);
    if (seen.insert(gi).second) work.push_back(gi);
  }
  std::vector<GVec> frontier = work;
  std::vector<GVec> genset = work;
  while (!frontier.empty()) {
    std::vector<GVec> next;
    for (const auto& f : frontier)
      for (const auto& g : genset) {
        GVec h = parent->mul(f, g);
        if (seen.insert(h).second) {
          next.push_back(h);
          if (seen.size() > cap)
            throw cap_error("subgroup closure exceeded cap " + std::to_string(cap));
        }
      }
    frontier = std::move(next);
  }
  Subgroup out;
  out.parent = parent;
  out.generators = std::move(gens);
  out.elements.assign(seen.begin(), seen.end());
  mpz_class n = parent->order();
  if (n != 0 && !mpz_divisible_ui_p(n.get_mpz_t(), out.elements.size()))
    throw computation_error("internal: closure size does not divide the group order");
  return out;
}

Subgroup lower_central(const FiniteGroupP& group, int i, std::uint64_t cap) {
  if (i < 1) throw computation_error("lower central series index starts at 1");
  std::vector<GVec> gens = group->generators();
  Subgroup cur = closure(group, gens, cap);  // G_1 = G
  for (int term = 2; term <= i; ++term) {
    // [H, G] is generated by [h, x] over h in H, x among the group generators:
    // brackets with arbitrary elements reduce to these against closure.
    std::vector<GVec> brackets;
    for (const auto& h : cur.elements)
      for (const auto& x : gens) {
        GVec c = group->comm(h, x);
        if (c != group->identity()) brackets.push_back(c);
      }
    std::sort(brackets.begin(), brackets.end());
    brackets.erase(std::unique(brackets.begin(), brackets.end()), brackets.end());
    cur = closure(group, std::move(brackets), cap);
    if (cur.size() == 1) break;  // stabilised at the trivial subgroup
  }

  // cross-check against the basic-commutator span in the generic normal form
  if (auto np = std::dynamic_pointer_cast<const NilprodGroup>(group)) {
    const NpBasisP& basis = np->basis();
    if (basis->spec().regime != Regime::special_2_3 && basis->finite()) {
      std::vector<GVec> span_gens;
      for (int idx = 0; idx < basis->size(); ++idx)
        if (basis->weight(idx) >= i) span_gens.push_back(basis_unit(basis, idx).e);
      Subgroup span = closure(group, std::move(span_gens), cap);
      if (span.elements != cur.elements)
        throw computation_error(
            "lower-central cross-check failed: commutator closure differs from the "
            "span of basic commutators of weight >= " + std::to_string(i));
    }
  }
  return cur;
}

Subgroup center_bruteforce(const FiniteGroupP& group, std::uint64_t cap) {
  std::vector<GVec> gens = group->generators();
  std::vector<GVec> central;
  GVec id = group->identity();
  group->enumerate(
      [&](const GVec& g) {
        for (const auto& x : gens)
          if (group->comm(g, x) != id) return;
        central.push_back(g);
      },
      cap);
  std::sort(central.begin(), central.end());
  Subgroup out;
  out.parent = group;
  out.generators = central;
  out.elements = std::move(central);
  mpz_class n = group->order();
  if (n != 0 && !mpz_divisible_ui_p(n.get_mpz_t(), out.elements.size()))
    throw computation_error("internal: center size does not divide the group order");
  return out;
}

std::vector<Element> center_formula(const NpBasisP& basis) {
  const GroupSpec& spec = basis->spec();
  const int r = spec.rank();
  const int k = spec.class_k;
  std::vector<Element> gens;

  if (!basis->finite())
    throw regime_error("no closed-form center for groups with infinite factors");

  if (k == 1) {
    for (int g = 1; g <= r; ++g) gens.push_back(generator(basis, g));
    return gens;
  }
  if (r == 1) {  // cyclic, abelian
    gens.push_back(generator(basis, 1));
    return gens;
  }

  if (spec.regime == Regime::special_2_3) {
    // x_r^(2^(a_{r-1}+1)), each [x_j,x_i]^(2^(a_i)), and all of G_3
    auto alpha = [&](int i) {
      unsigned a = 0;
      for (std::uint64_t m = spec.orders[i]; m > 1; m /= 2) ++a;
      return a;
    };
    mpz_class top = 1;
    top <<= alpha(r - 2) + 1;
    gens.push_back(pow(generator(basis, r), top));
    NpOps ops(basis);
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        Element cji = ops.comm(generator(basis, j + 1), generator(basis, i + 1));
        gens.push_back(pow(cji, mpz_class(1) << alpha(i)));
        gens.push_back(ops.comm(cji, generator(basis, i + 1)));  // [x_j,x_i,x_i]
        gens.push_back(ops.comm(cji, generator(basis, j + 1)));  // [x_j,x_i,x_j]
      }
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        for (int kk = j + 1; kk < r; ++kk) {
          Element cji = ops.comm(generator(basis, j + 1), generator(basis, i + 1));
          Element cki = ops.comm(generator(basis, kk + 1), generator(basis, i + 1));
          gens.push_back(ops.comm(cji, generator(basis, kk + 1)));
          gens.push_back(ops.comm(cki, generator(basis, j + 1)));
        }
    return gens;
  }

  if (k == 2) {
    // g = prod x_i^{a_i} central iff every alpha_{ji} divides a_i; the
    // commutator block is always central
    for (int i = 0; i < r; ++i) {
      std::uint64_t l = 1;
      for (int j = 0; j < r; ++j)
        if (j != i) l = std::lcm(l, std::gcd(spec.orders[i], spec.orders[j]));
      if (l != 0 && spec.orders[i] != 0)
        gens.push_back(pow(generator(basis, i + 1), mpz_class(static_cast<unsigned long>(l))));
    }
    for (int idx = 0; idx < basis->size(); ++idx)
      if (basis->weight(idx) == 2) gens.push_back(basis_unit(basis, idx));
    return gens;
  }

  // cyclic p-groups with p >= k: Z = < x_r^(p^(a_{r-1})), weight-k block >
  std::uint64_t p = 0;
  std::vector<unsigned> alpha(r);
  for (int i = 0; i < r; ++i) {
    std::uint64_t m = spec.orders[i];
    std::uint64_t q = m;
    for (std::uint64_t d = 2; d <= m / d; ++d)
      if (m % d == 0) {
        q = d;
        break;
      }
    unsigned a = 0;
    while (m % q == 0) {
      m /= q;
      ++a;
    }
    if (m != 1)
      throw regime_error("no closed-form center: factors are not powers of one prime");
    if (p == 0) p = q;
    if (q != p)
      throw regime_error("no closed-form center: factors are not powers of one prime");
    alpha[i] = a;
  }
  if (p < static_cast<std::uint64_t>(k))
    throw regime_error("no closed-form center: the theorems need p >= k");
  mpz_class step;
  mpz_ui_pow_ui(step.get_mpz_t(), p, alpha[r - 2]);
  gens.push_back(pow(generator(basis, r), step));
  for (int idx = 0; idx < basis->size(); ++idx)
    if (basis->weight(idx) == k) gens.push_back(basis_unit(basis, idx));
  return gens;
}

QuotientGroup::QuotientGroup(FiniteGroupP parent, Subgroup kernel)
    : parent_(std::move(parent)), kernel_(std::move(kernel)) {}

GVec QuotientGroup::canon(const GVec& g) const {
  {
    std::lock_guard<std::mutex> lk(cache_lock_);
    auto it = canon_cache_.find(g);
    if (it != canon_cache_.end()) return it->second;
  }
  GVec best = g;
  for (const auto& n : kernel_.elements) {
    GVec h = parent_->mul(g, n);
    if (h < best) best = std::move(h);
  }
  std::lock_guard<std::mutex> lk(cache_lock_);
  canon_cache_.emplace(g, best);
  return best;
}

GVec QuotientGroup::identity() const { return canon(parent_->identity()); }
GVec QuotientGroup::mul(const GVec& a, const GVec& b) const { return canon(parent_->mul(a, b)); }
GVec QuotientGroup::inv(const GVec& a) const { return canon(parent_->inv(a)); }
std::vector<GVec> QuotientGroup::generators() const {
  std::vector<GVec> out;
  for (const auto& g : parent_->generators()) out.push_back(canon(g));
  return out;
}
mpz_class QuotientGroup::order() const {
  return parent_->order() / static_cast<unsigned long>(kernel_.size());
}
void QuotientGroup::enumerate(const std::function<void(const GVec&)>& visit,
                              std::uint64_t cap) const {
  // breadth-first over generator multiplication from the identity coset
  std::set<GVec> seen;
  GVec id = identity();
  seen.insert(id);
  std::vector<GVec> frontier{id};
  auto gens = generators();
  while (!frontier.empty()) {
    std::vector<GVec> next;
    for (const auto& f : frontier)
      for (const auto& g : gens) {
        GVec h = mul(f, g);
        if (seen.insert(h).second) {
          next.push_back(h);
          if (seen.size() > cap) throw cap_error("quotient enumeration exceeded cap");
        }
      }
    frontier = std::move(next);
  }
  for (const auto& v : seen) visit(v);
}
std::string QuotientGroup::show(const GVec& a) const { return parent_->show(a) + " K"; }

std::shared_ptr<QuotientGroup> quotient_by_central(const FiniteGroupP& parent,
                                                   const Subgroup& kernel,
                                                   std::uint64_t cap) {
  Subgroup center = center_bruteforce(parent, cap);
  for (const auto& n : kernel.elements)
    if (!center.contains(n))
      throw computation_error("quotient kernel is not central: " + parent->show(n));
  return std::make_shared<QuotientGroup>(parent, kernel);
}

std::shared_ptr<QuotientGroup> quotient_by_normal(const FiniteGroupP& parent,
                                                  const Subgroup& kernel) {
  GVec id = parent->identity();
  for (const auto& g : parent->generators())
    for (const auto& n : kernel.elements) {
      GVec c = parent->mul(parent->mul(parent->inv(g), n), g);
      if (!kernel.contains(c))
        throw computation_error("quotient kernel is not normal: conjugate of " +
                                parent->show(n) + " escapes");
    }
  (void)id;
  return std::make_shared<QuotientGroup>(parent, kernel);
}

std::uint64_t order_of(const FiniteGroup& g, const GVec& a, std::uint64_t cap) {
  GVec id = g.identity();
  GVec cur = a;
  for (std::uint64_t n = 1; n <= cap; ++n) {
    if (cur == id) return n;
    cur = g.mul(cur, a);
  }
  throw cap_error("element order exceeds cap");
}

std::uint64_t exponent_of(const Subgroup& s) {
  std::uint64_t l = 1;
  for (const auto& v : s.elements)
    l = std::lcm(l, order_of(*s.parent, v, s.size() + 1));
  return l;
}

namespace {
/// expression evaluation over a FiniteGroup
struct FgOps {
  const FiniteGroup& g;
  std::vector<GVec> gens;
  GVec identity() const { return g.identity(); }
  GVec generator(int i) const {
    if (i < 1 || i > static_cast<int>(gens.size()))
      throw computation_error("relation references generator x" + std::to_string(i) +
                              " but the group has " + std::to_string(gens.size()));
    return gens[i - 1];
  }
  GVec mul(const GVec& a, const GVec& b) const { return g.mul(a, b); }
  GVec pw(const GVec& a, const mpz_class& n) const { return g.pw(a, n); }
  GVec comm(const GVec& a, const GVec& b) const { return g.comm(a, b); }
};
}  // namespace

bool matches_presentation(const FiniteGroup& g, const std::vector<std::string>& relations,
                          const mpz_class& expected_order) {
  if (g.order() != expected_order) return false;
  FgOps ops{g, g.generators()};
  GVec id = g.identity();
  for (const auto& rel : relations) {
    Expr e = parse_expr(rel, true);
    if (eval_expr(e, ops) != id) return false;
  }
  return true;
}

std::vector<std::string> defining_relations(const NpBasisP& basis) {
  const GroupSpec& spec = basis->spec();
  const int r = spec.rank();
  const int k = spec.class_k;
  std::vector<std::string> rels;
  for (int i = 0; i < r; ++i)
    if (spec.orders[i] != 0)
      rels.push_back("x" + std::to_string(i + 1) + "^" + std::to_string(spec.orders[i]));
  // class-k truncation: every left-normed (k+1)-fold generator bracket dies
  std::vector<int> tuple(k + 1, 1);
  std::uint64_t count = 1;
  for (int i = 0; i <= k; ++i) {
    count *= static_cast<std::uint64_t>(r);
    if (count > 65536) throw cap_error("too many truncation relations");
  }
  for (;;) {
    std::string w = "[";
    for (int i = 0; i <= k; ++i) w += (i ? "," : "") + std::string("x") + std::to_string(tuple[i]);
    w += "]";
    rels.push_back(std::move(w));
    int i = 0;
    for (; i <= k; ++i) {
      if (++tuple[i] <= r) break;
      tuple[i] = 1;
    }
    if (i > k) break;
  }
  // basis-item modulus relations
  for (int idx = 0; idx < basis->size(); ++idx)
    if (basis->modulus(idx) != 0 && basis->weight(idx) >= 2)
      rels.push_back(basis->label(idx) + "^" + std::to_string(basis->modulus(idx)));
  return rels;
}

}  // namespace nilcap
