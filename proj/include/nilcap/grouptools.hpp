#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "nilcap/nilprod.hpp"

namespace nilcap {

/// Canonical byte-level encoding of a group element; comparable and hashable.
using GVec = std::vector<std::int64_t>;

/// Abstract finite (or finitely described) group. Elements travel as
/// canonical encodings; implementations must make equal elements encode
/// equally.
class FiniteGroup {
 public:
  virtual ~FiniteGroup() = default;
  virtual GVec identity() const = 0;
  virtual GVec mul(const GVec& a, const GVec& b) const = 0;
  virtual GVec inv(const GVec& a) const = 0;
  virtual std::vector<GVec> generators() const = 0;
  virtual mpz_class order() const = 0;
  /// Visits every element; throws cap_error past the cap.
  virtual void enumerate(const std::function<void(const GVec&)>& visit,
                         std::uint64_t cap) const = 0;
  virtual std::string show(const GVec& a) const = 0;

  GVec comm(const GVec& a, const GVec& b) const;
  GVec pw(const GVec& a, const mpz_class& n) const;
};
using FiniteGroupP = std::shared_ptr<const FiniteGroup>;

/// Nilpotent-product group as a FiniteGroup (rejects infinite specs for
/// order/enumerate).
class NilprodGroup : public FiniteGroup {
 public:
  explicit NilprodGroup(NpBasisP basis) : basis_(std::move(basis)) {}
  const NpBasisP& basis() const { return basis_; }

  GVec identity() const override;
  GVec mul(const GVec& a, const GVec& b) const override;
  GVec inv(const GVec& a) const override;
  std::vector<GVec> generators() const override;
  mpz_class order() const override;
  void enumerate(const std::function<void(const GVec&)>& visit,
                 std::uint64_t cap) const override;
  std::string show(const GVec& a) const override;

  Element unwrap(const GVec& v) const { return Element{basis_, v}; }
  GVec wrap(const Element& e) const { return e.e; }

 private:
  NpBasisP basis_;
};

/// Dihedral group of order 2n in the rotation/reflection model
/// (a, f) with a mod n, f mod 2; generators are the reflection and a rotation.
class DihedralGroup : public FiniteGroup {
 public:
  explicit DihedralGroup(std::uint64_t n);
  GVec identity() const override;
  GVec mul(const GVec& a, const GVec& b) const override;
  GVec inv(const GVec& a) const override;
  std::vector<GVec> generators() const override;  // {reflection, rotation}
  mpz_class order() const override;
  void enumerate(const std::function<void(const GVec&)>& visit,
                 std::uint64_t cap) const override;
  std::string show(const GVec& a) const override;

 private:
  std::int64_t n_;
};

/// Finite subgroup: generators plus the full sorted element set.
struct Subgroup {
  FiniteGroupP parent;
  std::vector<GVec> generators;
  std::vector<GVec> elements;  // sorted, deduplicated, contains identity

  std::uint64_t size() const { return elements.size(); }
  bool contains(const GVec& v) const;
};

/// Closure of gens under multiplication; throws cap_error past cap,
/// checks Lagrange against the parent order.
Subgroup closure(const FiniteGroupP& parent, std::vector<GVec> gens, std::uint64_t cap);

/// Term G_i of the lower central series, by iterated commutator closure
/// ([H, G] is generated by the brackets ofH's elements with the group
/// generators). For finite generic nilprod specs the result is cross-checked
/// against the span of basic commutators of weight >= i.
Subgroup lower_central(const FiniteGroupP& group, int i, std::uint64_t cap);

/// { g : [g, x] = e for every generator x }; centralising the generators
/// suffices since they generate.
Subgroup center_bruteforce(const FiniteGroupP& group, std::uint64_t cap);

/// Closed-form center generators per the center theorems:
/// k = 1 -> whole group; k = 2, any finite cyclic orders -> x_j^{L_j} and G_2;
/// cyclic p-groups with p >= k -> x_r^{p^(a_{r-1})} and the weight-k items;
/// special_2_3 -> x_r^{2^(a_{r-1}+1)}, [x_j,x_i]^{2^(a_i)}, and G_3.
/// Throws regime_error outside the covered regimes.
std::vector<Element> center_formula(const NpBasisP& basis);

/// Central (or merely normal) quotient as a FiniteGroup: elements are
/// lexicographically least coset representatives.
class QuotientGroup : public FiniteGroup {
 public:
  /// kernel must be normal; verified on construction.
  QuotientGroup(FiniteGroupP parent, Subgroup kernel);

  const FiniteGroupP& parent() const { return parent_; }
  const Subgroup& kernel() const { return kernel_; }
  GVec canon(const GVec& parent_elem) const;

  GVec identity() const override;
  GVec mul(const GVec& a, const GVec& b) const override;
  GVec inv(const GVec& a) const override;
  std::vector<GVec> generators() const override;
  mpz_class order() const override;
  void enumerate(const std::function<void(const GVec&)>& visit,
                 std::uint64_t cap) const override;
  std::string show(const GVec& a) const override;

 private:
  FiniteGroupP parent_;
  Subgroup kernel_;
  mutable std::mutex cache_lock_;
  mutable std::map<GVec, GVec> canon_cache_;
};

/// Quotient by a verified-central kernel (the public construction).
std::shared_ptr<QuotientGroup> quotient_by_central(const FiniteGroupP& parent,
                                                   const Subgroup& kernel,
                                                   std::uint64_t cap);

/// Quotient by a verified-normal kernel.
std::shared_ptr<QuotientGroup> quotient_by_normal(const FiniteGroupP& parent,
                                                  const Subgroup& kernel);

/// Least common multiple of the element orders.
std::uint64_t exponent_of(const Subgroup& s);

/// Order of one element inside an ambient finite group.
std::uint64_t order_of(const FiniteGroup& g, const GVec& a, std::uint64_t cap);

/// True iff every relation evaluates to the identity at the group's
/// generators and the order matches: an epimorphic image of the presented
/// group with equal finite order is isomorphic to it.
bool matches_presentation(const FiniteGroup& g, const std::vector<std::string>& relations,
                          const mpz_class& expected_order);

/// Defining relations of a nilpotent-product spec: generator orders,
/// class-k truncations (all left-normed (k+1)-fold generator brackets), and
/// the basis-item modulus relations.
std::vector<std::string> defining_relations(const NpBasisP& basis);

}  // namespace nilcap
