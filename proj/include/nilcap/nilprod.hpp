#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nilcap/collector.hpp"
#include "nilcap/expr.hpp"

namespace nilcap {

enum class Regime { generic, special_2_3, abelian };

std::string regime_name(Regime r);

/// A k-nilpotent product of cyclic groups. Factors are sorted so orders are
/// nondecreasing (infinite factors, order 0, last); source_position[i] is the
/// caller's index of sorted factor i.
struct GroupSpec {
  int class_k = 1;
  std::vector<std::uint64_t> orders;
  Regime regime = Regime::generic;
  std::vector<int> source_position;

  int rank() const { return static_cast<int>(orders.size()); }
  bool operator==(const GroupSpec& o) const {
    return class_k == o.class_k && orders == o.orders && regime == o.regime;
  }
};

/// Validates the regime hypotheses, sorts the factors, records the permutation.
GroupSpec make_spec(int class_k, std::vector<std::uint64_t> orders, Regime regime);

class NpBasis;
using NpBasisP = std::shared_ptr<const NpBasis>;
struct NpAccess;

/// Normal-form basis of a nilpotent product with its moduli.
/// generic/abelian: the basic commutators of weight <= k with the gcd moduli;
/// special_2_3: Struik's 2-adic class-3 basis x_i; [x_j,x_i], [x_j,x_i^2],
/// [x_j^2,x_i]; [x_j,x_i,x_k], [x_k,x_i,x_j].
class NpBasis {
 public:
  const GroupSpec& spec() const { return spec_; }
  int size() const { return static_cast<int>(moduli_.size()); }
  const std::string& label(int idx) const { return labels_[idx]; }
  std::uint64_t modulus(int idx) const { return moduli_[idx]; }
  const std::vector<std::uint64_t>& moduli() const { return moduli_; }
  int weight(int idx) const { return weights_[idx]; }
  bool finite() const { return finite_; }
  const mpz_class& order() const;  // throws on infinite groups
  const CollectorP& lift() const { return lift_; }

 private:
  friend struct NpAccess;
  NpBasis() = default;

  GroupSpec spec_;
  std::vector<std::string> labels_;
  std::vector<std::uint64_t> moduli_;
  std::vector<int> weights_;
  bool finite_ = true;
  mpz_class order_ = 1;
  CollectorP lift_;                // free collector behind the lift path
  Collector::Moduli lift_moduli_;  // mpz moduli for reduced collection (generic)

  struct PairIdx { int ji = -1, jii = -1, jij = -1; };
  struct TripleIdx { int jik = -1, kij = -1; };
  // (i, j) with i < j, 0-based factor positions
  std::map<std::pair<int, int>, PairIdx> pairs_;
  // (i, j, k) with i < j < k
  std::map<std::array<int, 3>, TripleIdx> triples_;
};

NpBasisP make_group(const GroupSpec& spec);

/// Element in reduced normal form: coordinate i lies in [0, N_i) when
/// N_i > 0, and is an arbitrary integer when N_i = 0.
struct Element {
  NpBasisP basis;
  std::vector<std::int64_t> e;

  bool is_identity() const;
  bool operator==(const Element& o) const { return e == o.e; }
  bool operator!=(const Element& o) const { return e != o.e; }
  bool operator<(const Element& o) const { return e < o.e; }
};

Element identity(const NpBasisP& basis);
Element generator(const NpBasisP& basis, int g);  // 1-based
Element basis_unit(const NpBasisP& basis, int idx, std::int64_t exp = 1);

/// Canonicalises a raw exponent vector.
Element reduce(const std::vector<std::int64_t>& raw, const NpBasisP& basis);

/// Product in normal form. generic: lift through the free collector and
/// reduce; special_2_3: Struik's multiplication table; abelian: add.
Element mul(const Element& a, const Element& b);

/// The closed k=2 / k=3 multiplication formulas (generic and abelian only).
/// Kept as an independent path against the collector lift.
Element mul_formula(const Element& a, const Element& b);

/// Struik's 2-adic class-3 multiplication table (special_2_3 only).
Element mul_special_2_3(const Element& a, const Element& b);

/// Lift-through-the-collector path, valid in every regime (the special basis
/// is translated to and from free class-3 coordinates). Test oracle for the
/// table paths.
Element mul_lift(const Element& a, const Element& b);

Element pow(const Element& a, const mpz_class& n);
Element inv(const Element& a);
Element comm(const Element& a, const Element& b);

/// Least n >= 1 with a^n = e. Rejects infinite groups.
std::uint64_t element_order(const Element& a);

Element parse(const std::string& expr, const NpBasisP& basis);
std::string format(const Element& a);

/// Group-operations façade over a basis, usable with eval_expr.
class NpOps {
 public:
  explicit NpOps(NpBasisP basis) : basis_(std::move(basis)) {}
  Element identity() const { return nilcap::identity(basis_); }
  Element generator(int g) const { return nilcap::generator(basis_, g); }
  Element mul(const Element& a, const Element& b) const { return nilcap::mul(a, b); }
  Element pw(const Element& a, const mpz_class& n) const { return nilcap::pow(a, n); }
  Element comm(const Element& a, const Element& b) const { return nilcap::comm(a, b); }

 private:
  NpBasisP basis_;
};

}  // namespace nilcap
