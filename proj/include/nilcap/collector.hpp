#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <vector>

#include "nilcap/basiccomm.hpp"

namespace nilcap {

class Collector;
using CollectorP = std::shared_ptr<const Collector>;

/// Element of the free nilpotent group of class k on r generators, stored as
/// the exponent vector of its normal form over the basic-commutator basis.
/// The zero vector is the identity.
class FreeNilElement {
 public:
  FreeNilElement() = default;
  const std::vector<mpz_class>& exponents() const { return e_; }
  const CollectorP& owner() const { return owner_; }
  bool is_identity() const;
  bool operator==(const FreeNilElement& o) const { return e_ == o.e_; }
  bool operator!=(const FreeNilElement& o) const { return !(*this == o); }
  std::string str() const;

 private:
  friend class Collector;
  FreeNilElement(CollectorP owner, std::vector<mpz_class> e)
      : owner_(std::move(owner)), e_(std::move(e)) {}
  CollectorP owner_;
  std::vector<mpz_class> e_;
};

/// Input word: a product of bracket expressions raised to integer powers.
/// Letters need not be basic; they are evaluated through the group operations.
struct WordLetter {
  CommTreeP atom;
  mpz_class exponent;
};
using Word = std::vector<WordLetter>;

/// Exact arithmetic engine for one free nilpotent group F(r)/F_{k+1}.
///
/// Products are collected by recursive splitting on the least occupied basis
/// index, xy = c_i^{a+b} (c_i^{-b} x' c_i^b) y'. Conjugation is exact for
/// arbitrary-precision exponents: the exponent vector of c_i^{-n} c_l^e c_i^n
/// is an integer combination of binomial products C(n,s) C(e,t), fitted once
/// per (l, i) by finite differences over a small grid and reused. The base
/// bracket table [c_a, c_b] is built on demand from the exact identities
/// [xy,z] = [x,z]^y [y,z] and [u^{-1},b] = (([u,b])^{u^{-1}})^{-1}.
///
/// The *_mod overloads reduce every intermediate coordinate into [0, N_i);
/// sound whenever the diagonal moduli describe the kernel of a quotient whose
/// structure polynomials factor through the residues, which is Struik's
/// normal-form setting for nilpotent products of cyclic groups.
class Collector : public std::enable_shared_from_this<Collector> {
 public:
  static CollectorP make(int generators, int max_weight);

  const BasicSequence& basis() const { return basis_; }
  int generators() const { return basis_.generators(); }
  int max_weight() const { return basis_.max_weight(); }

  FreeNilElement identity() const;
  FreeNilElement generator(int g) const;        // 1-based
  FreeNilElement basis_element(int idx) const;  // 0-based basis index
  FreeNilElement from_exponents(std::vector<mpz_class> e) const;

  FreeNilElement collect(const Word& w) const;
  FreeNilElement multiply(const FreeNilElement& a, const FreeNilElement& b) const;
  FreeNilElement power(const FreeNilElement& a, const mpz_class& n) const;
  FreeNilElement inverse(const FreeNilElement& a) const;
  FreeNilElement commutator(const FreeNilElement& a, const FreeNilElement& b) const;
  FreeNilElement expand_power_commutator(const FreeNilElement& x,
                                         const FreeNilElement& y,
                                         const mpz_class& n) const;
  /// Least weight carrying a nonzero exponent; nullopt (infinite) for e.
  std::optional<int> weight_of(const FreeNilElement& a) const;

  /// Arithmetic with every coordinate reduced modulo moduli[i] (0 = free).
  using Moduli = std::vector<mpz_class>;
  FreeNilElement multiply_mod(const FreeNilElement& a, const FreeNilElement& b,
                              const Moduli& m) const;
  FreeNilElement power_mod(const FreeNilElement& a, const mpz_class& n,
                           const Moduli& m) const;
  FreeNilElement inverse_mod(const FreeNilElement& a, const Moduli& m) const;
  FreeNilElement commutator_mod(const FreeNilElement& a, const FreeNilElement& b,
                                const Moduli& m) const;

 private:
  explicit Collector(int generators, int max_weight);
  using Vec = std::vector<mpz_class>;

  const Vec& check(const FreeNilElement& a) const;
  FreeNilElement wrap(Vec v) const;

  // all of the below assume lock_ is held
  static int min_support(const Vec& v);
  void reduce(Vec& v) const;
  Vec zero() const { return Vec(basis_.size()); }
  Vec unit(int idx) const;
  Vec mul(const Vec& x, const Vec& y) const;
  Vec pow(const Vec& x, const mpz_class& n) const;
  Vec inv(const Vec& x) const;
  Vec comm(const Vec& x, const Vec& y) const;
  Vec conj(const Vec& x, int i, const mpz_class& n) const;  // c_i^{-n} x c_i^n
  Vec conj_single(const Vec& x, int i, int sign) const;     // conj by c_i^{sign}
  const Vec& conj_gen_letter(int m, int i, int sign) const; // c_i^{-s} c_m c_i^{s}
  const Vec& comm_pair(int a, int b) const;                 // [c_a, c_b]
  // coefficients of conj(c_l^e, i, n) over C(n,s)C(e,t); empty when the
  // conjugation is trivial (c_l and c_i commute in class k)
  const std::vector<std::vector<Vec>>& conj_pair_table(int l, int i) const;
  Vec conj_letter_pow(int l, int i, const mpz_class& n, const mpz_class& e) const;
  Vec eval_tree(const CommTreeP& t) const;

  BasicSequence basis_;
  std::vector<int> weights_;  // weight per basis index
  mutable std::mutex lock_;
  mutable const Moduli* mod_ = nullptr;  // active reduction context
  mutable std::map<std::pair<int, int>, Vec> comm_memo_;
  mutable std::set<std::pair<int, int>> comm_in_progress_;
  mutable std::map<std::pair<int, int>, Vec> conj_gen_memo_[2];  // sign -1 / +1
  mutable std::map<std::pair<int, int>, std::vector<std::vector<Vec>>> conj_pair_memo_;

  struct ModGuard {
    const Collector* c;
    const Moduli* prev;
    ModGuard(const Collector* cc, const Moduli* m) : c(cc), prev(cc->mod_) { c->mod_ = m; }
    ~ModGuard() { c->mod_ = prev; }
  };
};

}  // namespace nilcap
