#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "nilcap/errors.hpp"

namespace nilcap {

/// ord_p value: a non-negative integer or infinity (reserved for input 0).
class Valuation {
 public:
  static Valuation infinite() { return Valuation(true, 0); }
  static Valuation finite(unsigned long v) { return Valuation(false, v); }

  bool is_infinite() const { return infinite_; }
  unsigned long value() const {
    if (infinite_) throw computation_error("value() on an infinite valuation");
    return value_;
  }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend bool operator!=(const Valuation& a, const Valuation& b) { return !(a == b); }
  // infinity compares above every finite value
  friend bool operator<(const Valuation& a, const Valuation& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }

  std::string str() const { return infinite_ ? "infinite" : std::to_string(value_); }

 private:
  Valuation(bool inf, unsigned long v) : infinite_(inf), value_(v) {}
  bool infinite_;
  unsigned long value_;
};

/// Deterministic primality test for word-sized inputs (trial division).
bool is_prime(std::uint64_t n);

/// Largest n with p^n | a; infinite for a = 0. Rejects non-prime p.
Valuation ord_p(std::uint64_t p, const mpz_class& a);

/// Exact binomial coefficient; 0 when m > n.
mpz_class binom(unsigned long n, unsigned long m);

/// Binomial coefficient C(n, m) for an arbitrary integer n (product formula).
mpz_class binom_z(const mpz_class& n, unsigned long m);

/// Number of carries when adding a and b in base p. Rejects non-prime p.
unsigned long carries_base_p(std::uint64_t p, const mpz_class& a, const mpz_class& b);

/// n - ord_p(a) for 0 < a <= p^n; equals ord_p(C(p^n, a)) by Kummer's theorem.
unsigned long prime_power_binom_valuation(std::uint64_t p, unsigned long n,
                                          const mpz_class& a);

/// n - floor(log_p(m)) for 0 < m <= p^n: a lower bound on ord_p of any integer
/// combination a_1 C(p^n,1) + ... + a_m C(p^n,m).
unsigned long binom_sum_divisibility(std::uint64_t p, unsigned long n,
                                     const mpz_class& m);

/// floor((k-1)/(p-1)).
unsigned long hall_bound(unsigned long k, std::uint64_t p);

/// max over s = 1..k of floor((k-s)/(n-1)) + floor(log_n(s+1)), in closed form
/// floor(k/(n-1)).
unsigned long max_s_bound(unsigned long k, unsigned long n);

/// floor(log_base(x)) for x >= 1, computed by repeated integer multiplication.
unsigned long floor_log(std::uint64_t base, const mpz_class& x);

}  // namespace nilcap
