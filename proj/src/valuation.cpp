#include "nilcap/valuation.hpp"

namespace nilcap {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

static void require_prime(std::uint64_t p) {
  if (!is_prime(p))
    throw computation_error("expected a prime, got " + std::to_string(p));
}

Valuation ord_p(std::uint64_t p, const mpz_class& a) {
  require_prime(p);
  if (a == 0) return Valuation::infinite();
  mpz_class rest = abs(a);
  unsigned long n = 0;
  mpz_class q, r;
  const mpz_class pz(static_cast<unsigned long>(p));
  for (;;) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rest.get_mpz_t(), pz.get_mpz_t());
    if (r != 0) break;
    rest = q;
    ++n;
  }
  return Valuation::finite(n);
}

mpz_class binom(unsigned long n, unsigned long m) {
  if (m > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, m);
  return out;
}

mpz_class binom_z(const mpz_class& n, unsigned long m) {
  mpz_class num = 1;
  for (unsigned long i = 0; i < m; ++i) num *= n - static_cast<long>(i);
  mpz_class den;
  mpz_fac_ui(den.get_mpz_t(), m);
  mpz_class out = num / den;
  return out;
}

unsigned long carries_base_p(std::uint64_t p, const mpz_class& a, const mpz_class& b) {
  require_prime(p);
  if (a < 0 || b < 0) throw computation_error("carries_base_p needs non-negative inputs");
  mpz_class x = a, y = b;
  const mpz_class pz(static_cast<unsigned long>(p));
  unsigned long carries = 0;
  mpz_class carry = 0;
  while (x != 0 || y != 0 || carry != 0) {
    mpz_class digit = x % pz + y % pz + carry;
    if (digit >= pz) {
      ++carries;
      carry = 1;
    } else {
      carry = 0;
    }
    x /= pz;
    y /= pz;
  }
  return carries;
}

unsigned long prime_power_binom_valuation(std::uint64_t p, unsigned long n,
                                          const mpz_class& a) {
  require_prime(p);
  if (n == 0) throw computation_error("prime_power_binom_valuation needs n >= 1");
  mpz_class pn;
  mpz_ui_pow_ui(pn.get_mpz_t(), p, n);
  if (a <= 0 || a > pn)
    throw computation_error("prime_power_binom_valuation needs 0 < a <= p^n");
  return n - ord_p(p, a).value();
}

unsigned long binom_sum_divisibility(std::uint64_t p, unsigned long n,
                                     const mpz_class& m) {
  require_prime(p);
  if (n == 0) throw computation_error("binom_sum_divisibility needs n >= 1");
  mpz_class pn;
  mpz_ui_pow_ui(pn.get_mpz_t(), p, n);
  if (m <= 0 || m > pn)
    throw computation_error("binom_sum_divisibility needs 0 < m <= p^n");
  return n - floor_log(p, m);
}

unsigned long hall_bound(unsigned long k, std::uint64_t p) {
  require_prime(p);
  if (k < 1) throw computation_error("hall_bound needs k >= 1");
  return (k - 1) / (p - 1);
}

unsigned long max_s_bound(unsigned long k, unsigned long n) {
  if (k < 1 || n < 2) throw computation_error("max_s_bound needs k >= 1, n >= 2");
  return k / (n - 1);
}

unsigned long floor_log(std::uint64_t base, const mpz_class& x) {
  if (base < 2) throw computation_error("floor_log needs base >= 2");
  if (x < 1) throw computation_error("floor_log needs x >= 1");
  unsigned long e = 0;
  mpz_class pow = base;  // base^(e+1)
  while (pow <= x) {
    ++e;
    pow *= static_cast<unsigned long>(base);
  }
  return e;
}

}  // namespace nilcap
