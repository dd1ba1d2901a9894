#include "doctest.h"
#include "nilcap/valuation.hpp"

#include <vector>

using namespace nilcap;

namespace {

// independent oracle: Pascal's triangle
mpz_class binom_pascal(unsigned n, unsigned m) {
  if (m > n) return 0;
  std::vector<mpz_class> row{1};
  for (unsigned i = 1; i <= n; ++i) {
    std::vector<mpz_class> next(i + 1, 1);
    for (unsigned j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row[m];
}

// independent oracle: trial division
unsigned ord_trial(std::uint64_t p, mpz_class a) {
  unsigned n = 0;
  while (a != 0 && a % static_cast<unsigned long>(p) == 0) {
    a /= static_cast<unsigned long>(p);
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("ord_p basics") {
  CHECK(ord_p(2, 8) == Valuation::finite(3));
  CHECK(ord_p(3, 0).is_infinite());
  CHECK(ord_p(5, 28) == Valuation::finite(ord_trial(5, 28)));
  CHECK(ord_p(5, 28) == Valuation::finite(0));
  CHECK(ord_p(7, -49) == Valuation::finite(2));
  CHECK_THROWS_AS(ord_p(6, 12), computation_error);
  CHECK(Valuation::infinite() >= Valuation::finite(1000000));
  CHECK(Valuation::finite(2) < Valuation::infinite());
}

TEST_CASE("binom against the Pascal oracle") {
  CHECK(binom(8, 2) == 28);
  CHECK(binom(4, 0) == 1);
  CHECK(binom(3, 7) == 0);
  CHECK(binom(30, 15) == binom_pascal(30, 15));
  CHECK(binom(30, 15) == mpz_class("155117520"));
  for (unsigned n = 0; n <= 40; ++n)
    for (unsigned m = 0; m <= n; ++m) CHECK(binom(n, m) == binom_pascal(n, m));
}

TEST_CASE("binom_z at negative arguments") {
  CHECK(binom_z(-1, 2) == 1);
  CHECK(binom_z(-2, 3) == -4);  // (-2)(-3)(-4)/6
  CHECK(binom_z(5, 2) == 10);
  CHECK(binom_z(0, 0) == 1);
}

TEST_CASE("carries in base p") {
  CHECK(carries_base_p(2, 6, 2) == 2);
  CHECK(carries_base_p(3, 1, 1) == 0);
  CHECK(carries_base_p(2, 1, 1) == 1);
  CHECK(carries_base_p(2, 6, 2) == ord_trial(2, binom_pascal(8, 2)));
  CHECK_THROWS_AS(carries_base_p(4, 1, 1), computation_error);
}

TEST_CASE("Kummer's theorem, spot exhaustive") {
  for (std::uint64_t p : {2, 3, 5}) {
    for (unsigned n = 0; n <= 60; ++n)
      for (unsigned m = 0; m <= n; ++m)
        CHECK(ord_p(p, binom(n, m)) == Valuation::finite(carries_base_p(p, n - m, m)));
  }
}

TEST_CASE("prime_power_binom_valuation") {
  CHECK(prime_power_binom_valuation(2, 3, 2) == 2);
  CHECK(prime_power_binom_valuation(2, 3, 2) == ord_trial(2, binom_pascal(8, 2)));
  CHECK(prime_power_binom_valuation(3, 2, 9) == 0);
  CHECK(prime_power_binom_valuation(5, 1, 1) == ord_trial(5, binom_pascal(5, 1)));
  CHECK(prime_power_binom_valuation(5, 1, 1) == 1);
  CHECK_THROWS_AS(prime_power_binom_valuation(2, 3, 9), computation_error);
  CHECK_THROWS_AS(prime_power_binom_valuation(2, 3, 0), computation_error);
}

TEST_CASE("binom_sum_divisibility") {
  CHECK(binom_sum_divisibility(2, 4, 2) == 3);
  CHECK(binom_sum_divisibility(3, 5, 1) == 5);
  CHECK(binom_sum_divisibility(2, 3, 8) == 0);
  CHECK_THROWS_AS(binom_sum_divisibility(2, 3, 9), computation_error);
  // the bound really bounds: a few concrete combinations
  mpz_class s = 3 * binom(16, 1) - 7 * binom(16, 2);
  CHECK(ord_p(2, s) >= Valuation::finite(binom_sum_divisibility(2, 4, 2)));
}

TEST_CASE("hall_bound") {
  CHECK(hall_bound(2, 3) == 0);
  CHECK(hall_bound(3, 2) == 2);
  CHECK(hall_bound(1, 2) == 0);
  CHECK(hall_bound(5, 3) == 2);
}

TEST_CASE("max_s_bound against brute force") {
  CHECK(max_s_bound(1, 2) == 1);
  CHECK(max_s_bound(4, 5) == 1);
  // (6,3): brute max over s = 1..6
  unsigned best = 0;
  for (unsigned s = 1; s <= 6; ++s) best = std::max<unsigned>(best, (6 - s) / 2 + floor_log(3, s + 1));
  CHECK(best == 3);
  CHECK(max_s_bound(6, 3) == best);
  for (unsigned k = 1; k <= 30; ++k)
    for (unsigned n = 2; n <= 7; ++n) {
      unsigned long m = 0;
      for (unsigned long s = 1; s <= k; ++s)
        m = std::max(m, (k - s) / (n - 1) + floor_log(n, s + 1));
      CHECK(max_s_bound(k, n) == m);
    }
}

TEST_CASE("floor_log by repeated multiplication") {
  CHECK(floor_log(2, 1) == 0);
  CHECK(floor_log(2, 2) == 1);
  CHECK(floor_log(2, 1023) == 9);
  CHECK(floor_log(2, 1024) == 10);
  CHECK(floor_log(3, 8) == 1);
  CHECK(floor_log(3, 9) == 2);
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13})
    CHECK(floor_log(p, 2) == 1 / (p - 1));
}
