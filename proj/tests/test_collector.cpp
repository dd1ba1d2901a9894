#include "doctest.h"
#include "nilcap/collector.hpp"

#include <atomic>
#include <random>
#include <thread>

using namespace nilcap;

namespace {
CommTreeP L(int g) { return CommTree::leaf(g); }
CommTreeP N(CommTreeP a, CommTreeP b) { return CommTree::node(std::move(a), std::move(b)); }

FreeNilElement rnd(std::mt19937_64& rng, const CollectorP& col, int maxexp) {
  std::vector<mpz_class> e(col->basis().size());
  for (auto& x : e) x = static_cast<long>(rng() % (2 * maxexp + 1)) - maxexp;
  return col->from_exponents(std::move(e));
}
}  // namespace

TEST_CASE("collect: pinned examples") {
  auto c22 = Collector::make(2, 2);
  CHECK(c22->collect({{L(2), 1}, {L(1), 1}}).str() == "x1 x2 [x2,x1]");

  auto c23 = Collector::make(2, 3);
  CHECK(c23->collect({{L(2), 2}, {L(1), 1}}).str() == "x1 x2^2 [x2,x1]^2 [x2,x1,x2]");

  auto c21 = Collector::make(2, 1);
  CHECK(c21->collect({{N(L(2), L(1)), 1}}).is_identity());

  CHECK_THROWS_AS(c22->collect({{L(3), 1}}), computation_error);
}

TEST_CASE("multiply: pinned examples") {
  auto col = Collector::make(2, 2);
  auto x1 = col->generator(1), x2 = col->generator(2);
  auto g = col->multiply(x1, x2);
  CHECK(col->multiply(col->identity(), g) == g);
  CHECK(col->multiply(x2, x1).str() == "x1 x2 [x2,x1]");
  CHECK(col->multiply(g, g).str() == "x1^2 x2^2 [x2,x1]");
}

TEST_CASE("power: pinned examples and repeated-multiply oracle") {
  auto col = Collector::make(2, 2);
  auto g = col->multiply(col->generator(1), col->generator(2));
  CHECK(col->power(g, 2).str() == "x1^2 x2^2 [x2,x1]");
  CHECK(col->power(g, 0).is_identity());
  CHECK(col->power(g, 3).str() == "x1^3 x2^3 [x2,x1]^3");
  auto acc = col->identity();
  for (int i = 0; i < 3; ++i) acc = col->multiply(acc, g);
  CHECK(col->power(g, 3) == acc);
}

TEST_CASE("inverse") {
  auto col = Collector::make(2, 2);
  CHECK(col->inverse(col->identity()).is_identity());
  CHECK(col->inverse(col->generator(1)).str() == "x1^-1");
  auto g = col->multiply(col->generator(1), col->generator(2));
  CHECK(col->multiply(g, col->inverse(g)).is_identity());
  CHECK(col->multiply(col->inverse(g), g).is_identity());
}

TEST_CASE("commutator: pinned examples") {
  auto c22 = Collector::make(2, 2);
  auto x1 = c22->generator(1), x2 = c22->generator(2);
  CHECK(c22->commutator(x2, x1).str() == "[x2,x1]");
  CHECK(c22->commutator(x1, x2).str() == "[x2,x1]^-1");
  auto g = c22->multiply(x1, x2);
  CHECK(c22->commutator(g, g).is_identity());

  auto c23 = Collector::make(2, 3);
  auto sq = c23->power(c23->generator(2), 2);
  CHECK(c23->commutator(sq, c23->generator(1)).str() == "[x2,x1]^2 [x2,x1,x2]");
}

TEST_CASE("expand_power_commutator") {
  auto col = Collector::make(2, 3);
  auto x2 = col->generator(2), x1 = col->generator(1);
  CHECK(col->expand_power_commutator(x2, x1, 1) == col->commutator(x2, x1));
  CHECK(col->expand_power_commutator(x2, x1, 2).str() == "[x2,x1]^2 [x2,x1,x2]");
  CHECK(col->expand_power_commutator(x2, x1, 3).str() == "[x2,x1]^3 [x2,x1,x2]^3");
  auto slow = col->commutator(col->power(x2, 3), x1);
  CHECK(col->expand_power_commutator(x2, x1, 3) == slow);
}

TEST_CASE("weight_of") {
  auto col = Collector::make(2, 3);
  CHECK(!col->weight_of(col->identity()).has_value());
  auto g = col->multiply(col->generator(1), col->basis_element(2));
  CHECK(col->weight_of(g) == 1);
  CHECK(col->weight_of(col->power(col->basis_element(4), 5)) == 3);
}

TEST_CASE("group axioms fuzz") {
  std::mt19937_64 rng(12345);
  for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {2, 5}}) {
    auto col = Collector::make(r, k);
    for (int t = 0; t < 25; ++t) {
      auto a = rnd(rng, col, 4), b = rnd(rng, col, 4), c = rnd(rng, col, 4);
      CHECK(col->multiply(col->multiply(a, b), c) == col->multiply(a, col->multiply(b, c)));
      CHECK(col->multiply(a, col->inverse(a)).is_identity());
    }
  }
}

TEST_CASE("collection is confluent under word splitting") {
  std::mt19937_64 rng(99);
  auto col = Collector::make(3, 4);
  for (int t = 0; t < 15; ++t) {
    Word w;
    for (int i = 0; i < 5; ++i) {
      int g1 = static_cast<int>(rng() % 3) + 1, g2 = static_cast<int>(rng() % 3) + 1;
      CommTreeP atom = g1 == g2 ? L(g1) : N(L(g1), L(g2));
      w.push_back({atom, mpz_class(static_cast<long>(rng() % 7) - 3)});
    }
    auto whole = col->collect(w);
    for (std::size_t cut = 0; cut <= w.size(); ++cut) {
      Word left(w.begin(), w.begin() + cut), right(w.begin() + cut, w.end());
      CHECK(whole == col->multiply(col->collect(left), col->collect(right)));
    }
  }
}

TEST_CASE("powers with arbitrary-precision exponents stay consistent") {
  auto col = Collector::make(2, 4);
  auto g = col->multiply(col->generator(1), col->generator(2));
  mpz_class n("1000000000000000000000000000007");
  CHECK(col->power(col->power(g, n), 3) == col->power(g, 3 * n));
  CHECK(col->multiply(col->power(g, n), col->power(g, -n)).is_identity());
  CHECK(col->multiply(col->power(g, n), g) == col->power(g, n + 1));
}

TEST_CASE("reduced arithmetic agrees with reduce-after-the-fact") {
  // gcd modulus system of the 3-nilpotent product of C3 and C9
  auto col = Collector::make(2, 3);
  Collector::Moduli mod = {3, 9, 3, 3, 3};
  std::mt19937_64 rng(7);
  for (int t = 0; t < 40; ++t) {
    auto a = rnd(rng, col, 8), b = rnd(rng, col, 8);
    auto exact = col->multiply(a, b);
    std::vector<mpz_class> want = exact.exponents();
    for (std::size_t i = 0; i < want.size(); ++i)
      mpz_fdiv_r(want[i].get_mpz_t(), want[i].get_mpz_t(), mod[i].get_mpz_t());
    CHECK(col->multiply_mod(a, b, mod).exponents() == want);
  }
}

TEST_CASE("basis mismatch is rejected") {
  auto a = Collector::make(2, 2);
  auto b = Collector::make(2, 3);
  CHECK_THROWS_AS(a->multiply(a->generator(1), b->generator(1)), computation_error);
}

TEST_CASE("concurrent use of one engine is safe and deterministic") {
  auto col = Collector::make(2, 4);
  std::vector<FreeNilElement> inputs;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 8; ++i) inputs.push_back(rnd(rng, col, 3));
  std::vector<FreeNilElement> expected;
  for (int i = 0; i < 8; ++i)
    expected.push_back(col->multiply(inputs[i], inputs[(i + 3) % 8]));
  std::vector<std::thread> workers;
  std::atomic<int> mismatches{0};
  for (int w = 0; w < 4; ++w)
    workers.emplace_back([&] {
      for (int rep = 0; rep < 20; ++rep)
        for (int i = 0; i < 8; ++i)
          if (col->multiply(inputs[i], inputs[(i + 3) % 8]) != expected[i]) ++mismatches;
    });
  for (auto& t : workers) t.join();
  CHECK(mismatches == 0);
}
