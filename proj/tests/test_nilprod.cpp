#include "doctest.h"
#include "nilcap/nilprod.hpp"

#include <map>
#include <random>

using namespace nilcap;

namespace {

std::vector<Element> all_elements(const NpBasisP& b) {
  std::vector<Element> out;
  std::vector<std::int64_t> v(b->size(), 0);
  for (;;) {
    out.push_back(reduce(v, b));
    int i = 0;
    for (; i < b->size(); ++i) {
      if (++v[i] < static_cast<std::int64_t>(b->modulus(i))) break;
      v[i] = 0;
    }
    if (i == b->size()) break;
  }
  return out;
}

}  // namespace

TEST_CASE("make_group: gcd moduli and regime errors") {
  auto b = make_group(make_spec(2, {3, 9}, Regime::generic));
  REQUIRE(b->size() == 3);
  CHECK(b->modulus(0) == 3);
  CHECK(b->modulus(1) == 9);
  CHECK(b->modulus(2) == 3);
  CHECK(b->order() == 81);

  auto sp = make_group(make_spec(3, {2, 2}, Regime::special_2_3));
  REQUIRE(sp->size() == 5);
  CHECK(sp->label(2) == "[x2,x1]");
  CHECK(sp->label(3) == "[x2,x1^2]");
  CHECK(sp->label(4) == "[x2^2,x1]");
  CHECK(sp->modulus(2) == 4);
  CHECK(sp->modulus(3) == 1);
  CHECK(sp->modulus(4) == 1);

  CHECK_THROWS_AS(make_spec(3, {2, 2}, Regime::generic), regime_error);
  CHECK_THROWS_AS(make_spec(9, {4, 4}, Regime::generic), regime_error);
  CHECK_THROWS_AS(make_spec(2, {6, 6}, Regime::special_2_3), regime_error);
  CHECK_THROWS_AS(make_spec(2, {2, 2}, Regime::abelian), regime_error);

  // infinite factors sort last and leave free coordinates
  auto inf = make_group(make_spec(2, {0, 4}, Regime::generic));
  CHECK(inf->spec().orders == std::vector<std::uint64_t>{4, 0});
  CHECK_FALSE(inf->finite());
  CHECK(inf->modulus(1) == 0);
  CHECK(inf->modulus(2) == 4);  // gcd(0, 4)
}

TEST_CASE("reduce canonicalises") {
  auto b = make_group(make_spec(2, {3, 9}, Regime::generic));
  CHECK(reduce({3, 0, 0}, b).is_identity());
  CHECK(reduce({0, 0, 5}, b).e == std::vector<std::int64_t>{0, 0, 2});
  CHECK(reduce({-1, 0, 0}, b).e == std::vector<std::int64_t>{2, 0, 0});
}

TEST_CASE("mul: pinned examples across regimes") {
  auto d8 = make_group(make_spec(2, {2, 2}, Regime::generic));
  CHECK(format(mul(generator(d8, 2), generator(d8, 1))) == "x1 x2 [x2,x1]");
  auto g = mul(generator(d8, 1), generator(d8, 2));
  CHECK(format(pow(g, 2)) == "[x2,x1]");
  CHECK(element_order(g) == 4);

  auto t33 = make_group(make_spec(3, {3, 3}, Regime::generic));
  CHECK(format(mul(pow(generator(t33, 2), 2), generator(t33, 1))) ==
        "x1 x2^2 [x2,x1]^2 [x2,x1,x2]");

  auto sp = make_group(make_spec(3, {2, 2}, Regime::special_2_3));
  CHECK(mul(generator(sp, 2), generator(sp, 2)).is_identity());
  CHECK(format(mul(generator(sp, 2), generator(sp, 1))) == "x1 x2 [x2,x1]");
  auto br2 = pow(comm(generator(sp, 2), generator(sp, 1)), 2);
  CHECK(mul(br2, br2).is_identity());
  CHECK(element_order(comm(generator(sp, 2), generator(sp, 1))) == 4);
}

TEST_CASE("pow, inv, comm") {
  auto d8 = make_group(make_spec(2, {2, 2}, Regime::generic));
  auto g = mul(generator(d8, 1), generator(d8, 2));
  CHECK(pow(g, 4).is_identity());
  CHECK(inv(identity(d8)).is_identity());
  CHECK(mul(g, inv(g)).is_identity());
  auto b39 = make_group(make_spec(2, {3, 9}, Regime::generic));
  CHECK(comm(generator(b39, 2), generator(b39, 1)).e == std::vector<std::int64_t>{0, 0, 1});
  CHECK(element_order(identity(d8)) == 1);
}

TEST_CASE("parse and format") {
  auto b = make_group(make_spec(2, {3, 9}, Regime::generic));
  auto e = parse("x2^2 [x2,x1]^3", b);
  CHECK(e.e == std::vector<std::int64_t>{0, 2, 0});
  CHECK(parse("", b).is_identity());
  auto t55 = make_group(make_spec(3, {5, 5}, Regime::generic));
  auto u = parse("[x2,x1,x1]", t55);
  CHECK(u.e == std::vector<std::int64_t>{0, 0, 0, 1, 0});
  // roundtrip on every element of a small group
  auto sp = make_group(make_spec(3, {2, 4}, Regime::special_2_3));
  for (const auto& x : all_elements(sp)) CHECK(parse(format(x), sp) == x);
  // squared labels only exist in the special regime
  CHECK_THROWS_AS(parse("[x2^2,x1]", b), parse_error);
  CHECK(format(parse("[x2^2,x1]", sp)) == "[x2^2,x1]");
  // errors carry positions
  try {
    parse("x2 ^ 3", b);
    CHECK(false);
  } catch (const parse_error& err) {
    CHECK(err.position == 3);
  }
  CHECK_THROWS_AS(parse("x9", b), computation_error);
  CHECK_THROWS_AS(parse("[x1]", b), parse_error);
}

TEST_CASE("normal forms are a group: Cayley checks on small specs") {
  for (auto spec : {make_spec(2, {2, 2}, Regime::generic), make_spec(3, {3, 3}, Regime::generic),
                    make_spec(3, {2, 4}, Regime::special_2_3)}) {
    auto b = make_group(spec);
    auto elems = all_elements(b);
    REQUIRE(elems.size() == b->order().get_ui());
    // each row of the Cayley table is a permutation; inverses exist
    std::map<Element, int> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
    for (const auto& a : elems) {
      std::vector<bool> seen(elems.size(), false);
      bool has_inverse = false;
      for (const auto& x : elems) {
        auto p = mul(a, x);
        auto it = index.find(p);
        REQUIRE(it != index.end());
        CHECK(!seen[it->second]);
        seen[it->second] = true;
        if (p.is_identity()) has_inverse = true;
      }
      CHECK(has_inverse);
    }
    // exhaustive associativity on the smallest spec only
    if (elems.size() <= 16)
      for (const auto& a : elems)
        for (const auto& x : elems)
          for (const auto& y : elems) CHECK(mul(mul(a, x), y) == mul(a, mul(x, y)));
  }
}

TEST_CASE("closed formulas agree with the collector lift") {
  for (auto spec : {make_spec(2, {2, 2}, Regime::generic), make_spec(2, {3, 9}, Regime::generic),
                    make_spec(2, {2, 4, 4}, Regime::generic),
                    make_spec(3, {3, 3}, Regime::generic)}) {
    auto b = make_group(spec);
    auto elems = all_elements(b);
    for (const auto& a : elems)
      for (const auto& x : elems) CHECK(mul_formula(a, x) == mul_lift(a, x));
  }
  // randomized for the larger class-3 cases, including a rank-3 spec
  std::mt19937_64 rng(5);
  for (auto spec : {make_spec(3, {9, 9}, Regime::generic),
                    make_spec(3, {3, 3, 3}, Regime::generic),
                    make_spec(3, {3, 9, 9}, Regime::generic)}) {
    auto b = make_group(spec);
    for (int t = 0; t < 400; ++t) {
      std::vector<std::int64_t> u(b->size()), v(b->size());
      for (int i = 0; i < b->size(); ++i) {
        u[i] = static_cast<std::int64_t>(rng() % b->modulus(i));
        v[i] = static_cast<std::int64_t>(rng() % b->modulus(i));
      }
      Element a = reduce(u, b), x = reduce(v, b);
      CHECK(mul_formula(a, x) == mul_lift(a, x));
    }
  }
}

TEST_CASE("special table agrees with the translate-and-lift oracle") {
  for (auto orders : std::vector<std::vector<std::uint64_t>>{{2, 2}, {2, 4}, {4, 4}, {2, 2, 2}}) {
    auto b = make_group(make_spec(3, orders, Regime::special_2_3));
    auto elems = all_elements(b);
    if (elems.size() > 600) continue;
    for (const auto& a : elems)
      for (const auto& x : elems) CHECK(mul_special_2_3(a, x) == mul_lift(a, x));
  }
  std::mt19937_64 rng(17);
  for (auto orders : std::vector<std::vector<std::uint64_t>>{{4, 8}, {2, 8}, {8, 8}}) {
    auto b = make_group(make_spec(3, orders, Regime::special_2_3));
    for (int t = 0; t < 500; ++t) {
      std::vector<std::int64_t> u(b->size()), v(b->size());
      for (int i = 0; i < b->size(); ++i) {
        u[i] = static_cast<std::int64_t>(rng() % b->modulus(i));
        v[i] = static_cast<std::int64_t>(rng() % b->modulus(i));
      }
      CHECK(mul_special_2_3(reduce(u, b), reduce(v, b)) == mul_lift(reduce(u, b), reduce(v, b)));
    }
  }
}

TEST_CASE("special table is well-defined modulo the generator orders") {
  // replacing d_i by d_i + 2^(a_i) must leave the product unchanged
  for (auto orders : std::vector<std::vector<std::uint64_t>>{{2, 2}, {2, 4}, {4, 4}}) {
    auto b = make_group(make_spec(3, orders, Regime::special_2_3));
    auto elems = all_elements(b);
    for (const auto& a : elems)
      for (const auto& x : elems)
        for (int i = 0; i < b->spec().rank(); ++i) {
          Element shifted = x;
          shifted.e[i] += static_cast<std::int64_t>(b->modulus(i));
          CHECK(mul_special_2_3(a, shifted) == mul_special_2_3(a, x));
          Element shifted_a = a;
          shifted_a.e[i] += static_cast<std::int64_t>(b->modulus(i));
          CHECK(mul_special_2_3(shifted_a, x) == mul_special_2_3(a, x));
        }
  }
  std::mt19937_64 rng(23);
  auto b = make_group(make_spec(3, {8, 8}, Regime::special_2_3));
  for (int t = 0; t < 2000; ++t) {
    std::vector<std::int64_t> u(b->size()), v(b->size());
    for (int i = 0; i < b->size(); ++i) {
      u[i] = static_cast<std::int64_t>(rng() % b->modulus(i));
      v[i] = static_cast<std::int64_t>(rng() % b->modulus(i));
    }
    Element a = reduce(u, b), x = reduce(v, b);
    int i = static_cast<int>(rng() % 2);
    Element shifted = x;
    shifted.e[i] += static_cast<std::int64_t>(b->modulus(i));
    CHECK(mul_special_2_3(a, shifted) == mul_special_2_3(a, x));
  }
}

TEST_CASE("translation identities relating the two weight-3 bracket orders") {
  auto b = make_group(make_spec(3, {3, 3, 3}, Regime::generic));
  NpOps ops(b);
  auto x = [&](int i) { return generator(b, i); };
  // [x_j,x_i,x_k] = [x_i,x_j,x_k]^(-1) for i < j, any k
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k) {
        auto lhs = ops.comm(ops.comm(x(j), x(i)), x(k));
        auto rhs = inv(ops.comm(ops.comm(x(i), x(j)), x(k)));
        CHECK(lhs == rhs);
      }
  // [x_k,x_j,x_i] = [x_j,x_i,x_k]^(-1) [x_k,x_i,x_j] for i < j < k
  auto lhs = ops.comm(ops.comm(x(3), x(2)), x(1));
  auto rhs = mul(inv(ops.comm(ops.comm(x(2), x(1)), x(3))), ops.comm(ops.comm(x(3), x(1)), x(2)));
  CHECK(lhs == rhs);
}

TEST_CASE("infinite factors: arithmetic works, enumeration is rejected") {
  auto b = make_group(make_spec(2, {0, 0}, Regime::generic));
  auto g = mul(generator(b, 1), generator(b, 2));
  CHECK(pow(g, 3).e == std::vector<std::int64_t>{3, 3, 3});
  CHECK(mul(g, inv(g)).is_identity());
  CHECK_THROWS_AS(element_order(g), computation_error);
  CHECK_THROWS_AS(b->order(), computation_error);
}

TEST_CASE("element_order on larger groups") {
  auto b = make_group(make_spec(3, {9, 9}, Regime::generic));
  CHECK(element_order(generator(b, 1)) == 9);
  auto g = mul(generator(b, 1), generator(b, 2));
  std::uint64_t n = element_order(g);
  CHECK(pow(g, n).is_identity());
  CHECK_FALSE(pow(g, n / 3).is_identity());
}
