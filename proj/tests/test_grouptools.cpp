#include "doctest.h"
#include "nilcap/grouptools.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

using namespace nilcap;

namespace {
constexpr std::uint64_t kCap = 1u << 20;

std::shared_ptr<NilprodGroup> group_of(const GroupSpec& spec) {
  return std::make_shared<NilprodGroup>(make_group(spec));
}
}  // namespace

TEST_CASE("closure: pinned examples") {
  auto d8 = group_of(make_spec(2, {2, 2}, Regime::generic));
  Subgroup trivial = closure(d8, {}, kCap);
  CHECK(trivial.size() == 1);
  Subgroup central = closure(d8, {comm(generator(d8->basis(), 2), generator(d8->basis(), 1)).e},
                             kCap);
  CHECK(central.size() == 2);
  Subgroup whole = closure(d8, d8->generators(), kCap);
  CHECK(whole.size() == 8);
  CHECK_THROWS_AS(closure(d8, d8->generators(), 4), cap_error);
}

TEST_CASE("lower_central: pinned examples and the basic-commutator span") {
  auto g33 = group_of(make_spec(3, {3, 3}, Regime::generic));
  CHECK(lower_central(g33, 1, kCap).size() == 243);
  CHECK(lower_central(g33, 3, kCap).size() == 9);
  auto d8 = group_of(make_spec(2, {2, 2}, Regime::generic));
  CHECK(lower_central(d8, 3, kCap).size() == 1);
  CHECK(lower_central(d8, 1, kCap).size() == 8);
  CHECK(lower_central(d8, 2, kCap).size() == 2);
}

TEST_CASE("center_bruteforce: pinned examples") {
  auto d8 = group_of(make_spec(2, {2, 2}, Regime::generic));
  Subgroup z = center_bruteforce(d8, kCap);
  CHECK(z.size() == 2);
  CHECK(z.elements == lower_central(d8, 2, kCap).elements);

  auto ab = group_of(make_spec(1, {4, 6}, Regime::abelian));
  CHECK(center_bruteforce(ab, kCap).size() == 24);

  auto sp = group_of(make_spec(3, {2, 2}, Regime::special_2_3));
  Subgroup zsp = center_bruteforce(sp, kCap);
  CHECK(zsp.size() == 2);
  auto br2 = pow(comm(generator(sp->basis(), 2), generator(sp->basis(), 1)), 2);
  CHECK(zsp.contains(br2.e));
}

TEST_CASE("center_formula matches brute force on the named specs") {
  for (auto spec :
       {make_spec(2, {3, 3}, Regime::generic), make_spec(2, {3, 9}, Regime::generic),
        make_spec(3, {3, 9}, Regime::generic), make_spec(3, {2, 4}, Regime::special_2_3),
        make_spec(2, {12, 12}, Regime::generic), make_spec(2, {2, 3}, Regime::generic)}) {
    auto g = group_of(spec);
    Subgroup brute = center_bruteforce(g, kCap);
    std::vector<GVec> fg;
    for (const auto& e : center_formula(g->basis())) fg.push_back(e.e);
    Subgroup formula = closure(g, fg, kCap);
    CHECK(formula.elements == brute.elements);
  }
  // (3,9) at class 3: Z = <x2^3, G_3>
  auto b = make_group(make_spec(3, {3, 9}, Regime::generic));
  auto gens = center_formula(b);
  bool has_x2cube = false;
  for (const auto& e : gens)
    if (e == pow(generator(b, 2), 3)) has_x2cube = true;
  CHECK(has_x2cube);
  // k=2 (3,3): the center is exactly G_2
  auto g33 = group_of(make_spec(2, {3, 3}, Regime::generic));
  CHECK(center_bruteforce(g33, kCap).elements == lower_central(g33, 2, kCap).elements);
  // no closed form outside the covered regimes
  CHECK_THROWS_AS(center_formula(make_group(make_spec(3, {15, 15}, Regime::generic))),
                  regime_error);
}

TEST_CASE("central-element sufficiency in class 2") {
  // whenever gcd(a_i, a_j) | c_i for all j != i, the product of x_i^(c_i)
  // must be central
  for (auto spec : {make_spec(2, {2, 4}, Regime::generic), make_spec(2, {6, 12}, Regime::generic),
                    make_spec(2, {2, 2, 4}, Regime::generic)}) {
    auto g = group_of(spec);
    Subgroup z = center_bruteforce(g, kCap);
    const auto& orders = spec.orders;
    int r = spec.rank();
    std::vector<std::int64_t> v(g->basis()->size(), 0);
    std::function<void(int)> rec = [&](int i) {
      if (i == r) {
        bool qualifies = true;
        for (int a = 0; a < r; ++a)
          for (int b2 = 0; b2 < r; ++b2) {
            if (a == b2) continue;
            std::uint64_t gcd_ab = std::gcd(orders[a], orders[b2]);
            if (gcd_ab != 0 && v[a] % static_cast<std::int64_t>(gcd_ab) != 0) qualifies = false;
          }
        if (qualifies) CHECK(z.contains(reduce(v, g->basis()).e));
        return;
      }
      for (std::uint64_t c = 0; c < orders[i]; ++c) {
        v[i] = static_cast<std::int64_t>(c);
        rec(i + 1);
      }
      v[i] = 0;
    };
    rec(0);
  }
}

TEST_CASE("quotient_by_central: pinned examples") {
  auto g33 = group_of(make_spec(3, {3, 3}, Regime::generic));
  // trivial kernel: an isomorphic copy
  auto q0 = quotient_by_central(g33, closure(g33, {}, kCap), kCap);
  CHECK(q0->order() == 243);

  // by G_3: the class-2 product on the same factors
  Subgroup g3 = lower_central(g33, 3, kCap);
  auto q = quotient_by_central(g33, g3, kCap);
  CHECK(q->order() == 27);
  CHECK(matches_presentation(*q, {"x1^3", "x2^3", "[x2,x1]^3", "[x2,x1,x1]", "[x2,x1,x2]"},
                             mpz_class(27)));
  CHECK_FALSE(matches_presentation(*q, {"x1^3", "x2^3", "[x2,x1]^3", "[x2,x1,x1]", "[x2,x1,x2]"},
                                   mpz_class(81)));

  // special (2,2) modulo its center: the dihedral group of order 8
  auto sp = group_of(make_spec(3, {2, 2}, Regime::special_2_3));
  auto qsp = quotient_by_central(sp, center_bruteforce(sp, kCap), kCap);
  CHECK(qsp->order() == 8);
  CHECK(matches_presentation(*qsp, {"x1^2", "x2^2", "x1 x2 x1 x2 x1 x2 x1 x2"}, mpz_class(8)));

  // non-central kernels are rejected
  auto d8 = group_of(make_spec(2, {2, 2}, Regime::generic));
  Subgroup notcentral = closure(d8, {generator(d8->basis(), 1).e}, kCap);
  CHECK_THROWS_AS(quotient_by_central(d8, notcentral, kCap), computation_error);
}

TEST_CASE("exponent_of") {
  auto g33 = group_of(make_spec(3, {3, 3}, Regime::generic));
  CHECK(exponent_of(closure(g33, {}, kCap)) == 1);
  CHECK(exponent_of(lower_central(g33, 3, kCap)) == 3);
  auto g24 = group_of(make_spec(2, {2, 4}, Regime::generic));
  CHECK(exponent_of(lower_central(g24, 2, kCap)) == 2);
}

TEST_CASE("matches_presentation: dihedral identifications") {
  auto d8 = group_of(make_spec(2, {2, 2}, Regime::generic));
  CHECK(matches_presentation(*d8, {"x1^2", "x2^2", "x1 x2 x1 x2 x1 x2 x1 x2"}, mpz_class(8)));
  CHECK_FALSE(
      matches_presentation(*d8, {"x1^2", "x2^2", "x1 x2 x1 x2 x1 x2 x1 x2"}, mpz_class(16)));
  // D8 is not abelian: the commutator relation fails
  CHECK_FALSE(matches_presentation(*d8, {"[x2,x1]"}, mpz_class(8)));
}

TEST_CASE("dihedral model behaves like the standard presentation") {
  DihedralGroup d16(8);
  CHECK(d16.order() == 16);
  CHECK(matches_presentation(d16, {"x1^2", "x2^8", "[x2,x1] x2^2"}, mpz_class(16)));
  CHECK(order_of(d16, d16.generators()[0], 100) == 2);
  CHECK(order_of(d16, d16.generators()[1], 100) == 8);
  Subgroup z = center_bruteforce(std::make_shared<DihedralGroup>(8), 1000);
  CHECK(z.size() == 2);
}

TEST_CASE("defining relations pin the nilpotent product itself") {
  for (auto spec : {make_spec(2, {2, 2}, Regime::generic), make_spec(2, {3, 9}, Regime::generic),
                    make_spec(3, {2, 4}, Regime::special_2_3)}) {
    auto g = group_of(spec);
    CHECK(matches_presentation(*g, defining_relations(g->basis()), g->basis()->order()));
  }
}
