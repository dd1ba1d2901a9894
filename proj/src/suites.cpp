#include "nilcap/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "nilcap/capability.hpp"
#include "nilcap/grouptools.hpp"
#include "nilcap/valuation.hpp"

namespace nilcap {

namespace {

struct Ctx {
  SuiteReport report;
  std::mt19937_64 rng;
  SuiteCaps caps;

  explicit Ctx(std::uint64_t seed) : rng(seed) { report.seed = seed; }

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  void check(bool ok, const std::string& case_id, const std::string& inputs,
             const std::string& expected, const std::string& actual) {
    ++report.cases;
    if (!ok) report.failures.push_back({case_id, inputs, expected, actual});
  }

  template <class T, class U>
  void check_eq(const T& got, const U& want, const std::string& case_id,
                const std::string& inputs) {
    std::ostringstream w, g;
    w << want;
    g << got;
    check(g.str() == w.str(), case_id, inputs, w.str(), g.str());
  }
};

std::string vec_str(const std::vector<std::uint64_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

FreeNilElement random_element(Ctx& c, const CollectorP& col, int maxexp) {
  std::vector<mpz_class> e(col->basis().size());
  for (auto& x : e) x = c.uniform(-maxexp, maxexp);
  return col->from_exponents(std::move(e));
}

FreeNilElement random_element_of_weight(Ctx& c, const CollectorP& col, int w, int maxexp) {
  std::vector<mpz_class> e(col->basis().size());
  for (int i = 0; i < col->basis().size(); ++i)
    if (col->basis().weight_of(i) >= w) e[i] = c.uniform(-maxexp, maxexp);
  // ensure the minimum weight is exactly w
  e[col->basis().weight_begin(w) + c.uniform(0, col->basis().count_of_weight(w) - 1)] =
      c.uniform(1, maxexp);
  return col->from_exponents(std::move(e));
}

/// truncation congruence: equal exponents on all items of weight < w
bool equal_below_weight(const CollectorP& col, const FreeNilElement& a,
                        const FreeNilElement& b, int w) {
  for (int i = 0; i < col->basis().size(); ++i) {
    if (col->basis().weight_of(i) >= w) continue;
    if (a.exponents()[i] != b.exponents()[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------- kummer --

void suite_kummer(Ctx& c) {
  c.report.citation =
      "Kummer: ord_p C(n,m) is the number of carries adding m and n-m in base p; "
      "corollaries ord_p C(p^n, a) = n - ord_p(a) and p^(n - floor(log_p m)) divides "
      "any combination of C(p^n, 1..m)";
  for (std::uint64_t p : {2, 3, 5, 7}) {
    bool all = true;
    std::string bad;
    for (unsigned long n = 0; n <= 200; ++n)
      for (unsigned long m = 0; m <= n; ++m) {
        unsigned long carries = carries_base_p(p, n - m, m);
        Valuation v = ord_p(p, binom(n, m));
        if (v.is_infinite() || v.value() != carries) {
          all = false;
          bad = "n=" + std::to_string(n) + " m=" + std::to_string(m);
        }
      }
    c.check(all, "kummer-exhaustive-p" + std::to_string(p), "n <= 200" + bad, "carries", "ord");
  }
  for (std::uint64_t p : {2, 3, 5}) {
    for (unsigned long n = 1; n <= 6; ++n) {
      mpz_class pn;
      mpz_ui_pow_ui(pn.get_mpz_t(), p, n);
      if (pn > 20000) continue;
      bool all = true;
      for (mpz_class a = 1; a <= pn; ++a) {
        unsigned long direct = ord_p(p, binom(pn.get_ui(), a.get_ui())).value();
        if (prime_power_binom_valuation(p, n, a) != direct) all = false;
      }
      c.check(all, "binom-valuation-p" + std::to_string(p) + "-n" + std::to_string(n),
              "a in (0, p^n]", "n - ord_p(a)", all ? "n - ord_p(a)" : "mismatch");
    }
    for (unsigned long n = 1; n <= 5; ++n) {
      mpz_class pn;
      mpz_ui_pow_ui(pn.get_mpz_t(), p, n);
      for (int trial = 0; trial < 100; ++trial) {
        mpz_class m = 1 + c.uniform(0, pn.get_ui() - 1);
        mpz_class sum = 0;
        for (mpz_class i = 1; i <= m; ++i)
          sum += mpz_class(c.uniform(-50, 50)) * binom(pn.get_ui(), i.get_ui());
        unsigned long bound = binom_sum_divisibility(p, n, m);
        Valuation v = ord_p(p, sum);
        c.check(v >= Valuation::finite(bound),
                "binom-sum-p" + std::to_string(p) + "-n" + std::to_string(n) + "-t" +
                    std::to_string(trial),
                "m=" + m.get_str(), ">= " + std::to_string(bound), v.str());
      }
    }
  }
  for (std::uint64_t p = 2; p <= 50; ++p) {
    if (!is_prime(p)) continue;
    c.check_eq(floor_log(p, 2), (1) / (p - 1), "floorlog2-p" + std::to_string(p),
               "floor(log_p 2) vs floor(1/(p-1))");
  }
}

// ------------------------------------------------------------------ maxs --

void suite_maxs(Ctx& c) {
  c.report.citation =
      "max over s = 1..k of floor((k-s)/(n-1)) + floor(log_n(s+1)) equals floor(k/(n-1)) "
      "and is attained at s = n-1";
  for (unsigned long k = 1; k <= 50; ++k)
    for (unsigned long n = 2; n <= 11; ++n) {
      unsigned long best = 0, at_n1 = 0;
      for (unsigned long s = 1; s <= k; ++s) {
        unsigned long val = (k - s) / (n - 1) + floor_log(n, s + 1);
        best = std::max(best, val);
        if (s == n - 1) at_n1 = val;
      }
      std::string id = "k" + std::to_string(k) + "-n" + std::to_string(n);
      c.check_eq(max_s_bound(k, n), best, "maxs-closed-" + id, "closed form vs brute force");
      if (n - 1 <= k)
        c.check_eq(at_n1, best, "maxs-attained-" + id, "value at s = n-1 vs maximum");
    }
}

// ---------------------------------------------------------------- axioms --

void suite_axioms(Ctx& c) {
  c.report.citation =
      "normal forms are unique, so group axioms and collection confluence hold "
      "in the free class-k groups";
  struct Cell { int r, k, triples, maxexp; };
  for (Cell cell : {Cell{2, 2, 90, 8}, Cell{2, 3, 90, 6}, Cell{3, 2, 80, 6}, Cell{2, 4, 80, 5},
                    Cell{3, 3, 60, 4}, Cell{2, 5, 60, 4}, Cell{3, 4, 28, 3}, Cell{3, 5, 12, 2}}) {
    auto col = Collector::make(cell.r, cell.k);
    std::string id = "r" + std::to_string(cell.r) + "k" + std::to_string(cell.k);
    for (int t = 0; t < cell.triples; ++t) {
      auto a = random_element(c, col, cell.maxexp);
      auto b = random_element(c, col, cell.maxexp);
      auto d = random_element(c, col, cell.maxexp);
      bool assoc = col->multiply(col->multiply(a, b), d) == col->multiply(a, col->multiply(b, d));
      c.check(assoc, "assoc-" + id + "-" + std::to_string(t), a.str() + " | " + b.str(),
              "(ab)c = a(bc)", assoc ? "equal" : "differ");
      bool idlaw = col->multiply(a, col->identity()) == a && col->multiply(col->identity(), a) == a;
      c.check(idlaw, "identity-" + id + "-" + std::to_string(t), a.str(), "ae = ea = a",
              idlaw ? "equal" : "differ");
      bool invlaw = col->multiply(a, col->inverse(a)).is_identity() &&
                    col->multiply(col->inverse(a), a).is_identity();
      c.check(invlaw, "inverse-" + id + "-" + std::to_string(t), a.str(), "a a^-1 = e",
              invlaw ? "equal" : "differ");
    }
    if (cell.k <= 4) {
      // confluence: a random word collected in one pass equals any split
      // collected separately and multiplied
      for (int t = 0; t < 20; ++t) {
        Word w;
        int len = static_cast<int>(c.uniform(2, 6));
        for (int i = 0; i < len; ++i) {
          int g1 = static_cast<int>(c.uniform(1, cell.r));
          int g2 = static_cast<int>(c.uniform(1, cell.r));
          CommTreeP atom = g1 == g2 ? CommTree::leaf(g1)
                                    : CommTree::node(CommTree::leaf(g1), CommTree::leaf(g2));
          w.push_back({atom, mpz_class(c.uniform(-4, 4))});
        }
        auto whole = col->collect(w);
        std::size_t cut = static_cast<std::size_t>(c.uniform(0, len));
        Word left(w.begin(), w.begin() + cut), right(w.begin() + cut, w.end());
        auto split = col->multiply(col->collect(left), col->collect(right));
        c.check(whole == split, "confluence-" + id + "-" + std::to_string(t),
                "word of length " + std::to_string(len), whole.str(), split.str());
      }
    }
  }
}

// ------------------------------------------------------------- identities --

void suite_identities(Ctx& c) {
  c.report.citation =
      "commutator expansion identities [xy,z] = [x,z][[x,z],y][y,z] and "
      "[x,yz] = [x,z][z,[y,x]][x,y]";
  for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {2, 5}, {3, 4}}) {
    auto col = Collector::make(r, k);
    std::string id = "r" + std::to_string(r) + "k" + std::to_string(k);
    int trials = k >= 4 ? 15 : 60;
    for (int t = 0; t < trials; ++t) {
      auto x = random_element(c, col, 3);
      auto y = random_element(c, col, 3);
      auto z = random_element(c, col, 3);
      auto lhs1 = col->commutator(col->multiply(x, y), z);
      auto xz = col->commutator(x, z);
      auto rhs1 = col->multiply(col->multiply(xz, col->commutator(xz, y)), col->commutator(y, z));
      c.check(lhs1 == rhs1, "prodform1-" + id + "-" + std::to_string(t), "", lhs1.str(),
              rhs1.str());
      auto lhs2 = col->commutator(x, col->multiply(y, z));
      auto rhs2 = col->multiply(
          col->multiply(col->commutator(x, z), col->commutator(z, col->commutator(y, x))),
          col->commutator(x, y));
      c.check(lhs2 == rhs2, "prodform2-" + id + "-" + std::to_string(t), "", lhs2.str(),
              rhs2.str());
    }
  }
}

// ----------------------------------------------------------- struik-lemma2 --

void suite_struik_lemma2(Ctx& c) {
  c.report.citation =
      "power-commutator congruences [a^r,b^s] = [a,b]^(rs) [a,b,a]^(s C(r,2)) "
      "[a,b,b]^(r C(s,2)) and the inverse form, modulo weight 4";
  auto col = Collector::make(2, 3);
  auto a = col->generator(1), b = col->generator(2);
  auto ab = col->commutator(a, b);
  auto aba = col->commutator(ab, a);
  auto abb = col->commutator(ab, b);
  auto c2 = [](long v) -> mpz_class { return mpz_class(v) * (v - 1) / 2; };
  for (long r = -6; r <= 6; ++r)
    for (long s = -6; s <= 6; ++s) {
      auto lhs = col->commutator(col->power(a, r), col->power(b, s));
      auto rhs = col->multiply(
          col->multiply(col->power(ab, mpz_class(r) * s), col->power(aba, mpz_class(s) * c2(r))),
          col->power(abb, mpz_class(r) * c2(s)));
      c.check(lhs == rhs, "lemma2-gen-r" + std::to_string(r) + "s" + std::to_string(s), "",
              lhs.str(), rhs.str());
      auto lhs2 = col->commutator(col->power(b, r), col->power(a, s));
      auto rhs2 = col->multiply(
          col->multiply(col->power(ab, mpz_class(-r) * s), col->power(aba, -mpz_class(r) * c2(s))),
          col->power(abb, -mpz_class(s) * c2(r)));
      c.check(lhs2 == rhs2, "lemma2-inv-r" + std::to_string(r) + "s" + std::to_string(s), "",
              lhs2.str(), rhs2.str());
    }
  // arbitrary elements, truncated past weight 3 (the class makes it exact)
  for (int t = 0; t < 25; ++t) {
    auto x = random_element(c, col, 4);
    auto y = random_element(c, col, 4);
    long r = c.uniform(-6, 6), s = c.uniform(-6, 6);
    auto xy = col->commutator(x, y);
    auto lhs = col->commutator(col->power(x, r), col->power(y, s));
    auto rhs = col->multiply(
        col->multiply(col->power(xy, mpz_class(r) * s),
                      col->power(col->commutator(xy, x), mpz_class(s) * c2(r))),
        col->power(col->commutator(xy, y), mpz_class(r) * c2(s)));
    c.check(lhs == rhs, "lemma2-rand-" + std::to_string(t), "r=" + std::to_string(r) +
            " s=" + std::to_string(s), lhs.str(), rhs.str());
  }
}

// ------------------------------------------------------------- hall-power --

void suite_hall_power(Ctx& c) {
  c.report.citation =
      "collection power formula: (x_1...x_s)^n expands over basic commutators "
      "with binomial exponents; checked as power = iterated product";
  for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {2, 5}, {3, 4}}) {
    auto col = Collector::make(r, k);
    std::string id = "r" + std::to_string(r) + "k" + std::to_string(k);
    int trials = k >= 4 ? 6 : 20;
    for (int t = 0; t < trials; ++t) {
      auto a = random_element(c, col, 3);
      for (long n : {-8L, -3L, -1L, 0L, 2L, 5L, 8L}) {
        auto fast = col->power(a, n);
        auto slow = col->identity();
        auto base = n >= 0 ? a : col->inverse(a);
        for (long i = 0; i < std::abs(n); ++i) slow = col->multiply(slow, base);
        c.check(fast == slow, "power-" + id + "-t" + std::to_string(t) + "-n" + std::to_string(n),
                a.str(), slow.str(), fast.str());
      }
    }
  }
}

// --------------------------------------------------------------- jacobi-w --

void suite_jacobi_w(Ctx& c) {
  c.report.citation =
      "weight function laws: W([a,b]) >= W(a)+W(b); bilinear commutator expansion "
      "and the Jacobi variant modulo higher weight; basic-commutator bracketing "
      "with the last generator ([u,v,x_r] basic, or [v,x_r,u]^-1 [u,x_r,v])";
  for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 4}, {3, 3}, {2, 5}, {3, 4}, {3, 5}}) {
    auto col = Collector::make(r, k);
    std::string id = "r" + std::to_string(r) + "k" + std::to_string(k);
    int trials = col->basis().size() > 40 ? 6 : 25;
    for (int t = 0; t < trials; ++t) {
      auto a = random_element(c, col, 2);
      auto b = random_element(c, col, 2);
      auto d = random_element(c, col, 2);
      auto wa = col->weight_of(a), wb = col->weight_of(b), wd = col->weight_of(d);
      if (!wa || !wb || !wd) continue;
      auto br = col->commutator(a, b);
      auto wab = col->weight_of(br);
      c.check(!wab || *wab >= *wa + *wb, "w-super-" + id + "-" + std::to_string(t),
              a.str() + " | " + b.str(), ">= " + std::to_string(*wa + *wb),
              wab ? std::to_string(*wab) : "infinite");
      // Jacobi variant: [a,b,d][b,d,a][d,a,b] has weight > W(a)+W(b)+W(d)
      auto jac = col->multiply(
          col->multiply(col->commutator(col->commutator(a, b), d),
                        col->commutator(col->commutator(b, d), a)),
          col->commutator(col->commutator(d, a), b));
      auto wj = col->weight_of(jac);
      c.check(!wj || *wj >= *wa + *wb + *wd + 1, "w-jacobi-" + id + "-" + std::to_string(t), "",
              "> " + std::to_string(*wa + *wb + *wd), wj ? std::to_string(*wj) : "infinite");
    }
    // bilinearity modulo G_(w1+w2+1)
    for (int t = 0; t < trials; ++t) {
      for (int w1 = 1; w1 < k; ++w1)
        for (int w2 = 1; w1 + w2 <= k; ++w2) {
          auto a1 = random_element_of_weight(c, col, w1, 2);
          auto a2 = random_element_of_weight(c, col, w1, 2);
          auto b1 = random_element_of_weight(c, col, w2, 2);
          long e1 = c.uniform(-3, 3), e2 = c.uniform(-3, 3), f1 = c.uniform(-3, 3);
          auto lhs = col->commutator(
              col->multiply(col->power(a1, e1), col->power(a2, e2)), col->power(b1, f1));
          auto rhs = col->multiply(col->power(col->commutator(a1, b1), mpz_class(e1) * f1),
                                   col->power(col->commutator(a2, b1), mpz_class(e2) * f1));
          c.check(equal_below_weight(col, lhs, rhs, w1 + w2 + 1),
                  "w-bilinear-" + id + "-" + std::to_string(t) + "-w" + std::to_string(w1) +
                      std::to_string(w2),
                  "", "congruent below weight " + std::to_string(w1 + w2 + 1),
                  lhs.str() + " vs " + rhs.str());
        }
    }
  }
  // basic brackets with the last generator, and the weight-(k-1) block map
  for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {3, 3}, {2, 5}, {3, 4}}) {
    auto col = Collector::make(r, k);
    const BasicSequence& seq = col->basis();
    std::string id = "r" + std::to_string(r) + "k" + std::to_string(k);
    auto xr = col->generator(r);
    CommTreeP xr_tree = CommTree::leaf(r);
    std::vector<int> block;
    for (int i = seq.weight_begin(k - 1); i < seq.weight_begin(k); ++i) block.push_back(i);
    // per-item law
    std::vector<FreeNilElement> dvec, fvec;
    bool shapes_ok = true;
    for (int i : block) {
      const CommTreeP& t = seq.item(i);
      const CommTreeP& u = t->left();
      const CommTreeP& v = t->right();
      if (compare(v, xr_tree) <= 0) {
        CommTreeP whole = CommTree::node(t, xr_tree);
        shapes_ok = shapes_ok && is_basic(whole);
        dvec.push_back(col->basis_element(*seq.index_of(whole)));
        fvec.push_back(col->identity());
      } else {
        CommTreeP dt = CommTree::node(CommTree::node(v, xr_tree), u);
        CommTreeP ft = CommTree::node(CommTree::node(u, xr_tree), v);
        shapes_ok = shapes_ok && is_basic(dt) && is_basic(ft);
        auto lhs = col->commutator(col->basis_element(i), xr);
        auto rhs = col->multiply(col->inverse(col->basis_element(*seq.index_of(dt))),
                                 col->basis_element(*seq.index_of(ft)));
        c.check(lhs == rhs, "jacobigeneral-" + id + "-item" + std::to_string(i),
                seq.label_of(i), rhs.str(), lhs.str());
        dvec.push_back(col->inverse(col->basis_element(*seq.index_of(dt))));
        fvec.push_back(col->basis_element(*seq.index_of(ft)));
      }
    }
    c.check(shapes_ok, "jacobigeneral-basic-" + id, "", "all derived brackets basic",
            shapes_ok ? "yes" : "no");
    // [prod c_i^(e_i), x_r] = prod d_i^(e_i) f_i^(e_i) for the whole block
    for (int t = 0; t < 10; ++t) {
      auto g = col->identity();
      auto rhs = col->identity();
      for (std::size_t bi = 0; bi < block.size(); ++bi) {
        long e = c.uniform(-4, 4);
        g = col->multiply(g, col->power(col->basis_element(block[bi]), e));
        rhs = col->multiply(rhs, col->multiply(col->power(dvec[bi], e), col->power(fvec[bi], e)));
      }
      auto lhs = col->commutator(g, xr);
      c.check(lhs == rhs, "wecangodown-" + id + "-" + std::to_string(t), "", rhs.str(), lhs.str());
    }
  }
}

// ----------------------------------------------------------- center suites --

void center_case(Ctx& c, const GroupSpec& spec) {
  NpBasisP basis = make_group(spec);
  if (!basis->finite() || basis->order() > static_cast<unsigned long>(c.caps.max_order)) return;
  auto group = std::make_shared<NilprodGroup>(basis);
  Subgroup brute = center_bruteforce(group, c.caps.cap);
  std::vector<GVec> fgens;
  for (const auto& z : center_formula(basis)) fgens.push_back(z.e);
  Subgroup formula = closure(group, std::move(fgens), c.caps.cap);
  std::string id = "center-k" + std::to_string(spec.class_k) + "-" + regime_name(spec.regime) +
                   vec_str(spec.orders);
  c.check(formula.elements == brute.elements, id, "order " + basis->order().get_str(),
          "|Z| = " + std::to_string(brute.size()),
          "|closure(formula)| = " + std::to_string(formula.size()));
}

void suite_center_2(Ctx& c) {
  c.report.citation =
      "center of a 2-nilpotent product of cyclic groups: x_i^(a_i) is central iff every "
      "gcd(a_i, a_j) divides it; the commutator block is central";
  for (auto orders : std::vector<std::vector<std::uint64_t>>{
           {2, 2}, {3, 3}, {3, 9}, {2, 4}, {4, 4}, {2, 2, 2}, {3, 3, 3}, {2, 4, 8},
           {6, 6}, {12, 12}, {6, 12}, {2, 3}, {10, 15}})
    center_case(c, make_spec(2, orders, Regime::generic));
}

void suite_center_3(Ctx& c) {
  c.report.citation =
      "center of a 3-nilpotent product of cyclic p-groups (p odd) is "
      "<x_r^(p^(a_(r-1))), G_3>";
  for (auto orders : std::vector<std::vector<std::uint64_t>>{{3, 3}, {3, 9}, {9, 9}, {5, 5}, {3, 3, 3}})
    center_case(c, make_spec(3, orders, Regime::generic));
}

void suite_center_k(Ctx& c) {
  c.report.citation =
      "center of a k-nilpotent product of cyclic p-groups (p >= k) is "
      "<x_r^(p^(a_(r-1))), G_k>";
  for (int k : {2, 3}) {
    for (std::uint64_t p : {3, 5}) {
      for (int r : {2, 3}) {
        std::vector<std::vector<unsigned>> tuples;
        if (r == 2)
          tuples = {{1, 1}, {1, 2}, {2, 2}};
        else
          tuples = {{1, 1, 1}, {1, 1, 2}, {1, 2, 2}, {2, 2, 2}};
        for (const auto& alphas : tuples) {
          std::vector<std::uint64_t> orders;
          for (unsigned a : alphas) {
            mpz_class m;
            mpz_ui_pow_ui(m.get_mpz_t(), p, a);
            orders.push_back(m.get_ui());
          }
          center_case(c, make_spec(k, orders, Regime::generic));
        }
      }
    }
  }
  // one step beyond class 3 when the cap allows it
  center_case(c, make_spec(4, {5, 5}, Regime::generic));
}

void suite_center_special(Ctx& c) {
  c.report.citation =
      "center of a 3-nilpotent product of cyclic 2-groups is "
      "<x_r^(2^(a_(r-1)+1)), G_3, [x_j,x_i]^(2^(a_i))>";
  for (auto orders : std::vector<std::vector<std::uint64_t>>{
           {2, 2}, {2, 4}, {4, 4}, {2, 8}, {4, 8}, {8, 8}, {2, 2, 2}, {2, 2, 4}})
    center_case(c, make_spec(3, orders, Regime::special_2_3));
}

// --------------------------------------------------------- exponent-lemmas --

void suite_exponent_lemmas(Ctx& c) {
  c.report.citation =
      "if [z,y^(p^i),y] = [z,y^(p^i),z] = e for all i >= a in a class-3 group, then "
      "<y,z>_3 has exponent p^a, <y,z>_2 has exponent p^(a+floor(1/(p-1))), and "
      "[z^(p^N),y] = [z,y]^(p^N) = [z,y^(p^N)] for N >= a + floor((k-1)/(p-1))";
  for (auto orders : std::vector<std::vector<std::uint64_t>>{{2, 2}, {2, 4}, {4, 4}, {2, 8}, {4, 8}}) {
    GroupSpec spec = make_spec(3, orders, Regime::special_2_3);
    NpBasisP basis = make_group(spec);
    auto group = std::make_shared<NilprodGroup>(basis);
    std::string gid = "special" + vec_str(orders);
    NpOps ops(basis);
    std::vector<std::pair<Element, Element>> pairs = {
        {generator(basis, 1), generator(basis, 2)},
        {generator(basis, 2), generator(basis, 1)},
        {mul(generator(basis, 1), generator(basis, 2)), generator(basis, 2)}};
    int pi = 0;
    for (const auto& [y, z] : pairs) {
      ++pi;
      // smallest level a at which the hypothesis holds for all i >= a
      auto holds_at = [&](unsigned i) {
        Element ypi = pow(y, mpz_class(1) << i);
        Element zy = comm(z, ypi);
        return comm(zy, y).is_identity() && comm(zy, z).is_identity();
      };
      unsigned top = 1;
      while ((mpz_class(1) << top) < mpz_class(static_cast<unsigned long>(
                 *std::max_element(orders.begin(), orders.end()))))
        ++top;
      unsigned a = top + 1;  // y^(2^top) = e, so the hypothesis certainly holds there
      while (a > 0 && holds_at(a - 1)) --a;
      bool tail_ok = true;
      for (unsigned i = a; i <= top + 1; ++i) tail_ok = tail_ok && holds_at(i);
      std::string id = gid + "-pair" + std::to_string(pi);
      c.check(tail_ok, "hypothesis-" + id, "a=" + std::to_string(a),
              "holds for all i >= a", tail_ok ? "holds" : "fails");
      if (!tail_ok) continue;
      // subgroup <y,z> and its lower central terms
      Subgroup h = closure(group, {y.e, z.e}, c.caps.cap);
      Subgroup cur = h;
      std::vector<Subgroup> terms{h};
      for (int term = 2; term <= 3; ++term) {
        std::vector<GVec> brackets;
        for (const auto& g : cur.elements)
          for (const GVec& w : {y.e, z.e}) {
            GVec br = group->comm(g, w);
            if (br != group->identity()) brackets.push_back(br);
          }
        std::sort(brackets.begin(), brackets.end());
        brackets.erase(std::unique(brackets.begin(), brackets.end()), brackets.end());
        cur = closure(group, brackets, c.caps.cap);
        terms.push_back(cur);
      }
      std::uint64_t e3 = exponent_of(terms[2]);
      std::uint64_t e2 = exponent_of(terms[1]);
      mpz_class bound3 = mpz_class(1) << a;
      mpz_class bound2 = mpz_class(1) << (a + 1);
      c.check(mpz_divisible_ui_p(bound3.get_mpz_t(), e3) != 0, "exp3-" + id,
              "a=" + std::to_string(a), "exponent | 2^a", std::to_string(e3));
      c.check(mpz_divisible_ui_p(bound2.get_mpz_t(), e2) != 0, "exp2-" + id,
              "a=" + std::to_string(a), "exponent | 2^(a+1)", std::to_string(e2));
      // final power theorem at N = a + floor((k-1)/(p-1)), k = 2 (class 3)
      mpz_class n = mpz_class(1) << (a + 1);
      Element lhs = comm(pow(z, n), y);
      Element mid = pow(comm(z, y), n);
      Element rhs = comm(z, pow(y, n));
      c.check(lhs == mid && mid == rhs, "powerid-" + id, "N = a+1 = " + std::to_string(a + 1),
              format(mid), format(lhs) + " | " + format(rhs));
    }
  }
}

// -------------------------------------------------------- power-commutator --

void suite_power_commutator(Ctx& c) {
  c.report.citation =
      "[x^n,y] = [x,y]^n c_1^(f_1(n)) c_2^(f_2(n))... over basic commutators of "
      "weight >= 2 in x and [x,y], with f_i integer combinations of C(n, s)";
  for (int k : {3, 4, 5}) {
    auto col = Collector::make(2, k);
    auto x = col->generator(2), y = col->generator(1);
    std::string id = "k" + std::to_string(k);
    auto bracket = col->commutator(x, y);
    int br_idx = -1;
    for (int i = 0; i < col->basis().size(); ++i)
      if (col->basis_element(i) == bracket) br_idx = i;
    // values at n = 0..k+2 pin the binomial form: differences of order k+1 vanish
    std::vector<std::vector<mpz_class>> vals;
    for (int n = 0; n <= k + 2; ++n)
      vals.push_back(col->expand_power_commutator(x, y, n).exponents());
    for (int s = 1; s <= k + 1; ++s)
      for (int t = k + 2; t >= s; --t)
        for (std::size_t j = 0; j < vals[t].size(); ++j) vals[t][j] -= vals[t - 1][j];
    bool flat = true;
    for (std::size_t j = 0; j < vals[k + 1].size(); ++j)
      if (vals[k + 1][j] != 0 || vals[k + 2][j] != 0) flat = false;
    c.check(flat, "binomial-form-" + id, "n = 0..k+2", "differences of order k+1 vanish",
            flat ? "vanish" : "persist");
    for (int n = -4; n <= 6; ++n) {
      auto lhs = col->expand_power_commutator(x, y, n);
      c.check(lhs.exponents()[br_idx] == n, "leading-term-" + id + "-n" + std::to_string(n),
              "[x2^n,x1]", "[x2,x1]-exponent " + std::to_string(n),
              lhs.exponents()[br_idx].get_str());
      // tail letters are commutators on the alphabet {x2, [x2,x1]}: the tree
      // is built from those two atoms alone
      CommTreeP atom_x = CommTree::leaf(2);
      CommTreeP atom_z = CommTree::node(CommTree::leaf(2), CommTree::leaf(1));
      std::function<bool(const CommTreeP&)> in_alphabet = [&](const CommTreeP& t) {
        if (tree_equal(t, atom_x) || tree_equal(t, atom_z)) return true;
        if (t->is_leaf()) return false;
        return in_alphabet(t->left()) && in_alphabet(t->right());
      };
      bool tail_ok = true;
      for (int i = 0; i < col->basis().size(); ++i) {
        if (i == br_idx || lhs.exponents()[i] == 0) continue;
        if (!in_alphabet(col->basis().item(i))) tail_ok = false;
      }
      c.check(tail_ok, "tail-shape-" + id + "-n" + std::to_string(n), "[x2^n,x1]",
              "tail letters built from x2 and [x2,x1]", tail_ok ? "yes" : "no");
    }
    // pinned small cases
    if (k == 3) {
      auto e2 = col->expand_power_commutator(x, y, 2);
      auto want2 = col->collect(
          {{CommTree::node(CommTree::leaf(2), CommTree::leaf(1)), 2},
           {CommTree::node(CommTree::node(CommTree::leaf(2), CommTree::leaf(1)), CommTree::leaf(2)),
            1}});
      c.check(e2 == want2, "pinned-n2", "[x2^2,x1]", want2.str(), e2.str());
      auto e3 = col->expand_power_commutator(x, y, 3);
      auto want3 = col->collect(
          {{CommTree::node(CommTree::leaf(2), CommTree::leaf(1)), 3},
           {CommTree::node(CommTree::node(CommTree::leaf(2), CommTree::leaf(1)), CommTree::leaf(2)),
            3}});
      c.check(e3 == want3, "pinned-n3", "[x2^3,x1]", want3.str(), e3.str());
    }
  }
}

// ------------------------------------------------------------- capability --

void suite_capability(Ctx& c) {
  c.report.citation =
      "capability decisions: Baer (abelian), the p > k and p = 2, k = 2 "
      "characterisations with verified witnesses, the necessity bound, and the "
      "known 4-generator insufficiency example";
  // two-route agreement on all torsion inputs with at most four factors of
  // order <= 64 (the internal cross-check throws on disagreement)
  {
    bool ok = true;
    long count = 0;
    try {
      for (std::uint64_t a = 2; a <= 64; ++a)
        for (std::uint64_t b = a; b <= 65; ++b)
          for (std::uint64_t d = (b <= 64 ? b : 65); d <= 65; ++d)
            for (std::uint64_t f = (d <= 64 ? d : 65); f <= 65; ++f) {
              std::vector<std::uint64_t> v{a};
              if (b <= 64) v.push_back(b);
              if (d <= 64) v.push_back(d);
              if (f <= 64) v.push_back(f);
              baer_abelian(v);
              ++count;
            }
    } catch (const computation_error& e) {
      ok = false;
    }
    c.check(ok, "baer-two-routes", std::to_string(count) + " inputs", "routes agree",
            ok ? "agree" : "disagree");
  }
  // soundness: capable verdicts verify on the small family
  for (std::uint64_t p : {3, 5}) {
    for (int r : {2, 3}) {
      std::vector<std::vector<unsigned>> tuples =
          r == 2 ? std::vector<std::vector<unsigned>>{{1, 1}, {1, 2}, {2, 2}}
                 : std::vector<std::vector<unsigned>>{{1, 1, 1}, {1, 1, 2}, {1, 2, 2}, {2, 2, 2}};
      for (const auto& alphas : tuples) {
        std::vector<std::uint64_t> orders;
        for (unsigned a : alphas) {
          mpz_class m;
          mpz_ui_pow_ui(m.get_mpz_t(), p, a);
          orders.push_back(m.get_ui());
        }
        GroupSpec spec = make_spec(2, orders, Regime::generic);
        CapabilityVerdict v = capable_nilprod(spec);
        bool expect = alphas[alphas.size() - 1] == alphas[alphas.size() - 2];
        std::string id = "nilprod-p" + std::to_string(p) + vec_str(orders);
        c.check((v.decision == Decision::Capable) == expect, id, "k=2",
                expect ? "Capable" : "NotCapable", decision_name(v.decision));
        if (v.decision == Decision::Capable) {
          bool verified = verify_witness(spec, v, c.caps.cap);
          c.check(verified, id + "-witness", "", "verified", verified ? "verified" : "failed");
          c.check(necessary_condition(p, 2, alphas), id + "-necessity", "", "true", "checked");
        }
      }
    }
  }
  for (auto alphas : std::vector<std::vector<unsigned>>{{1, 1}, {1, 2}, {2, 2}, {2, 3}, {1, 3}}) {
    std::vector<std::uint64_t> orders;
    for (unsigned a : alphas) orders.push_back(1ull << a);
    GroupSpec spec = make_spec(2, orders, Regime::generic);
    CapabilityVerdict v = capable_nilprod(spec);
    bool expect = alphas[1] <= alphas[0] + 1;
    std::string id = "nilprod-p2" + vec_str(orders);
    c.check((v.decision == Decision::Capable) == expect, id, "k=2",
            expect ? "Capable" : "NotCapable", decision_name(v.decision));
    if (v.decision == Decision::Capable) {
      bool verified = verify_witness(spec, v, c.caps.cap);
      c.check(verified, id + "-witness", "", "verified", verified ? "verified" : "failed");
    }
  }
  // abelian pins and open regimes
  c.check_eq(decision_name(baer_abelian({2, 2}).decision), "Capable", "baer-2-2", "C2+C2");
  c.check_eq(decision_name(baer_abelian({2, 4}).decision), "NotCapable", "baer-2-4", "C2+C4");
  c.check_eq(decision_name(baer_abelian({0, 0}).decision), "Capable", "baer-0-0", "Z+Z");
  c.check_eq(decision_name(baer_abelian({0, 2}).decision), "NotCapable", "baer-0-2", "Z+C2");
  c.check_eq(decision_name(capable_nilprod(make_spec(2, {3, 9}, Regime::generic)).decision),
             "NotCapable", "nilprod-3-9", "k=2 p=3 (1,2)");
  c.check_eq(decision_name(capable_nilprod(make_spec(3, {3, 3}, Regime::generic)).decision),
             "Undecided", "nilprod-open-p3k3", "p = k = 3");
  c.check_eq(decision_name(capable_nilprod(make_spec(3, {3, 243}, Regime::generic)).decision),
             "NotCapable", "nilprod-open-necessity", "p = k = 3, (1,5) violates the bound");
  // the extra-special 4-generator example of order p^5: the necessary
  // condition holds, yet the group is known not to be capable; no decision
  // procedure here claims it
  c.check(necessary_condition(3, 2, {1, 1, 1, 1}), "extraspecial-necessity", "p=3 (1,1,1,1)",
          "true", "necessary condition holds yet the group is not capable");
}

// ------------------------------------------------------ dihedral-tightness --

void suite_dihedral(Ctx& c) {
  c.report.citation =
      "for p = 2 the necessity bound a_r <= a_(r-1) + (k-1) is attained: the dihedral "
      "group of order 2^(k+1) is the central quotient of the one of order 2^(k+2)";
  for (int k : {2, 3}) {
    std::string id = "k" + std::to_string(k);
    std::uint64_t half = 1ull << (k + 1);  // rotation order of the big dihedral
    auto big = std::make_shared<DihedralGroup>(half);
    std::vector<std::string> rel_big = {"x1^2", "x2^" + std::to_string(half), "[x2,x1] x2^2"};
    c.check(matches_presentation(*big, rel_big, mpz_class(2 * half)), "model-" + id,
            "dihedral of order " + std::to_string(2 * half), "presentation holds", "checked");
    Subgroup z = center_bruteforce(big, c.caps.cap);
    c.check_eq(z.size(), 2, "center-" + id, "center of the order-" + std::to_string(2 * half) +
               " dihedral group");
    auto quot = quotient_by_central(big, z, c.caps.cap);
    std::vector<std::string> rel_small = {"x1^2", "x2^" + std::to_string(half / 2),
                                          "[x2,x1] x2^2"};
    bool small_ok = matches_presentation(*quot, rel_small, mpz_class(half));
    c.check(small_ok, "quotient-" + id, "", "dihedral of order " + std::to_string(half),
            small_ok ? "matches" : "differs");
    auto gens = quot->generators();
    std::uint64_t o1 = order_of(*quot, gens[0], 1u << 12);
    std::uint64_t o2 = order_of(*quot, gens[1], 1u << 12);
    c.check_eq(o1, 2, "gen-order-flip-" + id, "image of the reflection");
    c.check_eq(o2, half / 2, "gen-order-rot-" + id, "image of the rotation");
    // exponents (1, k): the bound is met with equality
    c.check(necessary_condition(2, k, {1, static_cast<unsigned>(k)}), "bound-met-" + id,
            "alphas (1," + std::to_string(k) + ")", "true", "holds");
    c.check(!necessary_condition(2, k, {1, static_cast<unsigned>(k + 1)}), "bound-tight-" + id,
            "alphas (1," + std::to_string(k + 1) + ")", "false", "fails past the bound");
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "kummer",          "maxs",       "axioms",     "identities",
      "struik-lemma2",   "hall-power", "jacobi-w",   "center-2",
      "center-3",        "center-k",   "center-2-3special", "exponent-lemmas",
      "power-commutator", "capability", "dihedral-tightness"};
  return names;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, const SuiteCaps& caps) {
  Ctx c(seed);
  c.caps = caps;
  c.report.suite = name;
  auto t0 = std::chrono::steady_clock::now();
  if (name == "kummer")
    suite_kummer(c);
  else if (name == "maxs")
    suite_maxs(c);
  else if (name == "axioms")
    suite_axioms(c);
  else if (name == "identities")
    suite_identities(c);
  else if (name == "struik-lemma2")
    suite_struik_lemma2(c);
  else if (name == "hall-power")
    suite_hall_power(c);
  else if (name == "jacobi-w")
    suite_jacobi_w(c);
  else if (name == "center-2")
    suite_center_2(c);
  else if (name == "center-3")
    suite_center_3(c);
  else if (name == "center-k")
    suite_center_k(c);
  else if (name == "center-2-3special")
    suite_center_special(c);
  else if (name == "exponent-lemmas")
    suite_exponent_lemmas(c);
  else if (name == "power-commutator")
    suite_power_commutator(c);
  else if (name == "capability")
    suite_capability(c);
  else if (name == "dihedral-tightness")
    suite_dihedral(c);
  else
    throw computation_error("unknown suite '" + name + "'");
  auto t1 = std::chrono::steady_clock::now();
  c.report.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return c.report;
}

}  // namespace nilcap
