#include "nilcap/nilprod.hpp"

#include <algorithm>
#include <numeric>

#include "nilcap/valuation.hpp"

namespace nilcap {

struct NpAccess {
  using PairIdx = NpBasis::PairIdx;
  using TripleIdx = NpBasis::TripleIdx;
  static std::shared_ptr<NpBasis> create() { return std::shared_ptr<NpBasis>(new NpBasis()); }
  static GroupSpec& spec(NpBasis& b) { return b.spec_; }
  static std::vector<std::string>& labels(NpBasis& b) { return b.labels_; }
  static std::vector<std::uint64_t>& moduli(NpBasis& b) { return b.moduli_; }
  static std::vector<int>& weights(NpBasis& b) { return b.weights_; }
  static bool& finite(NpBasis& b) { return b.finite_; }
  static mpz_class& order(NpBasis& b) { return b.order_; }
  static CollectorP& lift(NpBasis& b) { return b.lift_; }
  static Collector::Moduli& lift_moduli(NpBasis& b) { return b.lift_moduli_; }
  static auto& pairs(const NpBasis& b) { return b.pairs_; }
  static auto& pairs(NpBasis& b) { return b.pairs_; }
  static auto& triples(const NpBasis& b) { return b.triples_; }
  static auto& triples(NpBasis& b) { return b.triples_; }
  static const Collector::Moduli& lift_moduli(const NpBasis& b) { return b.lift_moduli_; }
};

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::generic: return "generic";
    case Regime::special_2_3: return "special_2_3";
    case Regime::abelian: return "abelian";
  }
  return "?";
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p <= n / p; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// order = 2^a with a >= 1, or 0 when not a 2-power
unsigned two_exponent(std::uint64_t n) {
  if (n < 2) return 0;
  unsigned a = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++a;
  }
  return n == 1 ? a : 0;
}

std::uint64_t gcd_order(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::int64_t floor_mod(std::int64_t v, std::uint64_t n) {
  if (n == 0) return v;
  std::int64_t m = static_cast<std::int64_t>(n);
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

std::int64_t checked_narrow(const mpz_class& v) {
  if (!v.fits_slong_p()) throw computation_error("exponent overflows a machine word");
  return v.get_si();
}

}  // namespace

GroupSpec make_spec(int class_k, std::vector<std::uint64_t> orders, Regime regime) {
  if (class_k < 1 || class_k > 10)
    throw regime_error("class must lie in [1, 10], got " + std::to_string(class_k));
  if (orders.empty()) throw regime_error("at least one cyclic factor is required");
  if (orders.size() > 16) throw regime_error("at most 16 cyclic factors are supported");
  for (auto m : orders)
    if (m == 1) throw regime_error("cyclic factors must have order 0 (infinite) or >= 2");

  GroupSpec spec;
  spec.class_k = class_k;
  spec.regime = regime;
  // sort nondecreasing with infinite factors (order 0) last
  std::vector<int> idx(orders.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    bool ia = orders[a] == 0, ib = orders[b] == 0;
    if (ia != ib) return ib;
    return orders[a] < orders[b];
  });
  for (int i : idx) {
    spec.orders.push_back(orders[i]);
    spec.source_position.push_back(i);
  }

  switch (regime) {
    case Regime::abelian:
      if (class_k != 1) throw regime_error("the abelian regime requires class 1");
      break;
    case Regime::special_2_3: {
      if (class_k != 3) throw regime_error("the 2-adic special basis requires class 3");
      for (auto m : spec.orders)
        if (two_exponent(m) == 0)
          throw regime_error("the 2-adic special basis needs 2-power orders, got " +
                             std::to_string(m));
      break;
    }
    case Regime::generic: {
      if (class_k >= 3) {
        for (auto m : spec.orders)
          for (auto p : prime_factors(m))
            if (p < static_cast<std::uint64_t>(class_k))
              throw regime_error("normal-form hypothesis violated: prime " +
                                 std::to_string(p) + " < class " + std::to_string(class_k) +
                                 " (use the 2-adic special basis for p = 2, class 3)");
      }
      break;
    }
  }
  return spec;
}

const mpz_class& NpBasis::order() const {
  if (!finite_) throw computation_error("the group is infinite");
  return order_;
}

NpBasisP make_group(const GroupSpec& spec) {
  // re-validate so hand-built specs cannot bypass the hypotheses
  GroupSpec checked = make_spec(spec.class_k, spec.orders, spec.regime);
  auto basis = NpAccess::create();
  NpAccess::spec(*basis) = checked;
  const auto& orders = checked.orders;
  const int r = checked.rank();

  auto& labels = NpAccess::labels(*basis);
  auto& moduli = NpAccess::moduli(*basis);
  auto& weights = NpAccess::weights(*basis);

  if (checked.regime == Regime::special_2_3) {
    NpAccess::lift(*basis) = Collector::make(r, 3);
    std::vector<unsigned> alpha(r);
    for (int i = 0; i < r; ++i) alpha[i] = two_exponent(orders[i]);
    auto pow2 = [](unsigned a) -> std::uint64_t { return 1ull << a; };
    for (int i = 0; i < r; ++i) {
      labels.push_back("x" + std::to_string(i + 1));
      moduli.push_back(orders[i]);
      weights.push_back(1);
    }
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        auto& slot = NpAccess::pairs(*basis)[{i, j}];
        std::string xi = "x" + std::to_string(i + 1), xj = "x" + std::to_string(j + 1);
        slot.ji = static_cast<int>(labels.size());
        labels.push_back("[" + xj + "," + xi + "]");
        moduli.push_back(pow2(alpha[i] + 1));
        weights.push_back(2);
        slot.jii = static_cast<int>(labels.size());
        labels.push_back("[" + xj + "," + xi + "^2]");
        moduli.push_back(pow2(alpha[i] - 1));
        weights.push_back(3);
        slot.jij = static_cast<int>(labels.size());
        labels.push_back("[" + xj + "^2," + xi + "]");
        moduli.push_back(alpha[i] == alpha[j] ? pow2(alpha[i] - 1) : pow2(alpha[i]));
        weights.push_back(3);
      }
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        for (int k = j + 1; k < r; ++k) {
          auto& slot = NpAccess::triples(*basis)[{i, j, k}];
          std::string xi = "x" + std::to_string(i + 1), xj = "x" + std::to_string(j + 1),
                      xk = "x" + std::to_string(k + 1);
          slot.jik = static_cast<int>(labels.size());
          labels.push_back("[" + xj + "," + xi + "," + xk + "]");
          moduli.push_back(pow2(alpha[i]));
          weights.push_back(3);
          slot.kij = static_cast<int>(labels.size());
          labels.push_back("[" + xk + "," + xi + "," + xj + "]");
          moduli.push_back(pow2(alpha[i]));
          weights.push_back(3);
        }
  } else {
    const int k = checked.class_k;
    NpAccess::lift(*basis) = Collector::make(r, k);
    const BasicSequence& seq = NpAccess::lift(*basis)->basis();
    for (int idx = 0; idx < seq.size(); ++idx) {
      const CommTreeP& t = seq.item(idx);
      labels.push_back(seq.label_of(idx));
      weights.push_back(t->weight());
      // gcd of the orders of the generators appearing in the commutator
      std::uint64_t n = 0;
      bool first = true;
      std::vector<bool> seen(r, false);
      std::vector<const CommTree*> stack{t.get()};
      while (!stack.empty()) {
        const CommTree* cur = stack.back();
        stack.pop_back();
        if (cur->is_leaf()) {
          seen[cur->gen() - 1] = true;
        } else {
          stack.push_back(cur->left().get());
          stack.push_back(cur->right().get());
        }
      }
      for (int g = 0; g < r; ++g)
        if (seen[g]) {
          n = first ? orders[g] : gcd_order(n, orders[g]);
          first = false;
        }
      moduli.push_back(n);
    }
    // closed-formula coordinate lookups live in pairs_/triples_ too
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        auto tji = CommTree::node(CommTree::leaf(j + 1), CommTree::leaf(i + 1));
        auto& slot = NpAccess::pairs(*basis)[{i, j}];
        if (auto id = seq.index_of(tji)) slot.ji = *id;
        if (k >= 3) {
          if (auto id = seq.index_of(CommTree::node(tji, CommTree::leaf(i + 1)))) slot.jii = *id;
          if (auto id = seq.index_of(CommTree::node(tji, CommTree::leaf(j + 1)))) slot.jij = *id;
        }
      }
    if (k >= 3)
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
          for (int kk = j + 1; kk < r; ++kk) {
            auto tji = CommTree::node(CommTree::leaf(j + 1), CommTree::leaf(i + 1));
            auto tki = CommTree::node(CommTree::leaf(kk + 1), CommTree::leaf(i + 1));
            auto& slot = NpAccess::triples(*basis)[{i, j, kk}];
            if (auto id = seq.index_of(CommTree::node(tji, CommTree::leaf(kk + 1))))
              slot.jik = *id;
            if (auto id = seq.index_of(CommTree::node(tki, CommTree::leaf(j + 1))))
              slot.kij = *id;
          }
  }

  bool finite = true;
  mpz_class order = 1;
  for (auto n : moduli) {
    if (n == 0)
      finite = false;
    else
      order *= static_cast<unsigned long>(n);
  }
  NpAccess::finite(*basis) = finite;
  NpAccess::order(*basis) = finite ? order : 0;
  auto& lm = NpAccess::lift_moduli(*basis);
  for (auto n : moduli) lm.emplace_back(static_cast<unsigned long>(n));
  return basis;
}

bool Element::is_identity() const {
  for (auto v : e)
    if (v != 0) return false;
  return true;
}

Element identity(const NpBasisP& basis) {
  if (!basis) throw computation_error("null basis");
  return Element{basis, std::vector<std::int64_t>(basis->size())};
}

Element generator(const NpBasisP& basis, int g) {
  if (g < 1 || g > basis->spec().rank())
    throw computation_error("generator index x" + std::to_string(g) + " out of range");
  return basis_unit(basis, g - 1);
}

Element basis_unit(const NpBasisP& basis, int idx, std::int64_t exp) {
  Element out = identity(basis);
  out.e[idx] = exp;
  return reduce(out.e, basis);
}

Element reduce(const std::vector<std::int64_t>& raw, const NpBasisP& basis) {
  if (static_cast<int>(raw.size()) != basis->size())
    throw computation_error("exponent vector length does not match the basis");
  Element out{basis, raw};
  for (int i = 0; i < basis->size(); ++i) out.e[i] = floor_mod(out.e[i], basis->modulus(i));
  return out;
}

static void check_same(const Element& a, const Element& b) {
  if (!a.basis || !b.basis) throw computation_error("uninitialised element");
  if (!(a.basis->spec() == b.basis->spec()))
    throw computation_error("elements belong to different groups");
}

FreeNilElement to_free(const Element& a) {
  const NpBasis& b = *a.basis;
  std::vector<mpz_class> e(b.size());
  for (int i = 0; i < b.size(); ++i) e[i] = static_cast<long>(a.e[i]);
  if (b.spec().regime == Regime::special_2_3) {
    // [x_j,x_i]-coordinate of the free form is a_ji + 2 a_jii + 2 a_jij, since
    // [x_j,x_i^2] = [x_j,x_i]^2 [x_j,x_i,x_i] and [x_j^2,x_i] = [x_j,x_i]^2 [x_j,x_i,x_j]
    const BasicSequence& seq = b.lift()->basis();
    std::vector<mpz_class> free_e(seq.size());
    const int r = b.spec().rank();
    for (int i = 0; i < r; ++i) free_e[i] = e[i];
    for (const auto& [key, slot] : NpAccess::pairs(b)) {
      auto [i, j] = key;
      auto tji = CommTree::node(CommTree::leaf(j + 1), CommTree::leaf(i + 1));
      int fji = *seq.index_of(tji);
      int fjii = *seq.index_of(CommTree::node(tji, CommTree::leaf(i + 1)));
      int fjij = *seq.index_of(CommTree::node(tji, CommTree::leaf(j + 1)));
      free_e[fji] = e[slot.ji] + 2 * e[slot.jii] + 2 * e[slot.jij];
      free_e[fjii] = e[slot.jii];
      free_e[fjij] = e[slot.jij];
    }
    for (const auto& [key, slot] : NpAccess::triples(b)) {
      auto [i, j, k] = key;
      auto tji = CommTree::node(CommTree::leaf(j + 1), CommTree::leaf(i + 1));
      auto tki = CommTree::node(CommTree::leaf(k + 1), CommTree::leaf(i + 1));
      free_e[*seq.index_of(CommTree::node(tji, CommTree::leaf(k + 1)))] = e[slot.jik];
      free_e[*seq.index_of(CommTree::node(tki, CommTree::leaf(j + 1)))] = e[slot.kij];
    }
    return b.lift()->from_exponents(std::move(free_e));
  }
  return b.lift()->from_exponents(std::move(e));
}

Element from_free(const FreeNilElement& f, const NpBasisP& basis) {
  const NpBasis& b = *basis;
  const auto& fe = f.exponents();
  std::vector<std::int64_t> e(b.size());
  if (b.spec().regime == Regime::special_2_3) {
    const BasicSequence& seq = b.lift()->basis();
    const int r = b.spec().rank();
    for (int i = 0; i < r; ++i) e[i] = checked_narrow(fe[i]);
    for (const auto& [key, slot] : NpAccess::pairs(b)) {
      auto [i, j] = key;
      auto tji = CommTree::node(CommTree::leaf(j + 1), CommTree::leaf(i + 1));
      mpz_class gji = fe[*seq.index_of(tji)];
      mpz_class gjii = fe[*seq.index_of(CommTree::node(tji, CommTree::leaf(i + 1)))];
      mpz_class gjij = fe[*seq.index_of(CommTree::node(tji, CommTree::leaf(j + 1)))];
      e[slot.ji] = checked_narrow(gji - 2 * gjii - 2 * gjij);
      e[slot.jii] = checked_narrow(gjii);
      e[slot.jij] = checked_narrow(gjij);
    }
    for (const auto& [key, slot] : NpAccess::triples(b)) {
      auto [i, j, k] = key;
      auto tji = CommTree::node(CommTree::leaf(j + 1), CommTree::leaf(i + 1));
      auto tki = CommTree::node(CommTree::leaf(k + 1), CommTree::leaf(i + 1));
      e[slot.jik] = checked_narrow(fe[*seq.index_of(CommTree::node(tji, CommTree::leaf(k + 1)))]);
      e[slot.kij] = checked_narrow(fe[*seq.index_of(CommTree::node(tki, CommTree::leaf(j + 1)))]);
    }
  } else {
    for (int i = 0; i < b.size(); ++i) e[i] = checked_narrow(fe[i]);
  }
  return reduce(e, basis);
}

Element mul_lift(const Element& a, const Element& b) {
  check_same(a, b);
  const NpBasis& basis = *a.basis;
  if (basis.spec().regime == Regime::special_2_3) {
    auto f = basis.lift()->multiply(to_free(a), to_free(b));
    return from_free(f, a.basis);
  }
  auto f = basis.lift()->multiply_mod(to_free(a), to_free(b), NpAccess::lift_moduli(basis));
  return from_free(f, a.basis);
}

namespace {
using i128 = __int128;

std::int64_t reduce128(i128 v, std::uint64_t n) {
  if (n == 0) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
      throw computation_error("exponent overflows a machine word");
    return static_cast<std::int64_t>(v);
  }
  i128 m = static_cast<i128>(n);
  i128 r = v % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}
}  // namespace

Element mul_special_2_3(const Element& a, const Element& b) {
  check_same(a, b);
  const NpBasis& basis = *a.basis;
  if (basis.spec().regime != Regime::special_2_3)
    throw regime_error("mul_special_2_3 needs the 2-adic class-3 basis");
  const auto& c = a.e;
  const auto& d = b.e;
  const int r = basis.spec().rank();
  std::vector<i128> f(basis.size());
  auto c2 = [](i128 x) { return x * (x - 1) / 2; };
  auto A = [&](const std::vector<std::int64_t>& v, const NpAccess::PairIdx& s) -> i128 {
    return i128(v[s.ji]) + 2 * i128(v[s.jii]) + 2 * i128(v[s.jij]);
  };
  for (int i = 0; i < r; ++i) f[i] = i128(c[i]) + d[i];
  const auto& pairs = NpAccess::pairs(basis);
  for (const auto& [key, s] : pairs) {
    auto [i, j] = key;
    i128 aji = A(c, s);
    f[s.ji] = i128(c[s.ji]) + d[s.ji] + i128(c[j]) * d[i] - 2 * aji * d[i] - 2 * aji * d[j] -
              2 * i128(c[j]) * c2(d[i]) - 2 * i128(d[i]) * c2(c[j]) -
              2 * i128(c[j]) * d[i] * d[j];
    f[s.jii] = i128(c[s.jii]) + d[s.jii] + aji * d[i] + i128(c[j]) * c2(d[i]);
    f[s.jij] = i128(c[s.jij]) + d[s.jij] + aji * d[j] + i128(c[j]) * d[i] * d[j] +
               i128(d[i]) * c2(c[j]);
  }
  for (const auto& [key, s] : NpAccess::triples(basis)) {
    auto [i, j, k] = key;
    const auto& sji = pairs.at({i, j});
    const auto& ski = pairs.at({i, k});
    const auto& sjk = pairs.at({j, k});
    f[s.jik] = i128(c[s.jik]) + d[s.jik] + A(c, sji) * d[k] + i128(c[j]) * d[i] * d[k] +
               i128(c[j]) * c[k] * d[i] - A(c, sjk) * d[i];
    f[s.kij] = i128(c[s.kij]) + d[s.kij] + A(c, ski) * d[j] + i128(c[k]) * d[i] * d[j] +
               A(c, sjk) * d[i];
  }
  Element out = identity(a.basis);
  for (int i = 0; i < basis.size(); ++i) out.e[i] = reduce128(f[i], basis.modulus(i));
  return out;
}

Element mul_formula(const Element& a, const Element& b) {
  check_same(a, b);
  const NpBasis& basis = *a.basis;
  const GroupSpec& spec = basis.spec();
  if (spec.regime == Regime::special_2_3)
    throw regime_error("mul_formula covers the generic/abelian regimes; use mul_special_2_3");
  if (spec.class_k > 3)
    throw regime_error("closed multiplication formulas exist for class <= 3 only");
  for (auto n : basis.moduli())
    if (n > (1u << 20)) throw computation_error("formula path caps moduli at 2^20");
  const auto& av = a.e;
  const auto& bv = b.e;
  const int r = spec.rank();
  std::vector<i128> out(basis.size());
  auto c2 = [](i128 x) { return x * (x - 1) / 2; };
  for (int i = 0; i < r; ++i) out[i] = i128(av[i]) + bv[i];
  if (spec.class_k >= 2) {
    const auto& pairs = NpAccess::pairs(basis);
    for (const auto& [key, s] : pairs) {
      auto [i, j] = key;
      out[s.ji] = i128(av[s.ji]) + bv[s.ji] + i128(av[j]) * bv[i];
      if (spec.class_k >= 3) {
        out[s.jii] = i128(av[s.jii]) + bv[s.jii] + i128(av[s.ji]) * bv[i] + i128(av[j]) * c2(bv[i]);
        out[s.jij] = i128(av[s.jij]) + bv[s.jij] + i128(av[s.ji]) * bv[j] + i128(bv[i]) * c2(av[j]) +
                     i128(av[j]) * bv[i] * bv[j];
      }
    }
    if (spec.class_k >= 3)
      for (const auto& [key, s] : NpAccess::triples(basis)) {
        auto [i, j, k] = key;
        const auto& sji = pairs.at({i, j});
        const auto& ski = pairs.at({i, k});
        const auto& skj = pairs.at({j, k});
        out[s.jik] = i128(av[s.jik]) + bv[s.jik] + i128(av[sji.ji]) * bv[k] +
                     i128(av[j]) * bv[i] * bv[k] + i128(av[j]) * av[k] * bv[i] -
                     i128(av[skj.ji]) * bv[i];
        out[s.kij] = i128(av[s.kij]) + bv[s.kij] + i128(av[ski.ji]) * bv[j] +
                     i128(av[k]) * bv[i] * bv[j] + i128(av[skj.ji]) * bv[i];
      }
  }
  Element res = identity(a.basis);
  for (int i = 0; i < basis.size(); ++i) res.e[i] = reduce128(out[i], basis.modulus(i));
  return res;
}

Element mul(const Element& a, const Element& b) {
  check_same(a, b);
  switch (a.basis->spec().regime) {
    case Regime::abelian: {
      std::vector<std::int64_t> out(a.e.size());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.e[i] + b.e[i];
      return reduce(out, a.basis);
    }
    case Regime::special_2_3:
      return mul_special_2_3(a, b);
    case Regime::generic:
      return mul_lift(a, b);
  }
  throw computation_error("unreachable");
}

Element pow(const Element& a, const mpz_class& n) {
  if (!a.basis) throw computation_error("uninitialised element");
  const NpBasis& basis = *a.basis;
  if (basis.spec().regime == Regime::special_2_3) {
    return from_free(basis.lift()->power(to_free(a), n), a.basis);
  }
  if (basis.spec().regime == Regime::abelian) {
    Element out = identity(a.basis);
    for (int i = 0; i < basis.size(); ++i) {
      mpz_class v = n * static_cast<long>(a.e[i]);
      std::uint64_t m = basis.modulus(i);
      if (m != 0) mpz_fdiv_r_ui(v.get_mpz_t(), v.get_mpz_t(), m);
      out.e[i] = checked_narrow(v);
    }
    return reduce(out.e, a.basis);
  }
  return from_free(basis.lift()->power_mod(to_free(a), n, NpAccess::lift_moduli(basis)), a.basis);
}

Element inv(const Element& a) {
  if (!a.basis) throw computation_error("uninitialised element");
  const NpBasis& basis = *a.basis;
  if (basis.spec().regime == Regime::abelian) {
    std::vector<std::int64_t> out(a.e.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = -a.e[i];
    return reduce(out, a.basis);
  }
  if (basis.spec().regime == Regime::special_2_3)
    return from_free(basis.lift()->inverse(to_free(a)), a.basis);
  return from_free(basis.lift()->inverse_mod(to_free(a), NpAccess::lift_moduli(basis)), a.basis);
}

Element comm(const Element& a, const Element& b) {
  check_same(a, b);
  const NpBasis& basis = *a.basis;
  if (basis.spec().regime == Regime::abelian) return identity(a.basis);
  if (basis.spec().regime == Regime::special_2_3)
    return from_free(basis.lift()->commutator(to_free(a), to_free(b)), a.basis);
  return from_free(
      basis.lift()->commutator_mod(to_free(a), to_free(b), NpAccess::lift_moduli(basis)),
      a.basis);
}

std::uint64_t element_order(const Element& a) {
  if (!a.basis) throw computation_error("uninitialised element");
  const NpBasis& basis = *a.basis;
  if (!basis.finite()) throw computation_error("element_order requires a finite group");
  // order divides |G|: strip prime factors of |G| while the power stays trivial
  mpz_class n = basis.order();
  std::vector<std::uint64_t> primes;
  for (auto m : basis.moduli())
    for (auto p : prime_factors(m)) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (auto p : primes) {
    for (;;) {
      if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) break;
      mpz_class cand = n / static_cast<unsigned long>(p);
      if (!pow(a, cand).is_identity()) break;
      n = cand;
    }
  }
  if (!n.fits_ulong_p()) throw computation_error("element order overflows a machine word");
  return n.get_ui();
}

Element parse(const std::string& expr, const NpBasisP& basis) {
  Expr ast = parse_expr(expr, basis->spec().regime == Regime::special_2_3);
  int mg = max_generator(ast);
  if (mg > basis->spec().rank())
    throw computation_error("expression references generator x" + std::to_string(mg) +
                            " but the group has rank " + std::to_string(basis->spec().rank()));
  return eval_expr(ast, NpOps(basis));
}

std::string format(const Element& a) {
  if (!a.basis) throw computation_error("uninitialised element");
  std::string out;
  for (int i = 0; i < a.basis->size(); ++i) {
    if (a.e[i] == 0) continue;
    if (!out.empty()) out += " ";
    out += a.basis->label(i);
    if (a.e[i] != 1) out += "^" + std::to_string(a.e[i]);
  }
  return out;
}

}  // namespace nilcap
