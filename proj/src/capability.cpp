#include "nilcap/capability.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "nilcap/valuation.hpp"

namespace nilcap {

std::string decision_name(Decision d) {
  switch (d) {
    case Decision::Capable: return "Capable";
    case Decision::NotCapable: return "NotCapable";
    case Decision::Undecided: return "Undecided";
  }
  return "?";
}

namespace {

const char* kCiteNecessity =
    "necessity: a capable p-group of class k minimally generated with orders "
    "p^a_1 <= ... <= p^a_r forces r > 1 and a_r <= a_(r-1) + floor((k-1)/(p-1))";
const char* kCiteBaer =
    "Baer: a finitely generated direct sum of cyclic groups is capable iff it has "
    "rank > 1 and its top two invariant factors coincide";
const char* kCiteSmallClass =
    "k-nilpotent products of cyclic p-groups with p > k are capable iff r > 1 "
    "and a_(r-1) = a_r; the (k+1)-nilpotent product is a witness";
const char* kCiteTwoGroups =
    "2-nilpotent products of cyclic 2-groups are capable iff r > 1 and "
    "a_r <= a_(r-1) + 1; the 2-adic class-3 product is a witness";
const char* kCiteOpen =
    "open question: capability of p-nilpotent products of cyclic p-groups for "
    "p = k, and the general bound a_r <= a_(r-1) + N(k, p)";
const char* kCiteBaconKappe =
    "Bacon-Kappe: a 2-generator p-group of class 2, p odd, is capable iff the "
    "two generator orders are equal";

std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t m) {
  if (m < 2) throw computation_error("expected a prime power >= 2");
  std::uint64_t p = m;
  for (std::uint64_t d = 2; d <= m / d; ++d)
    if (m % d == 0) {
      p = d;
      break;
    }
  unsigned a = 0;
  while (m % p == 0) {
    m /= p;
    ++a;
  }
  if (m != 1) throw computation_error("expected a prime power");
  return {p, a};
}

mpz_class upow(std::uint64_t p, unsigned a) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), p, a);
  return out;
}

/// invariant-factor chain d_1 | d_2 | ... | d_r of a finite abelian group
std::vector<std::uint64_t> invariant_factors(std::vector<std::uint64_t> orders) {
  std::map<std::uint64_t, std::vector<unsigned>> primary;  // prime -> exponents desc
  for (auto m : orders) {
    std::uint64_t rest = m;
    for (std::uint64_t p = 2; p <= rest / p; ++p)
      if (rest % p == 0) {
        unsigned a = 0;
        while (rest % p == 0) {
          rest /= p;
          ++a;
        }
        primary[p].push_back(a);
      }
    if (rest > 1) primary[rest].push_back(1);
  }
  std::size_t rank = 0;
  for (auto& [p, exps] : primary) {
    std::sort(exps.begin(), exps.end(), std::greater<>());
    rank = std::max(rank, exps.size());
  }
  std::vector<std::uint64_t> factors(rank, 1);  // factors[0] = largest
  for (auto& [p, exps] : primary)
    for (std::size_t i = 0; i < exps.size(); ++i)
      for (unsigned e = 0; e < exps[i]; ++e) factors[i] *= p;
  std::reverse(factors.begin(), factors.end());  // ascending, divisibility chain
  return factors;
}

}  // namespace

bool necessary_condition(std::uint64_t p, int k, const std::vector<unsigned>& alphas) {
  if (alphas.empty()) throw computation_error("necessary_condition needs generator orders");
  if (!std::is_sorted(alphas.begin(), alphas.end()))
    throw computation_error("generator order exponents must be sorted ascending");
  for (auto a : alphas)
    if (a < 1) throw computation_error("generator order exponents must be >= 1");
  if (k < 1) throw computation_error("class must be >= 1");
  const std::size_t r = alphas.size();
  if (r < 2) return false;
  return alphas[r - 1] <= alphas[r - 2] + hall_bound(static_cast<unsigned long>(k), p);
}

CapabilityVerdict baer_abelian(const std::vector<std::uint64_t>& orders) {
  std::vector<std::uint64_t> torsion;
  int rank0 = 0;  // free rank
  for (auto m : orders) {
    if (m == 0)
      ++rank0;
    else if (m >= 2)
      torsion.push_back(m);
    else if (m != 1)
      throw computation_error("cyclic orders must be 0 (infinite) or >= 1");
  }

  CapabilityVerdict v;
  v.citation = kCiteBaer;

  auto witness_spec = [](std::vector<std::uint64_t> factors) {
    WitnessDesc w;
    w.base = make_spec(2, std::move(factors), Regime::generic);
    w.finite = true;
    for (auto m : w.base.orders)
      if (m == 0) w.finite = false;
    return w;
  };

  if (rank0 >= 2) {
    v.decision = Decision::Capable;
    v.reason = "baer";
    std::vector<std::uint64_t> factors = torsion;
    factors.push_back(0);
    factors.push_back(0);
    v.witness = witness_spec(factors);
    return v;
  }
  if (rank0 == 1) {
    // one infinite factor over bounded torsion: a witness would force an
    // unbounded torsion ladder, so not capable
    v.decision = Decision::NotCapable;
    v.reason = "baer";
    return v;
  }
  if (torsion.empty()) {  // trivial group: its own central quotient
    v.decision = Decision::Capable;
    v.reason = "trivial";
    return v;
  }
  std::vector<std::uint64_t> factors = invariant_factors(torsion);
  const std::size_t r = factors.size();
  bool capable = r >= 2 && factors[r - 1] == factors[r - 2];

  // second route: the coprime reduction decides per prime part
  {
    std::map<std::uint64_t, std::vector<unsigned>> primary;
    for (auto m : torsion) {
      std::uint64_t rest = m;
      for (std::uint64_t p = 2; p <= rest / p; ++p)
        if (rest % p == 0) {
          unsigned a = 0;
          while (rest % p == 0) {
            rest /= p;
            ++a;
          }
          primary[p].push_back(a);
        }
      if (rest > 1) primary[rest].push_back(1);
    }
    bool per_prime = !primary.empty();
    for (auto& [p, exps] : primary) {
      std::sort(exps.begin(), exps.end());
      if (exps.size() < 2 || exps[exps.size() - 1] != exps[exps.size() - 2]) per_prime = false;
    }
    if (per_prime != capable)
      throw computation_error("internal: invariant-factor and per-prime routes disagree");
  }

  if (capable) {
    v.decision = Decision::Capable;
    v.reason = "baer";
    v.witness = witness_spec(factors);
  } else {
    v.decision = Decision::NotCapable;
    v.reason = "baer";
  }
  return v;
}

CapabilityVerdict capable_nilprod(const GroupSpec& spec) {
  if (spec.class_k == 1 || spec.regime == Regime::abelian) return baer_abelian(spec.orders);

  std::uint64_t p = 0;
  std::vector<unsigned> alphas;
  for (auto m : spec.orders) {
    if (m == 0)
      throw computation_error(
          "capability of nilpotent products is decided for cyclic p-groups; "
          "infinite factors are out of range");
    auto [q, a] = prime_power(m);
    if (p == 0) p = q;
    if (q != p)
      throw computation_error(
          "mixed primes: decompose into coprime parts (abelian reduction) first");
    alphas.push_back(a);
  }
  std::sort(alphas.begin(), alphas.end());
  const int k = spec.class_k;
  const std::size_t r = alphas.size();

  CapabilityVerdict v;
  if (p > static_cast<std::uint64_t>(k)) {
    v.citation = kCiteSmallClass;
    if (r > 1 && alphas[r - 1] == alphas[r - 2]) {
      v.decision = Decision::Capable;
      v.reason = "nilprod-small-class";
      WitnessDesc w;
      w.base = make_spec(k + 1, spec.orders, Regime::generic);
      w.finite = true;
      v.witness = w;
    } else {
      v.decision = Decision::NotCapable;
      v.reason = "nilprod-small-class";
    }
    return v;
  }
  if (p == 2 && k == 2) {
    v.citation = kCiteTwoGroups;
    if (r > 1 && alphas[r - 1] <= alphas[r - 2] + 1) {
      v.decision = Decision::Capable;
      v.reason = "nilprod-2-groups";
      WitnessDesc w;
      w.base = make_spec(3, spec.orders, Regime::special_2_3);
      w.finite = true;
      v.witness = w;
    } else {
      v.decision = Decision::NotCapable;
      v.reason = "nilprod-2-groups";
    }
    return v;
  }
  // p <= k and not (p = 2, k = 2): only the necessary condition applies
  if (!necessary_condition(p, k, alphas)) {
    v.decision = Decision::NotCapable;
    v.reason = "necessary-condition";
    v.citation = kCiteNecessity;
  } else {
    v.decision = Decision::Undecided;
    v.reason = "open-question";
    v.citation = kCiteOpen;
  }
  return v;
}

namespace {

/// Verification for witnesses too large to enumerate: plain nilpotent-product
/// witness whose center is coordinate-aligned. For class 2 that subgroup is
/// <x_i^(L_i), G_2> with L_i = lcm over j != i of gcd(N_i, N_j); for
/// class >= 3 cyclic p-groups it is <x_r^(p^(a_{r-1})), top weight block>.
/// Generators of the closed-form center are verified to centralise.
bool verify_big_nilprod_witness(const std::vector<std::string>& relations,
                                const mpz_class& expected_order, const GroupSpec& wspec) {
  NpBasisP basis = make_group(wspec);
  std::vector<Element> zgens = center_formula(basis);
  NpOps ops(basis);
  Element id = identity(basis);
  for (const auto& z : zgens)
    for (int g = 1; g <= wspec.rank(); ++g)
      if (comm(z, generator(basis, g)) != id) return false;

  const int r = wspec.rank();
  const int kw = wspec.class_k;
  // reduction steps per generator coordinate; the top-weight block is killed
  std::vector<std::int64_t> step(r);
  if (kw == 2) {
    for (int i = 0; i < r; ++i) {
      std::uint64_t l = 1;
      for (int j = 0; j < r; ++j)
        if (j != i) l = std::lcm(l, std::gcd(wspec.orders[i], wspec.orders[j]));
      step[i] = static_cast<std::int64_t>(l);
    }
  } else {
    auto [p, atop] = prime_power(wspec.orders[r - 1]);
    auto [p2, aprev] = prime_power(wspec.orders[r - 2]);
    if (p != p2) throw computation_error("internal: mixed primes in a nilprod witness");
    (void)atop;
    for (int i = 0; i < r - 1; ++i) step[i] = static_cast<std::int64_t>(wspec.orders[i]);
    step[r - 1] = upow(p, aprev).get_si();
  }

  mpz_class zorder = 1;
  for (int i = 0; i < r; ++i)
    zorder *= mpz_class(static_cast<unsigned long>(wspec.orders[i])) /
              static_cast<unsigned long>(step[i]);
  for (int idx = 0; idx < basis->size(); ++idx)
    if (basis->weight(idx) == kw) zorder *= static_cast<unsigned long>(basis->modulus(idx));
  if (basis->order() / zorder != expected_order) return false;

  auto canon = [&](const Element& g) {
    Element out = g;
    for (int idx = 0; idx < basis->size(); ++idx)
      if (basis->weight(idx) == kw) out.e[idx] = 0;
    for (int i = 0; i < r; ++i) out.e[i] %= step[i];
    return out;
  };
  Element cid = canon(id);
  for (const auto& rel : relations) {
    Expr e = parse_expr(rel, true);
    if (canon(eval_expr(e, ops)) != cid) return false;
  }
  return true;
}

}  // namespace

bool verify_witness_presented(const std::vector<std::string>& relations,
                              const mpz_class& expected_order,
                              const CapabilityVerdict& verdict, std::uint64_t cap) {
  if (verdict.decision != Decision::Capable || !verdict.witness)
    throw computation_error("verify_witness needs a Capable verdict carrying a witness");
  const WitnessDesc& w = *verdict.witness;
  if (!w.finite) throw computation_error("witness is infinite; nothing to enumerate");

  NpBasisP base = make_group(w.base);
  if (!base->finite()) throw computation_error("witness base group is infinite");

  bool small = base->order() <= static_cast<unsigned long>(cap);
  if (!small) {
    if (!w.kernel.empty())
      throw cap_error("witness with kernel exceeds the enumeration cap");
    return verify_big_nilprod_witness(relations, expected_order, w.base);
  }

  auto parent = std::make_shared<NilprodGroup>(base);
  FiniteGroupP group = parent;
  if (!w.kernel.empty()) {
    std::vector<GVec> kgens;
    for (const auto& expr : w.kernel) kgens.push_back(parse(expr, base).e);
    Subgroup kernel = closure(parent, std::move(kgens), cap);
    group = quotient_by_normal(parent, kernel);
  }
  Subgroup center = center_bruteforce(group, cap);
  auto q = std::make_shared<QuotientGroup>(group, center);
  return matches_presentation(*q, relations, expected_order);
}

bool verify_witness(const GroupSpec& g, const CapabilityVerdict& verdict, std::uint64_t cap) {
  GroupSpec canonical = g;
  for (auto m : g.orders)
    if (m == 0) throw computation_error("verify_witness needs a finite group");
  if (g.class_k == 1) {
    // present an abelian group through its invariant factors: that is the
    // shape the Baer witness realises, and the groups coincide
    canonical = make_spec(1, invariant_factors(g.orders), Regime::abelian);
  }
  NpBasisP gb = make_group(canonical);
  if (!gb->finite()) throw computation_error("verify_witness needs a finite group");
  return verify_witness_presented(defining_relations(gb), gb->order(), verdict, cap);
}

void validate(const Class2Presentation& pres) {
  if (pres.p < 3 || !is_prime(pres.p))
    throw regime_error("the class-2 presentation needs an odd prime");
  if (pres.gamma < 1) throw regime_error("constraint violated: gamma >= 1");
  if (pres.beta < pres.gamma) throw regime_error("constraint violated: beta >= gamma");
  if (pres.alpha < pres.gamma) throw regime_error("constraint violated: alpha >= gamma");
  if (pres.sigma > pres.gamma) throw regime_error("constraint violated: sigma <= gamma");
  if (pres.alpha + pres.sigma < 2 * pres.gamma)
    throw regime_error("constraint violated: alpha + sigma >= 2 gamma");
  if (pres.sigma == pres.gamma && pres.alpha < pres.beta)
    throw regime_error("constraint violated: sigma = gamma requires alpha >= beta");
}

std::vector<std::string> class2_relations(const Class2Presentation& pres) {
  auto P = [&](unsigned e) { return upow(pres.p, e).get_str(); };
  std::vector<std::string> rels;
  rels.push_back("x1^" + P(pres.alpha));
  rels.push_back("x2^" + P(pres.beta));
  rels.push_back("[x2,x1]^" + P(pres.gamma));
  rels.push_back("[x1,x2,x1]");
  rels.push_back("[x1,x2,x2]");
  rels.push_back("x1^" + P(pres.alpha + pres.sigma - pres.gamma) + " [x2,x1]^" + P(pres.sigma));
  return rels;
}

namespace {

/// Presents generators of an inner group in a chosen order.
class RelabeledGroup : public FiniteGroup {
 public:
  RelabeledGroup(FiniteGroupP inner, std::vector<int> order)
      : inner_(std::move(inner)), order_(std::move(order)) {}
  GVec identity() const override { return inner_->identity(); }
  GVec mul(const GVec& a, const GVec& b) const override { return inner_->mul(a, b); }
  GVec inv(const GVec& a) const override { return inner_->inv(a); }
  std::vector<GVec> generators() const override {
    auto g = inner_->generators();
    std::vector<GVec> out;
    for (int i : order_) out.push_back(g[i]);
    return out;
  }
  mpz_class order() const override { return inner_->order(); }
  void enumerate(const std::function<void(const GVec&)>& visit,
                 std::uint64_t cap) const override {
    inner_->enumerate(visit, cap);
  }
  std::string show(const GVec& a) const override { return inner_->show(a); }

 private:
  FiniteGroupP inner_;
  std::vector<int> order_;
};

}  // namespace

PresentedGroup presentation_group(const Class2Presentation& pres) {
  validate(pres);
  const std::uint64_t pa = upow(pres.p, pres.alpha).get_ui();
  const std::uint64_t pb = upow(pres.p, pres.beta).get_ui();
  GroupSpec kspec = make_spec(2, {pa, pb}, Regime::generic);
  // position of a (caller factor 0) and b (caller factor 1) after sorting
  int ia = -1, ib = -1;
  for (int i = 0; i < 2; ++i) {
    if (kspec.source_position[i] == 0) ia = i + 1;
    if (kspec.source_position[i] == 1) ib = i + 1;
  }
  NpBasisP kb = make_group(kspec);
  auto parent = std::make_shared<NilprodGroup>(kb);
  std::string xa = "x" + std::to_string(ia), xb = "x" + std::to_string(ib);
  auto P = [&](unsigned e) { return upow(pres.p, e).get_str(); };
  std::vector<std::string> kernel_exprs = {
      "[" + xb + "," + xa + "]^" + P(pres.gamma),
      xa + "^" + P(pres.alpha + pres.sigma - pres.gamma) + " [" + xb + "," + xa + "]^" +
          P(pres.sigma)};
  std::vector<GVec> kgens;
  for (const auto& e : kernel_exprs) kgens.push_back(parse(e, kb).e);
  Subgroup kernel = closure(parent, std::move(kgens), 1u << 22);
  auto quot = quotient_by_normal(parent, kernel);

  PresentedGroup out;
  if (ia == 1) {
    out.group = quot;
  } else {
    out.group = std::make_shared<RelabeledGroup>(quot, std::vector<int>{1, 0});
  }
  out.relations = class2_relations(pres);
  out.order = quot->order();
  return out;
}

CapabilityVerdict capable_class2_2gen(const Class2Presentation& pres) {
  validate(pres);
  CapabilityVerdict v;
  v.citation = kCiteBaconKappe;
  if (pres.alpha != pres.beta) {
    v.decision = Decision::NotCapable;
    v.reason = "class2-2generator";
    return v;
  }
  v.decision = Decision::Capable;
  v.reason = "class2-2generator";

  const std::uint64_t pa = upow(pres.p, pres.alpha).get_ui();
  WitnessDesc w;
  w.base = make_spec(3, {pa, pa}, Regime::generic);
  auto P = [&](unsigned e) { return upow(pres.p, e).get_str(); };
  if (pres.sigma == pres.gamma) {
    // modded coproduct: the class-3 product by <[x2,x1,k]^(p^gamma)>
    w.kernel = {"[x2,x1,x1]^" + P(pres.gamma), "[x2,x1,x2]^" + P(pres.gamma)};
  } else {
    // staged construction: make [x2,x1]^(p^gamma) central, kill
    // [x2,x1,x1]^(p^sigma), then make x1^(p^(alpha+sigma-gamma)) [x2,x1]^(p^sigma)
    // central via [x2,x1]^(p^(alpha+sigma-gamma)) [x2,x1,x2]^(-p^sigma)
    w.kernel = {"[x2,x1,x1]^" + P(pres.gamma), "[x2,x1,x2]^" + P(pres.gamma),
                "[x2,x1,x1]^" + P(pres.sigma),
                "[x2,x1]^" + P(pres.alpha + pres.sigma - pres.gamma) + " [x2,x1,x2]^-" +
                    P(pres.sigma)};
  }
  v.witness = w;
  return v;
}

}  // namespace nilcap
