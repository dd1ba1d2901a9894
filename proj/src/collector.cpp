#include "nilcap/collector.hpp"

#include <algorithm>

#include "nilcap/valuation.hpp"

namespace nilcap {

bool FreeNilElement::is_identity() const {
  for (const auto& x : e_)
    if (x != 0) return false;
  return true;
}

std::string FreeNilElement::str() const {
  std::string out;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] == 0) continue;
    if (!out.empty()) out += " ";
    out += owner_->basis().label_of(static_cast<int>(i));
    if (e_[i] != 1) out += "^" + e_[i].get_str();
  }
  return out;
}

Collector::Collector(int generators, int max_weight) : basis_(generators, max_weight) {
  weights_.reserve(basis_.size());
  for (int i = 0; i < basis_.size(); ++i) weights_.push_back(basis_.weight_of(i));
}

CollectorP Collector::make(int generators, int max_weight) {
  return CollectorP(new Collector(generators, max_weight));
}

const Collector::Vec& Collector::check(const FreeNilElement& a) const {
  if (!a.owner()) throw computation_error("uninitialised free-nilpotent element");
  if (a.owner()->generators() != generators() || a.owner()->max_weight() != max_weight())
    throw computation_error("basis mismatch between free-nilpotent elements");
  return a.e_;
}

FreeNilElement Collector::wrap(Vec v) const {
  return FreeNilElement(shared_from_this(), std::move(v));
}

FreeNilElement Collector::identity() const { return wrap(zero()); }

FreeNilElement Collector::generator(int g) const {
  if (g < 1 || g > generators())
    throw computation_error("generator index " + std::to_string(g) + " out of range");
  return wrap(unit(g - 1));
}

FreeNilElement Collector::basis_element(int idx) const {
  if (idx < 0 || idx >= basis_.size()) throw computation_error("basis index out of range");
  return wrap(unit(idx));
}

FreeNilElement Collector::from_exponents(std::vector<mpz_class> e) const {
  if (static_cast<int>(e.size()) != basis_.size())
    throw computation_error("exponent vector length does not match basis size");
  return wrap(std::move(e));
}

int Collector::min_support(const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return static_cast<int>(i);
  return -1;
}

void Collector::reduce(Vec& v) const {
  if (!mod_) return;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const mpz_class& n = (*mod_)[i];
    if (n != 0 && (v[i] < 0 || v[i] >= n))
      mpz_fdiv_r(v[i].get_mpz_t(), v[i].get_mpz_t(), n.get_mpz_t());
  }
}

Collector::Vec Collector::unit(int idx) const {
  Vec v = zero();
  v[idx] = 1;
  return v;
}

Collector::Vec Collector::mul(const Vec& x, const Vec& y) const {
  int ix = min_support(x), iy = min_support(y);
  if (iy < 0) return x;
  if (ix < 0) return y;
  if (weights_[ix] + weights_[iy] > max_weight()) {
    // everything here commutes and all cross brackets vanish
    Vec w = x;
    for (std::size_t j = static_cast<std::size_t>(iy); j < w.size(); ++j)
      if (y[j] != 0) w[j] += y[j];
    reduce(w);
    return w;
  }
  int i = std::min(ix, iy);
  Vec xr = x;
  mpz_class a;
  std::swap(a, xr[i]);
  Vec yr = y;
  mpz_class b;
  std::swap(b, yr[i]);
  Vec w = mul(conj(xr, i, b), yr);
  w[i] = a + b;
  reduce(w);
  return w;
}

Collector::Vec Collector::pow(const Vec& x, const mpz_class& n) const {
  if (n == 0 || min_support(x) < 0) return zero();
  const int k = max_weight();
  if (mpz_cmpabs_ui(n.get_mpz_t(), static_cast<unsigned long>(k) + 1) <= 0) {
    const Vec base = n > 0 ? x : inv(x);
    unsigned long cnt = mpz_get_ui(mpz_class(abs(n)).get_mpz_t());
    Vec acc = base;
    for (unsigned long s = 1; s < cnt; ++s) acc = mul(acc, base);
    return acc;
  }
  if (mod_) {
    // reduced coordinates stay small, so plain square-and-multiply is cheap
    // (and the difference fit below would be invalidated by the reduction)
    const mpz_class na = abs(n);
    Vec acc = zero();
    for (long bit = static_cast<long>(mpz_sizeinbase(na.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
      acc = mul(acc, acc);
      if (mpz_tstbit(na.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) acc = mul(acc, x);
    }
    if (n < 0) acc = inv(acc);
    return acc;
  }
  // Exponents of x^m are integer polynomials in m of degree <= k (Hall's
  // power formula), so fit by forward differences from m = 0..k+1 and
  // evaluate at n; valid for every integer n.
  std::vector<Vec> em;
  em.push_back(zero());
  for (int m = 1; m <= k + 1; ++m) em.push_back(mul(em.back(), x));
  for (int s = 1; s <= k + 1; ++s)
    for (int t = k + 1; t >= s; --t)
      for (std::size_t j = 0; j < em[t].size(); ++j) em[t][j] -= em[t - 1][j];
  if (min_support(em[k + 1]) >= 0)
    throw computation_error("internal: power exponents exceed expected degree");
  Vec out = zero();
  mpz_class coeff;
  for (int s = 1; s <= k; ++s) {
    coeff = binom_z(n, static_cast<unsigned long>(s));
    if (coeff == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j)
      if (em[s][j] != 0) out[j] += coeff * em[s][j];
  }
  return out;
}

Collector::Vec Collector::inv(const Vec& x) const {
  // (c_1^{e_1} ... c_m^{e_m})^{-1} = c_m^{-e_m} ... c_1^{-e_1}
  Vec acc = zero();
  for (int i = static_cast<int>(x.size()) - 1; i >= 0; --i) {
    if (x[i] == 0) continue;
    Vec letter = zero();
    letter[i] = -x[i];
    reduce(letter);
    acc = mul(acc, letter);
  }
  return acc;
}

Collector::Vec Collector::comm(const Vec& x, const Vec& y) const {
  return mul(mul(inv(x), inv(y)), mul(x, y));
}

Collector::Vec Collector::conj(const Vec& x, int i, const mpz_class& n) const {
  if (n == 0) return x;
  int ms = min_support(x);
  if (ms < 0) return x;
  if (weights_[ms] + weights_[i] > max_weight()) return x;
  Vec acc = zero();
  bool untouched = true;  // acc still equals the processed prefix of x verbatim
  for (std::size_t l = static_cast<std::size_t>(ms); l < x.size(); ++l) {
    if (x[l] == 0) continue;
    const auto& table = conj_pair_table(static_cast<int>(l), i);
    if (table.empty()) {  // c_l commutes with c_i here
      if (untouched) {
        acc[l] = x[l];
        continue;
      }
      Vec letter = zero();
      letter[l] = x[l];
      acc = mul(acc, letter);
      continue;
    }
    Vec v = conj_letter_pow(static_cast<int>(l), i, n, x[l]);
    acc = untouched && min_support(acc) < 0 ? std::move(v) : mul(acc, v);
    untouched = false;
  }
  return acc;
}

Collector::Vec Collector::conj_single(const Vec& x, int i, int sign) const {
  Vec acc = zero();
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (x[l] == 0) continue;
    acc = mul(acc, pow(conj_gen_letter(static_cast<int>(l), i, sign), x[l]));
  }
  return acc;
}

const Collector::Vec& Collector::conj_gen_letter(int m, int i, int sign) const {
  auto& memo = conj_gen_memo_[sign > 0 ? 1 : 0];
  auto it = memo.find({m, i});
  if (it != memo.end()) return it->second;
  ModGuard guard(this, nullptr);  // tables are exact
  Vec result;
  if (sign > 0) {
    // c_i^{-1} c_m c_i = c_m [c_m, c_i]
    result = mul(unit(m), comm_pair(m, i));
  } else {
    // c_i c_m c_i^{-1} = c_m [c_m, c_i^{-1}], with
    // [c_m, c_i^{-1}] = (([c_m, c_i])^{c_i^{-1}})^{-1}
    Vec t = conj_single(comm_pair(m, i), i, -1);
    result = mul(unit(m), inv(t));
  }
  return memo.emplace(std::make_pair(m, i), std::move(result)).first->second;
}

const Collector::Vec& Collector::comm_pair(int a, int b) const {
  auto it = comm_memo_.find({a, b});
  if (it != comm_memo_.end()) return it->second;
  if (!comm_in_progress_.insert({a, b}).second)
    throw computation_error("internal: bracket table self-dependency");
  ModGuard guard(this, nullptr);

  Vec result;
  const CommTreeP& ta = basis_.item(a);
  const CommTreeP& tb = basis_.item(b);
  const int total = ta->weight() + tb->weight();
  if (a == b || total > max_weight()) {
    result = zero();
  } else if (a < b) {
    result = inv(comm_pair(b, a));
  } else {
    bool basic_bracket = ta->is_leaf() || *basis_.index_of(ta->right()) <= b;
    if (basic_bracket) {
      result = unit(*basis_.index_of(CommTree::node(ta, tb)));
    } else {
      // [c_a, b] for c_a = [u, v], b below v: expand the defining word
      // u^{-1} v^{-1} u v left to right with [xy,z] = [x,z]^y [y,z].
      int u = *basis_.index_of(ta->left());
      int v = *basis_.index_of(ta->right());
      auto comm_inv_letter = [&](int x) {
        // [c_x^{-1}, c_b] = (([c_x, c_b])^{c_x^{-1}})^{-1}
        return inv(conj_single(comm_pair(x, b), x, -1));
      };
      Vec a1 = comm_inv_letter(u);
      a1 = conj_single(a1, v, -1);
      a1 = conj_single(a1, u, +1);
      a1 = conj_single(a1, v, +1);
      Vec a2 = comm_inv_letter(v);
      a2 = conj_single(a2, u, +1);
      a2 = conj_single(a2, v, +1);
      Vec a3 = conj_single(comm_pair(u, b), v, +1);
      const Vec& a4 = comm_pair(v, b);
      result = mul(mul(a1, a2), mul(a3, a4));
    }
  }
  comm_in_progress_.erase({a, b});
  return comm_memo_.emplace(std::make_pair(a, b), std::move(result)).first->second;
}

const std::vector<std::vector<Collector::Vec>>& Collector::conj_pair_table(int l, int i) const {
  auto it = conj_pair_memo_.find({l, i});
  if (it != conj_pair_memo_.end()) return it->second;
  ModGuard guard(this, nullptr);
  const int k = max_weight();
  std::vector<std::vector<Vec>> table;
  if (weights_[l] + weights_[i] > k || min_support(comm_pair(l, i)) < 0) {
    // trivial conjugation; an empty table marks the fast path
    return conj_pair_memo_.emplace(std::make_pair(l, i), std::move(table)).first->second;
  }
  // V[m][e] = exponents of c_i^{-m} c_l^e c_i^m for a small grid; each entry
  // is an integer polynomial in (m, e) of degree <= k per variable, so the
  // mixed forward differences D[s][t] at the origin give exact coefficients
  // over the binomial basis C(n,s) C(e,t).
  const int g = k + 2;
  std::vector<std::vector<Vec>> v(g, std::vector<Vec>(g));
  for (int e = 0; e < g; ++e) {
    Vec base = zero();
    base[l] = e;
    v[0][e] = base;
  }
  for (int m = 1; m < g; ++m)
    for (int e = 0; e < g; ++e) v[m][e] = conj_single(v[m - 1][e], i, +1);
  // difference in m
  for (int s = 1; s < g; ++s)
    for (int m = g - 1; m >= s; --m)
      for (int e = 0; e < g; ++e)
        for (std::size_t j = 0; j < v[m][e].size(); ++j) v[m][e][j] -= v[m - 1][e][j];
  // difference in e
  for (int t = 1; t < g; ++t)
    for (int e = g - 1; e >= t; --e)
      for (int m = 0; m < g; ++m)
        for (std::size_t j = 0; j < v[m][e].size(); ++j) v[m][e][j] -= v[m][e - 1][j];
  for (int m = 0; m < g; ++m)
    if (min_support(v[m][g - 1]) >= 0 || min_support(v[g - 1][m]) >= 0)
      throw computation_error("internal: conjugation exponents exceed expected degree");
  // validate the fit at a few off-grid points against direct computation
  {
    auto fit_eval = [&](const mpz_class& n, const mpz_class& e) {
      Vec out = zero();
      mpz_class cn, ce;
      for (int s = 0; s <= k; ++s) {
        cn = binom_z(n, static_cast<unsigned long>(s));
        if (cn == 0) continue;
        for (int t = 0; t <= k; ++t) {
          ce = cn * binom_z(e, static_cast<unsigned long>(t));
          if (ce == 0) continue;
          for (std::size_t j = 0; j < out.size(); ++j)
            if (v[s][t][j] != 0) out[j] += ce * v[s][t][j];
        }
      }
      return out;
    };
    Vec probe = zero();
    probe[l] = -2;
    Vec direct = conj_single(conj_single(probe, i, -1), i, -1);  // n=-2, e=-2
    if (fit_eval(-2, -2) != direct)
      throw computation_error("internal: conjugation table failed validation");
  }
  table.assign(g - 1, std::vector<Vec>(g - 1));
  for (int s = 0; s <= k; ++s)
    for (int t = 0; t <= k; ++t) table[s][t] = std::move(v[s][t]);
  return conj_pair_memo_.emplace(std::make_pair(l, i), std::move(table)).first->second;
}

Collector::Vec Collector::conj_letter_pow(int l, int i, const mpz_class& n,
                                          const mpz_class& e) const {
  const auto& table = conj_pair_table(l, i);
  Vec out = zero();
  if (table.empty()) {
    out[l] = e;
    reduce(out);
    return out;
  }
  const int k = max_weight();
  mpz_class cn, ce;
  for (int s = 0; s <= k; ++s) {
    cn = binom_z(n, static_cast<unsigned long>(s));
    if (cn == 0) continue;
    for (int t = 0; t <= k; ++t) {
      ce = cn * binom_z(e, static_cast<unsigned long>(t));
      if (ce == 0) continue;
      const Vec& coeff = table[s][t];
      for (std::size_t j = 0; j < out.size(); ++j)
        if (coeff[j] != 0) out[j] += ce * coeff[j];
    }
  }
  reduce(out);
  return out;
}

Collector::Vec Collector::eval_tree(const CommTreeP& t) const {
  if (t->is_leaf()) {
    if (t->gen() > generators())
      throw computation_error("letter references generator x" + std::to_string(t->gen()) +
                              " beyond the " + std::to_string(generators()) +
                              "-generator basis");
    return unit(t->gen() - 1);
  }
  return comm(eval_tree(t->left()), eval_tree(t->right()));
}

FreeNilElement Collector::collect(const Word& w) const {
  std::lock_guard<std::mutex> g(lock_);
  Vec acc = zero();
  for (const auto& letter : w) acc = mul(acc, pow(eval_tree(letter.atom), letter.exponent));
  return wrap(std::move(acc));
}

FreeNilElement Collector::multiply(const FreeNilElement& a, const FreeNilElement& b) const {
  const Vec& x = check(a);
  const Vec& y = check(b);
  std::lock_guard<std::mutex> g(lock_);
  return wrap(mul(x, y));
}

FreeNilElement Collector::power(const FreeNilElement& a, const mpz_class& n) const {
  const Vec& x = check(a);
  std::lock_guard<std::mutex> g(lock_);
  return wrap(pow(x, n));
}

FreeNilElement Collector::inverse(const FreeNilElement& a) const {
  const Vec& x = check(a);
  std::lock_guard<std::mutex> g(lock_);
  return wrap(inv(x));
}

FreeNilElement Collector::commutator(const FreeNilElement& a, const FreeNilElement& b) const {
  const Vec& x = check(a);
  const Vec& y = check(b);
  std::lock_guard<std::mutex> g(lock_);
  return wrap(comm(x, y));
}

FreeNilElement Collector::expand_power_commutator(const FreeNilElement& x,
                                                  const FreeNilElement& y,
                                                  const mpz_class& n) const {
  const Vec& vx = check(x);
  const Vec& vy = check(y);
  std::lock_guard<std::mutex> g(lock_);
  return wrap(comm(pow(vx, n), vy));
}

std::optional<int> Collector::weight_of(const FreeNilElement& a) const {
  const Vec& x = check(a);
  int i = min_support(x);
  if (i < 0) return std::nullopt;
  return basis_.weight_of(i);
}

FreeNilElement Collector::multiply_mod(const FreeNilElement& a, const FreeNilElement& b,
                                       const Moduli& m) const {
  Vec x = check(a), y = check(b);
  std::lock_guard<std::mutex> g(lock_);
  ModGuard mg(this, &m);
  reduce(x);
  reduce(y);
  return wrap(mul(x, y));
}

FreeNilElement Collector::power_mod(const FreeNilElement& a, const mpz_class& n,
                                    const Moduli& m) const {
  Vec x = check(a);
  std::lock_guard<std::mutex> g(lock_);
  ModGuard mg(this, &m);
  reduce(x);
  return wrap(pow(x, n));
}

FreeNilElement Collector::inverse_mod(const FreeNilElement& a, const Moduli& m) const {
  Vec x = check(a);
  std::lock_guard<std::mutex> g(lock_);
  ModGuard mg(this, &m);
  reduce(x);
  return wrap(inv(x));
}

FreeNilElement Collector::commutator_mod(const FreeNilElement& a, const FreeNilElement& b,
                                         const Moduli& m) const {
  Vec x = check(a), y = check(b);
  std::lock_guard<std::mutex> g(lock_);
  ModGuard mg(this, &m);
  reduce(x);
  reduce(y);
  return wrap(comm(x, y));
}

}  // namespace nilcap
