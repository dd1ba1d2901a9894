#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nilcap/capability.hpp"
#include "nilcap/grouptools.hpp"
#include "nilcap/suites.hpp"
#include "nilcap/valuation.hpp"

using nlohmann::ordered_json;
using namespace nilcap;

namespace {

enum ExitCode { kOk = 0, kSuiteFailure = 1, kUsage = 2, kComputation = 3 };

struct Output {
  bool json = false;
  ordered_json doc;

  void emit_text(const std::string& line) {
    if (!json) std::cout << line << "\n";
  }
  void finish() {
    if (json) std::cout << doc.dump(2) << "\n";
  }
};

std::string order_str(const NpBasisP& basis) {
  return basis->finite() ? basis->order().get_str() : "infinite";
}

ordered_json element_json(const Element& e) {
  ordered_json j;
  j["exponents"] = e.e;
  ordered_json labels = ordered_json::array();
  for (int i = 0; i < e.basis->size(); ++i) labels.push_back(e.basis->label(i));
  j["basis"] = labels;
  return j;
}

ordered_json witness_json(const WitnessDesc& w) {
  ordered_json j;
  j["class"] = w.base.class_k;
  j["orders"] = w.base.orders;
  j["regime"] = regime_name(w.base.regime);
  j["kernel"] = w.kernel;
  j["finite"] = w.finite;
  return j;
}

ordered_json verdict_json(const CapabilityVerdict& v, std::optional<bool> verified) {
  ordered_json j;
  j["decision"] = decision_name(v.decision);
  j["reason"] = v.reason;
  j["citation"] = v.citation;
  j["witness"] = v.witness ? witness_json(*v.witness) : ordered_json(nullptr);
  j["verified"] = verified ? ordered_json(*verified) : ordered_json(nullptr);
  return j;
}

std::string fmt_element(const Element& e) {
  std::string s = format(e);
  return s.empty() ? "e" : s;
}

Regime parse_regime(const std::string& name, int class_k) {
  if (name == "generic") return class_k == 1 ? Regime::abelian : Regime::generic;
  if (name == "special23" || name == "special_2_3") return Regime::special_2_3;
  if (name == "abelian") return Regime::abelian;
  throw computation_error("unknown regime '" + name + "'");
}

int run_cli(int argc, char** argv) {
  CLI::App app{"exact arithmetic in nilpotent products of cyclic groups"};
  app.require_subcommand(1);

  Output out;
  std::string format_name = "text";
  if (const char* env = std::getenv("NILCAP_FORMAT")) format_name = env;
  app.add_option("--format", format_name, "output format (text|json)")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  // shared group flags
  struct GroupArgs {
    int class_k = 2;
    std::vector<std::uint64_t> orders;
    std::string regime = "generic";
    NpBasisP basis() const {
      return make_group(make_spec(class_k, orders, parse_regime(regime, class_k)));
    }
  };
  auto add_group_flags = [](CLI::App* cmd, GroupArgs& g) {
    cmd->add_option("--class", g.class_k, "nilpotency class k")->required();
    cmd->add_option("--orders", g.orders, "cyclic factor orders (0 = infinite)")
        ->required()
        ->delimiter(',');
    cmd->add_option("--regime", g.regime, "normal-form regime (generic|special23|abelian)");
  };

  // ---- basics
  auto* basics = app.add_subcommand("basics", "ordered basic commutators");
  int b_gens = 2, b_class = 2;
  basics->add_option("--gens", b_gens, "generator count")->required();
  basics->add_option("--class", b_class, "maximum weight")->required();

  // ---- collect
  auto* collect_cmd = app.add_subcommand("collect", "collect a word in the free class-k group");
  int c_gens = 2, c_class = 2;
  std::string c_word;
  collect_cmd->add_option("--gens", c_gens)->required();
  collect_cmd->add_option("--class", c_class)->required();
  collect_cmd->add_option("--word", c_word, "element expression")->required();

  // ---- mul / pow / comm / order
  GroupArgs mul_g, pow_g, comm_g, order_g;
  std::string mul_lhs, mul_rhs, pow_lhs, comm_lhs, comm_rhs, order_lhs;
  std::int64_t pow_exp = 1;
  auto* mul_cmd = app.add_subcommand("mul", "multiply two elements");
  add_group_flags(mul_cmd, mul_g);
  mul_cmd->add_option("--lhs", mul_lhs)->required();
  mul_cmd->add_option("--rhs", mul_rhs)->required();
  auto* pow_cmd = app.add_subcommand("pow", "raise an element to a power");
  add_group_flags(pow_cmd, pow_g);
  pow_cmd->add_option("--lhs", pow_lhs)->required();
  pow_cmd->add_option("--exp", pow_exp)->required();
  auto* comm_cmd = app.add_subcommand("comm", "commutator of two elements");
  add_group_flags(comm_cmd, comm_g);
  comm_cmd->add_option("--lhs", comm_lhs)->required();
  comm_cmd->add_option("--rhs", comm_rhs)->required();
  auto* order_cmd = app.add_subcommand("order", "order of an element");
  add_group_flags(order_cmd, order_g);
  order_cmd->add_option("--lhs", order_lhs)->required();

  // ---- center / lcs / quotient
  GroupArgs center_g, lcs_g, quot_g;
  bool center_verify = false;
  std::uint64_t center_cap = 1u << 20;
  auto* center_cmd = app.add_subcommand("center", "center of the group");
  add_group_flags(center_cmd, center_g);
  center_cmd->add_flag("--verify-brute", center_verify, "also brute-force and compare");
  center_cmd->add_option("--cap", center_cap, "enumeration cap");

  int lcs_term = 1;
  std::uint64_t lcs_cap = 1u << 20;
  auto* lcs_cmd = app.add_subcommand("lcs", "lower central series term");
  add_group_flags(lcs_cmd, lcs_g);
  lcs_cmd->add_option("--term", lcs_term, "series index i >= 1")->required();
  lcs_cmd->add_option("--cap", lcs_cap, "enumeration cap");

  std::string quot_kernel;
  std::uint64_t quot_cap = 1u << 20;
  auto* quot_cmd = app.add_subcommand("quotient", "central quotient by a kernel");
  add_group_flags(quot_cmd, quot_g);
  quot_cmd->add_option("--kernel", quot_kernel, "semicolon-separated kernel generators")
      ->required();
  quot_cmd->add_option("--cap", quot_cap, "enumeration cap");

  // ---- capable / witness
  auto add_capable = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    auto* cmd = parent->add_subcommand(name, help);
    cmd->require_subcommand(1);
    return cmd;
  };
  struct CapArgs {
    int class_k = 2;
    std::uint64_t prime = 3;
    std::vector<unsigned> alphas;
    std::vector<std::uint64_t> orders;
    std::uint64_t p = 3;
    unsigned alpha = 1, beta = 1, gamma = 1, sigma = 1;
    bool verify = false;
    std::uint64_t cap = 1u << 20;
  };
  CapArgs cap_args, wit_args;
  auto add_cap_subs = [&](CLI::App* cmd, CapArgs& a) {
    auto* np = cmd->add_subcommand("nilprod", "k-nilpotent product of cyclic p-groups");
    np->add_option("--class", a.class_k)->required();
    np->add_option("--prime", a.prime)->required();
    np->add_option("--alphas", a.alphas, "sorted order exponents")->required()->delimiter(',');
    np->add_flag("--verify", a.verify);
    np->add_option("--cap", a.cap);
    auto* ab = cmd->add_subcommand("abelian", "finitely generated abelian group");
    ab->add_option("--orders", a.orders, "cyclic orders (0 = infinite)")
        ->required()
        ->delimiter(',');
    ab->add_flag("--verify", a.verify);
    ab->add_option("--cap", a.cap);
    auto* c2 = cmd->add_subcommand("class2", "2-generator class-2 p-group presentation");
    c2->add_option("--p", a.p)->required();
    c2->add_option("--alpha", a.alpha)->required();
    c2->add_option("--beta", a.beta)->required();
    c2->add_option("--gamma", a.gamma)->required();
    c2->add_option("--sigma", a.sigma)->required();
    c2->add_flag("--verify", a.verify);
    c2->add_option("--cap", a.cap);
  };
  auto* capable_cmd = add_capable(&app, "capable", "decide capability");
  add_cap_subs(capable_cmd, cap_args);
  auto* witness_cmd = add_capable(&app, "witness", "construct the capability witness");
  add_cap_subs(witness_cmd, wit_args);

  // ---- verify
  std::string suite_name;
  std::uint64_t suite_seed = 0;
  SuiteCaps suite_caps;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("--suite", suite_name, "suite name")->required();
  verify_cmd->add_option("--seed", suite_seed, "random seed");
  verify_cmd->add_option("--cap", suite_caps.cap, "enumeration cap");
  verify_cmd->add_option("--max-order", suite_caps.max_order,
                         "largest group order for exhaustive checks");

  // let --format (and nothing else) flow up from any subcommand
  std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* a) {
    for (CLI::App* sub : a->get_subcommands({})) {
      sub->fallthrough();
      allow_fallthrough(sub);
    }
  };
  allow_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  out.json = format_name == "json";

  auto element_result = [&](const Element& e, const NpBasisP& basis) {
    if (out.json) {
      out.doc = element_json(e);
      out.doc["group_order"] = order_str(basis);
    } else {
      out.emit_text(fmt_element(e));
    }
  };

  auto decide = [&](CLI::App* cmd, CapArgs& a) -> CapabilityVerdict {
    if (cmd->got_subcommand("nilprod")) {
      std::vector<std::uint64_t> orders;
      for (unsigned e : a.alphas) {
        mpz_class m;
        mpz_ui_pow_ui(m.get_mpz_t(), a.prime, e);
        if (!m.fits_ulong_p()) throw computation_error("order p^alpha overflows");
        orders.push_back(m.get_ui());
      }
      int k = a.class_k;
      Regime regime = Regime::generic;
      if (a.prime == 2 && k == 3) regime = Regime::special_2_3;
      if (k == 1) regime = Regime::abelian;
      return capable_nilprod(make_spec(k, orders, regime));
    }
    if (cmd->got_subcommand("abelian")) return baer_abelian(a.orders);
    Class2Presentation pres{a.p, a.alpha, a.beta, a.gamma, a.sigma};
    return capable_class2_2gen(pres);
  };

  auto verify_verdict = [&](CLI::App* cmd, CapArgs& a,
                            const CapabilityVerdict& v) -> std::optional<bool> {
    if (!a.verify || v.decision != Decision::Capable || !v.witness || !v.witness->finite)
      return std::nullopt;
    if (cmd->got_subcommand("class2")) {
      Class2Presentation pres{a.p, a.alpha, a.beta, a.gamma, a.sigma};
      PresentedGroup pg = presentation_group(pres);
      return verify_witness_presented(pg.relations, pg.order, v, a.cap);
    }
    GroupSpec g;
    if (cmd->got_subcommand("nilprod")) {
      std::vector<std::uint64_t> orders;
      for (unsigned e : a.alphas) {
        mpz_class m;
        mpz_ui_pow_ui(m.get_mpz_t(), a.prime, e);
        orders.push_back(m.get_ui());
      }
      Regime regime = a.class_k == 1 ? Regime::abelian : Regime::generic;
      if (a.prime == 2 && a.class_k == 3) regime = Regime::special_2_3;
      g = make_spec(a.class_k, orders, regime);
    } else {
      std::vector<std::uint64_t> torsion;
      for (auto m : a.orders)
        if (m != 0) torsion.push_back(m);
      if (torsion.size() != a.orders.size())
        return std::nullopt;  // infinite groups are not enumerable
      g = make_spec(1, torsion, Regime::abelian);
    }
    return verify_witness(g, v, a.cap);
  };

  try {
    if (*basics) {
      BasicSequence seq(b_gens, b_class);
      if (out.json) {
        out.doc = ordered_json::array();
        for (int i = 0; i < seq.size(); ++i)
          out.doc.push_back({{"index", i + 1},
                             {"weight", seq.weight_of(i)},
                             {"expr", seq.label_of(i)}});
      } else {
        for (int i = 0; i < seq.size(); ++i)
          out.emit_text(std::to_string(i + 1) + "\tweight " +
                        std::to_string(seq.weight_of(i)) + "\t" + seq.label_of(i));
      }
    } else if (*collect_cmd) {
      auto col = Collector::make(c_gens, c_class);
      Expr ast = parse_expr(c_word, false);
      struct FreeOps {
        CollectorP col;
        FreeNilElement identity() const { return col->identity(); }
        FreeNilElement generator(int g) const { return col->generator(g); }
        FreeNilElement mul(const FreeNilElement& a, const FreeNilElement& b) const {
          return col->multiply(a, b);
        }
        FreeNilElement pw(const FreeNilElement& a, const mpz_class& n) const {
          return col->power(a, n);
        }
        FreeNilElement comm(const FreeNilElement& a, const FreeNilElement& b) const {
          return col->commutator(a, b);
        }
      };
      FreeNilElement result = eval_expr(ast, FreeOps{col});
      if (out.json) {
        ordered_json exps = ordered_json::array(), labels = ordered_json::array();
        for (int i = 0; i < col->basis().size(); ++i) {
          exps.push_back(result.exponents()[i].get_str());
          labels.push_back(col->basis().label_of(i));
        }
        out.doc = {{"exponents", exps}, {"basis", labels}};
      } else {
        std::string s = result.str();
        out.emit_text(s.empty() ? "e" : s);
      }
    } else if (*mul_cmd) {
      auto basis = mul_g.basis();
      element_result(mul(parse(mul_lhs, basis), parse(mul_rhs, basis)), basis);
    } else if (*pow_cmd) {
      auto basis = pow_g.basis();
      element_result(pow(parse(pow_lhs, basis), pow_exp), basis);
    } else if (*comm_cmd) {
      auto basis = comm_g.basis();
      element_result(comm(parse(comm_lhs, basis), parse(comm_rhs, basis)), basis);
    } else if (*order_cmd) {
      auto basis = order_g.basis();
      std::uint64_t n = element_order(parse(order_lhs, basis));
      if (out.json)
        out.doc = {{"order", n}, {"group_order", order_str(basis)}};
      else
        out.emit_text(std::to_string(n));
    } else if (*center_cmd) {
      auto basis = center_g.basis();
      std::vector<Element> gens = center_formula(basis);
      auto group = std::make_shared<NilprodGroup>(basis);
      std::vector<GVec> gv;
      for (const auto& e : gens) gv.push_back(e.e);
      Subgroup zf = closure(group, gv, center_cap);
      bool brute_equal = true;
      if (center_verify) {
        Subgroup zb = center_bruteforce(group, center_cap);
        brute_equal = zb.elements == zf.elements;
      }
      if (out.json) {
        ordered_json g = ordered_json::array();
        for (const auto& e : gens) g.push_back(fmt_element(e));
        out.doc = {{"generators", g},
                   {"center_order", zf.size()},
                   {"group_order", order_str(basis)}};
        if (center_verify) out.doc["matches_bruteforce"] = brute_equal;
      } else {
        out.emit_text("|Z(G)| = " + std::to_string(zf.size()));
        for (const auto& e : gens) out.emit_text("  " + fmt_element(e));
        if (center_verify)
          out.emit_text(brute_equal ? "matches brute force" : "BRUTE-FORCE MISMATCH");
      }
      if (center_verify && !brute_equal) {
        out.finish();
        return kSuiteFailure;
      }
    } else if (*lcs_cmd) {
      auto basis = lcs_g.basis();
      auto group = std::make_shared<NilprodGroup>(basis);
      Subgroup term = lower_central(group, lcs_term, lcs_cap);
      if (out.json) {
        out.doc = {{"term", lcs_term},
                   {"order", term.size()},
                   {"group_order", order_str(basis)}};
      } else {
        out.emit_text("|G_" + std::to_string(lcs_term) + "| = " + std::to_string(term.size()));
      }
    } else if (*quot_cmd) {
      auto basis = quot_g.basis();
      auto group = std::make_shared<NilprodGroup>(basis);
      std::vector<GVec> kgens;
      std::string rest = quot_kernel;
      while (!rest.empty()) {
        auto pos = rest.find(';');
        std::string piece = rest.substr(0, pos);
        if (!piece.empty()) kgens.push_back(parse(piece, basis).e);
        if (pos == std::string::npos) break;
        rest = rest.substr(pos + 1);
      }
      Subgroup kernel = closure(group, kgens, quot_cap);
      auto q = quotient_by_central(group, kernel, quot_cap);
      std::uint64_t count = 0;
      q->enumerate([&](const GVec&) { ++count; }, quot_cap);
      if (out.json) {
        ordered_json gens = ordered_json::array();
        for (const auto& g : q->generators()) gens.push_back(q->show(g));
        out.doc = {{"kernel_order", kernel.size()},
                   {"quotient_order", q->order().get_str()},
                   {"cosets", count},
                   {"generator_images", gens}};
      } else {
        out.emit_text("|kernel| = " + std::to_string(kernel.size()) + ", |G/K| = " +
                      q->order().get_str());
      }
    } else if (*capable_cmd || *witness_cmd) {
      CLI::App* cmd = *capable_cmd ? capable_cmd : witness_cmd;
      CapArgs& a = *capable_cmd ? cap_args : wit_args;
      CapabilityVerdict v = decide(cmd, a);
      if (*witness_cmd && !v.witness)
        throw computation_error("no witness: the verdict is " + decision_name(v.decision));
      std::optional<bool> verified = verify_verdict(cmd, a, v);
      if (out.json) {
        out.doc = verdict_json(v, verified);
      } else {
        out.emit_text(decision_name(v.decision) + " (" + v.reason + ")");
        out.emit_text("  " + v.citation);
        if (v.witness) {
          out.emit_text("  witness: class " + std::to_string(v.witness->base.class_k) +
                        " product of orders " + [&] {
                          std::string s;
                          for (auto m : v.witness->base.orders)
                            s += (s.empty() ? "" : ",") + std::to_string(m);
                          return s;
                        }() + " (" + regime_name(v.witness->base.regime) + ")");
          for (const auto& kexpr : v.witness->kernel) out.emit_text("    kernel: " + kexpr);
        }
        if (verified) out.emit_text(*verified ? "  witness verified" : "  WITNESS CHECK FAILED");
      }
      if (verified && !*verified) {
        out.finish();
        return kSuiteFailure;
      }
    } else if (*verify_cmd) {
      bool known = false;
      for (const auto& n : suite_names()) known = known || n == suite_name;
      if (!known) {
        std::cerr << "unknown suite '" << suite_name << "'; available:";
        for (const auto& n : suite_names()) std::cerr << " " << n;
        std::cerr << "\n";
        return kUsage;
      }
      SuiteReport rep = run_suite(suite_name, suite_seed, suite_caps);
      if (out.json) {
        ordered_json fails = ordered_json::array();
        for (const auto& f : rep.failures)
          fails.push_back({{"case", f.case_id},
                           {"inputs", f.inputs},
                           {"expected", f.expected},
                           {"actual", f.actual}});
        out.doc = {{"suite", rep.suite},
                   {"citation", rep.citation},
                   {"seed", rep.seed},
                   {"cases", rep.cases},
                   {"failures", fails}};
      } else {
        out.emit_text("suite " + rep.suite + " (seed " + std::to_string(rep.seed) + ")");
        out.emit_text("checks: " + rep.citation);
        out.emit_text(std::to_string(rep.cases) + " cases, " +
                      std::to_string(rep.failures.size()) + " failures, " +
                      std::to_string(rep.wall_ms) + " ms");
        for (const auto& f : rep.failures)
          out.emit_text("FAIL " + f.case_id + " [" + f.inputs + "] expected " + f.expected +
                        " got " + f.actual);
      }
      out.finish();
      return rep.ok() ? kOk : kSuiteFailure;
    }
  } catch (const computation_error& e) {
    if (out.json) {
      ordered_json err = {{"error", e.what()}};
      std::cout << err.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return kComputation;
  }
  out.finish();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
