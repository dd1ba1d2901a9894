#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilcap/grouptools.hpp"
#include "nilcap/nilprod.hpp"

namespace nilcap {

enum class Decision { Capable, NotCapable, Undecided };

std::string decision_name(Decision d);

/// A group H together with a kernel: the witness group is H/<kernel>, and the
/// claim is that its central quotient realises the group under test.
struct WitnessDesc {
  GroupSpec base;
  std::vector<std::string> kernel;  // element expressions in the base group
  bool finite = true;
};

struct CapabilityVerdict {
  Decision decision = Decision::Undecided;
  std::string reason;    // short machine tag
  std::string citation;  // the theorem or open question backing the verdict
  std::optional<WitnessDesc> witness;
};

/// r > 1 and a_r <= a_{r-1} + floor((k-1)/(p-1)). False settles NotCapable;
/// true alone settles nothing.
bool necessary_condition(std::uint64_t p, int k, const std::vector<unsigned>& alphas);

/// Baer's characterisation for finitely generated abelian groups (orders with
/// 0 = infinite cyclic). Decides via the invariant-factor chain; a coprime
/// per-prime reduction is computed as a second route and must agree.
CapabilityVerdict baer_abelian(const std::vector<std::uint64_t>& orders);

/// Capability of a k-nilpotent product of cyclic p-groups:
/// k = 1 -> Baer; p > k -> capable iff r > 1 and a_{r-1} = a_r, witness the
/// (k+1)-nilpotent product; p = 2, k = 2 -> capable iff r > 1 and
/// a_r <= a_{r-1} + 1, witness the 2-adic class-3 product. Elsewhere the
/// necessary condition may still refute; otherwise Undecided (open question).
CapabilityVerdict capable_nilprod(const GroupSpec& spec);

/// Confirms a Capable verdict: the witness's central quotient must match the
/// defining relations and order of g. Within cap this uses the brute-force
/// center; past cap (plain nilpotent-product witnesses only) the closed-form
/// center, whose generators are still verified to centralise.
bool verify_witness(const GroupSpec& g, const CapabilityVerdict& verdict, std::uint64_t cap);

/// Same confirmation against an explicit presentation (relations + order).
bool verify_witness_presented(const std::vector<std::string>& relations,
                              const mpz_class& expected_order,
                              const CapabilityVerdict& verdict, std::uint64_t cap);

/// Two-generator class-2 presentation
///   a^(p^alpha) = b^(p^beta) = [b,a]^(p^gamma) = e,
///   [a,b,a] = [a,b,b] = e,  a^(p^(alpha+sigma-gamma)) [b,a]^(p^sigma) = e,
/// with alpha+sigma >= 2 gamma, beta >= gamma >= 1, alpha >= gamma,
/// 0 <= sigma <= gamma, and alpha >= beta when sigma = gamma.
struct Class2Presentation {
  std::uint64_t p = 3;
  unsigned alpha = 1, beta = 1, gamma = 1, sigma = 1;
};

void validate(const Class2Presentation& pres);

/// Relation strings of the presentation (generators a = x1, b = x2).
std::vector<std::string> class2_relations(const Class2Presentation& pres);

struct PresentedGroup {
  FiniteGroupP group;  // concrete model built from the 2-nilpotent product
  std::vector<std::string> relations;
  mpz_class order;
};

/// Builds the presented group as a quotient of the 2-nilpotent product of
/// C_{p^alpha}, C_{p^beta} by the (normal) subgroup the extra relations generate.
PresentedGroup presentation_group(const Class2Presentation& pres);

/// Capability of the presented group: capable iff alpha = beta, with the
/// staged witness construction from the class-3 product when sigma < gamma
/// and the modded-coproduct witness when sigma = gamma.
CapabilityVerdict capable_class2_2gen(const Class2Presentation& pres);

}  // namespace nilcap
