#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proprank/core.hpp"
#include "proprank/rules.hpp"

namespace proprank {

enum class Axiom { uJR, uPJR, sPJR, RankPriceable, PairPriceable, Pareto };

std::string axiom_name(Axiom a);

// Violation evidence; which fields are set depends on the axiom.
struct AxiomWitness {
  std::optional<Ranking> ranking;              // offending input ranking
  std::vector<int> subset;                     // offending support indices (sPJR)
  std::optional<std::pair<int, int>> pair;     // reversed unanimous pair (Pareto)
  Rational have;                               // achieved utility / coverage / payment
  Rational need;                               // required bound
  std::string describe() const;
};

struct AxiomReport {
  Axiom axiom;
  bool satisfied = false;
  std::optional<AxiomWitness> witness;            // present iff violated
  std::optional<Rational> total_payment;          // priceability checks: max payment found
  std::string to_text() const;
};

// u(r, out) >= 1 for every support ranking with weight >= 1/C(m,2).
AxiomReport check_ujr(const Profile& profile, const Ranking& out);

// u(r, out) >= floor(R(r) * C(m,2)) for every support ranking.
AxiomReport check_upjr(const Profile& profile, const Ranking& out);

inline constexpr int kDefaultSpjrSupportCap = 16;

// Coverage floor floor(|S| * C(m,2)) for every subprofile S. Quantifying over
// support subsets at full weight suffices: the coverage term depends only on
// which rankings carry positive weight, while the requirement grows with
// weight, so full weights dominate every other subprofile on the same
// support. Cost is 2^support; throws CapacityError above the cap.
AxiomReport check_spjr(const Profile& profile, const Ranking& out,
                       int support_cap = kDefaultSpjrSupportCap);

// Coverage and requirement for one specific support subset (by entry index).
std::pair<long long, BigInt> spjr_coverage(const Profile& profile, const Ranking& out,
                                           const std::vector<int>& subset);

// Max-flow check of the candidate-level payment scheme: priceable iff the
// best total payment exceeds C(m,2) - 1 (strict, exact).
AxiomReport verify_rank_priceability(const Profile& profile, const Ranking& out);

// Same at pair granularity.
AxiomReport verify_pair_priceability(const Profile& profile, const Ranking& out);

// No unanimous pair may be reversed by the output.
AxiomReport check_pareto(const Profile& profile, const Ranking& out);

// --- payment schemes extracted from rule traces -------------------------

// pi(entry, position) from a PSB or RMES trace.
std::vector<std::vector<Rational>> rank_scheme_from_trace(const Profile& profile,
                                                          const RuleRun& run);

// Checks the four candidate-level conditions: utility caps, budget caps,
// position costs, and total spend > C(m,2) - 1.
bool check_rank_scheme(const Profile& profile, const Ranking& out,
                       const std::vector<std::vector<Rational>>& scheme,
                       std::string* why = nullptr);

// pi(entry, pair) from an FB trace: the flow on the ranking -> candidate arc
// of the round in which the pair's better candidate was placed.
std::vector<std::vector<Rational>> pair_scheme_from_trace(const Profile& profile,
                                                          const RuleRun& run);

bool check_pair_scheme(const Profile& profile, const Ranking& out,
                       const std::vector<std::vector<Rational>>& scheme,
                       std::string* why = nullptr);

// --- average-utility lower bounds ----------------------------------------

enum class BoundKind { Psb, Rmes, Fb };  // which rule's guarantee to evaluate

std::string bound_name(BoundKind k);

// The guaranteed lower bound on the average utility of a subprofile of total
// weight alpha.
Rational bound_value(BoundKind kind, int m, const Rational& alpha);

struct BoundPoint {
  Rational size;              // |S|
  Rational min_avg_utility;   // worst achievable average utility at this size
  Rational bound_value;       // the guarantee
  Rational margin() const { return min_avg_utility - bound_value; }
};

struct BoundCurve {
  BoundKind bound;
  std::vector<BoundPoint> points;  // at every greedy breakpoint (plus the
                                   // bound's own regime switch for RMES)
  Rational min_margin;

  // The greedy worst subprofile of total weight alpha: fill the
  // lowest-utility rankings first. Exposed for tests.
  Subprofile worst_subprofile(const Profile& profile, const Ranking& out,
                              const Rational& alpha) const;
};

// Minimum over subprofile sizes of (worst average utility - bound). The
// minimizing subprofile at fixed size fills lowest-utility rankings first
// (the objective is linear in the weights), and between breakpoints the
// margin is concave or monotone in alpha, so checking segment endpoints is
// exact.
BoundCurve worst_group_margin(const Profile& profile, const Ranking& out, BoundKind kind);

// Worst average utility at one specific size (greedy fill); test helper.
Rational min_average_utility(const Profile& profile, const Ranking& out, const Rational& alpha);

}  // namespace proprank
