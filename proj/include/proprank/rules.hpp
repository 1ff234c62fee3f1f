#pragma once

#include <optional>
#include <vector>

#include "proprank/core.hpp"
#include "proprank/flow.hpp"

namespace proprank {

// One executed round of a sequential rule. Payments are aligned with the
// profile's entries. `price` is set by RMES, `flow`/`flow_value` by FB.
struct RoundRecord {
  int index = 0;  // 1-based
  CandidateSet active_set;
  int chosen = -1;
  std::vector<Rational> payments;
  std::optional<Rational> price;
  std::optional<FlowAssignment> flow;
  std::optional<Rational> flow_value;
};

// Full audit trail of a run; doubles as a priceability witness.
struct BudgetTrace {
  std::vector<Rational> initial_budgets;  // b_1 = R(r) * C(m,2), per entry
  std::vector<RoundRecord> rounds;
  Rational leftover;  // C(m,2) minus all payments

  // Budget of entry `i` entering round `round_index` (1-based).
  Rational budget_before(int entry, int round_index) const;
  std::vector<Rational> final_budgets() const;
};

struct RuleRun {
  Ranking ranking;
  BudgetTrace trace;
};

// Candidate-score ties everywhere break to the smaller index unless a
// preference list is supplied (candidates listed first win ties; candidates
// not listed fall back to index order after the listed ones).
using TiePreference = std::vector<int>;

// Proportional Sequential Borda: each round the Borda winner w.r.t. the
// current budgets is placed and every ranking pays
// min((m-i) * u * b_i / U, b_i); the final candidate costs nothing.
RuleRun run_psb(const Profile& profile, const TiePreference* tie_pref = nullptr);

// Minimal price rho such that
//   sum_r min(rho * b1(r) * u(r, x, X), bi(r), u(r, x, X)) = cost,
// or nullopt when even the caps cannot reach the cost. `cap_by_utility`
// drops the third argument of the minimum; that variant overcharges and
// exists only for regression tests against the three-way rule.
std::optional<Rational> solve_rmes_price(const Profile& profile,
                                         const std::vector<Rational>& initial_budgets,
                                         const std::vector<Rational>& current_budgets, int x,
                                         const CandidateSet& X, const Rational& cost,
                                         bool cap_by_utility = true);

// Ranked Method of Equal Shares: rounds 1..m-2 buy the cheapest candidate at
// its exact price (ties on price to the smaller index); the last two
// candidates are ordered by weighted majority of the remaining budgets, and
// every ranking preferring the placed one then pays its whole remaining
// budget.
RuleRun run_rmes(const Profile& profile, const TiePreference* tie_pref = nullptr);

// Flow-adjusting Borda: Borda winner each round, payments from the maximum
// flow that lexicographically minimizes the cost-per-utility ratios.
RuleRun run_fb(const Profile& profile, const TiePreference* tie_pref = nullptr);

// The flow network FB solves in a single round: source -> ranking arcs carry
// the remaining budgets, ranking -> candidate arcs (unbounded) exist where
// the chosen candidate is preferred, candidate -> sink arcs have capacity 1.
FlowNetwork fb_round_network(const Profile& profile, const std::vector<Rational>& budgets,
                             int chosen, const CandidateSet& X);

}  // namespace proprank
