#include "proprank/rules.hpp"

#include <algorithm>

#include "proprank/errors.hpp"

namespace proprank {

namespace {

std::vector<Rational> initial_budgets(const Profile& profile) {
  std::vector<Rational> b;
  b.reserve(profile.support_size());
  Rational scale = profile.total_pairs();
  for (const auto& [r, w] : profile.entries()) b.push_back(w * scale);
  return b;
}

Rational total(const std::vector<Rational>& v) {
  Rational t;
  for (const auto& x : v) t += x;
  return t;
}

// Rank of a candidate for tie-breaking: listed candidates first in list
// order, then everyone else by index.
struct TieRank {
  explicit TieRank(int m, const TiePreference* pref) : rank(m) {
    for (int c = 0; c < m; ++c) rank[c] = m + c;
    if (pref) {
      for (size_t i = 0; i < pref->size(); ++i) rank[(*pref)[i]] = static_cast<int>(i);
    }
  }
  bool beats(int a, int b) const { return rank[a] < rank[b]; }
  std::vector<int> rank;
};

int borda_winner(const Profile& profile, const std::vector<Rational>& budgets,
                 const CandidateSet& X, const TieRank& tie) {
  int best = -1;
  Rational best_score;
  for (int x : X) {
    Rational score = borda_total(profile, budgets, x, X);
    if (best < 0 || score > best_score || (score == best_score && tie.beats(x, best))) {
      best = x;
      best_score = score;
    }
  }
  return best;
}

Rational finish_trace(BudgetTrace& trace, const Profile& profile) {
  Rational spent;
  for (const auto& round : trace.rounds) spent += total(round.payments);
  trace.leftover = profile.total_pairs() - spent;
  return trace.leftover;
}

}  // namespace

Rational BudgetTrace::budget_before(int entry, int round_index) const {
  Rational b = initial_budgets[entry];
  for (const auto& round : rounds) {
    if (round.index >= round_index) break;
    b -= round.payments[entry];
  }
  return b;
}

std::vector<Rational> BudgetTrace::final_budgets() const {
  std::vector<Rational> b = initial_budgets;
  for (const auto& round : rounds) {
    for (size_t i = 0; i < b.size(); ++i) b[i] -= round.payments[i];
  }
  return b;
}

RuleRun run_psb(const Profile& profile, const TiePreference* tie_pref) {
  const int m = profile.m();
  if (m < 2) throw InvalidInputError("run_psb needs m >= 2");
  const int n = profile.support_size();
  TieRank tie(m, tie_pref);

  BudgetTrace trace;
  trace.initial_budgets = initial_budgets(profile);
  std::vector<Rational> budgets = trace.initial_budgets;
  CandidateSet active = CandidateSet::full(m);
  std::vector<int> order;
  order.reserve(m);

  for (int i = 1; i <= m - 1; ++i) {
    int chosen = borda_winner(profile, budgets, active, tie);
    Rational score = borda_total(profile, budgets, chosen, active);
    Rational cost{static_cast<long long>(m - i)};

    RoundRecord round;
    round.index = i;
    round.active_set = active;
    round.chosen = chosen;
    round.payments.assign(n, Rational());
    for (int r = 0; r < n; ++r) {
      long long u = positional_utility(profile.ranking(r), chosen, active);
      if (u == 0 || budgets[r].is_zero()) continue;  // 0/0 = 0
      Rational proportional = cost * Rational(u) * budgets[r] / score;
      round.payments[r] = min(proportional, budgets[r]);
      budgets[r] -= round.payments[r];
    }
    trace.rounds.push_back(std::move(round));
    order.push_back(chosen);
    active.remove(chosen);
  }
  order.push_back(active.members().front());

  RoundRecord last;
  last.index = m;
  last.active_set = active;
  last.chosen = active.members().front();
  last.payments.assign(n, Rational());
  trace.rounds.push_back(std::move(last));

  finish_trace(trace, profile);
  return {Ranking{order}, std::move(trace)};
}

std::optional<Rational> solve_rmes_price(const Profile& profile,
                                         const std::vector<Rational>& initial,
                                         const std::vector<Rational>& current, int x,
                                         const CandidateSet& X, const Rational& cost,
                                         bool cap_by_utility) {
  if (X.size() < 2) throw InvalidInputError("solve_rmes_price needs at least two candidates");
  // Each support ranking contributes min(rho * b1 * u, cap) with
  // cap = min(bi, u) (or just bi for the two-argument variant); the sum is a
  // concave piecewise-linear nondecreasing function of rho.
  struct Term {
    Rational slope;  // b1 * u
    Rational cap;
  };
  std::vector<Term> terms;
  Rational supremum;
  for (int r = 0; r < profile.support_size(); ++r) {
    long long u = positional_utility(profile.ranking(r), x, X);
    if (u == 0) continue;
    Rational cap = cap_by_utility ? min(current[r], Rational(u)) : current[r];
    Rational slope = initial[r] * Rational(u);
    if (cap.is_zero() || slope.is_zero()) continue;
    terms.push_back({slope, cap});
    supremum += cap;
  }
  if (supremum < cost) return std::nullopt;

  // Breakpoints where a term saturates, in increasing rho order.
  std::vector<Rational> breakpoints;
  breakpoints.reserve(terms.size());
  for (const auto& t : terms) breakpoints.push_back(t.cap / t.slope);
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

  Rational segment_start;
  for (size_t k = 0; k <= breakpoints.size(); ++k) {
    Rational slope;
    Rational constant;
    for (const auto& t : terms) {
      if (t.cap / t.slope > segment_start) {
        slope += t.slope;
      } else {
        constant += t.cap;
      }
    }
    if (!slope.is_zero()) {
      Rational candidate = (cost - constant) / slope;
      bool in_segment = candidate >= segment_start &&
                        (k == breakpoints.size() || candidate <= breakpoints[k]);
      if (in_segment) return candidate;
    } else if (constant >= cost) {
      return segment_start;
    }
    if (k < breakpoints.size()) segment_start = breakpoints[k];
  }
  throw InternalError("price solve walked past the supremum");
}

RuleRun run_rmes(const Profile& profile, const TiePreference* tie_pref) {
  const int m = profile.m();
  if (m < 2) throw InvalidInputError("run_rmes needs m >= 2");
  const int n = profile.support_size();
  TieRank tie(m, tie_pref);

  BudgetTrace trace;
  trace.initial_budgets = initial_budgets(profile);
  std::vector<Rational> budgets = trace.initial_budgets;
  CandidateSet active = CandidateSet::full(m);
  std::vector<int> order;
  order.reserve(m);

  for (int i = 1; i <= m - 2; ++i) {
    Rational cost{static_cast<long long>(m - i)};
    int chosen = -1;
    Rational chosen_price;
    for (int x : active) {
      auto price = solve_rmes_price(profile, trace.initial_budgets, budgets, x, active, cost);
      if (!price) continue;
      if (chosen < 0 || *price < chosen_price ||
          (*price == chosen_price && tie.beats(x, chosen))) {
        chosen = x;
        chosen_price = *price;
      }
    }
    if (chosen < 0) {
      throw InternalError("no affordable candidate in a round with three or more left");
    }

    RoundRecord round;
    round.index = i;
    round.active_set = active;
    round.chosen = chosen;
    round.price = chosen_price;
    round.payments.assign(n, Rational());
    for (int r = 0; r < n; ++r) {
      long long u = positional_utility(profile.ranking(r), chosen, active);
      if (u == 0) continue;
      Rational pay = min(chosen_price * trace.initial_budgets[r] * Rational(u),
                         min(budgets[r], Rational(u)));
      round.payments[r] = pay;
      budgets[r] -= pay;
    }
    if (total(round.payments) != cost) {
      throw InternalError("rmes payments do not add up to the round cost");
    }
    trace.rounds.push_back(std::move(round));
    order.push_back(chosen);
    active.remove(chosen);
  }

  // Majority round over the last two candidates, weighted by what is left.
  {
    int x = active.members()[0];  // smaller index
    int y = active.members()[1];
    Rational for_x, for_y;
    for (int r = 0; r < n; ++r) {
      (profile.ranking(r).prefers(x, y) ? for_x : for_y) += budgets[r];
    }
    int first = for_x >= for_y ? x : y;
    int second = first == x ? y : x;

    RoundRecord round;
    round.index = m - 1;
    round.active_set = active;
    round.chosen = first;
    round.payments.assign(n, Rational());
    for (int r = 0; r < n; ++r) {
      if (profile.ranking(r).prefers(first, second)) {
        round.payments[r] = budgets[r];
        budgets[r] = Rational();
      }
    }
    trace.rounds.push_back(std::move(round));
    order.push_back(first);
    active.remove(first);

    RoundRecord last;
    last.index = m;
    last.active_set = active;
    last.chosen = second;
    last.payments.assign(n, Rational());
    trace.rounds.push_back(std::move(last));
    order.push_back(second);
  }

  finish_trace(trace, profile);
  return {Ranking{order}, std::move(trace)};
}

FlowNetwork fb_round_network(const Profile& profile, const std::vector<Rational>& budgets,
                             int chosen, const CandidateSet& X) {
  const int n = profile.support_size();
  std::vector<int> rest;
  for (int y : X) {
    if (y != chosen) rest.push_back(y);
  }
  FlowNetwork g;
  g.num_left = n;
  g.num_right = static_cast<int>(rest.size());
  g.source_cap.resize(n);
  g.mid.resize(n);
  g.sink_cap.assign(rest.size(), Capacity(Rational(1)));
  g.left_labels.resize(n);
  g.right_labels.resize(rest.size());
  for (size_t j = 0; j < rest.size(); ++j) g.right_labels[j] = "x" + std::to_string(rest[j] + 1);
  for (int r = 0; r < n; ++r) {
    g.source_cap[r] = Capacity(budgets[r]);
    g.left_labels[r] = "r" + std::to_string(r);
    for (size_t j = 0; j < rest.size(); ++j) {
      if (profile.ranking(r).prefers(chosen, rest[j])) {
        g.mid[r].emplace_back(static_cast<int>(j), Capacity::inf());
      }
    }
  }
  return g;
}

RuleRun run_fb(const Profile& profile, const TiePreference* tie_pref) {
  const int m = profile.m();
  if (m < 2) throw InvalidInputError("run_fb needs m >= 2");
  const int n = profile.support_size();
  TieRank tie(m, tie_pref);

  BudgetTrace trace;
  trace.initial_budgets = initial_budgets(profile);
  std::vector<Rational> budgets = trace.initial_budgets;
  CandidateSet active = CandidateSet::full(m);
  std::vector<int> order;
  order.reserve(m);

  for (int i = 1; i <= m - 1; ++i) {
    int chosen = borda_winner(profile, budgets, active, tie);

    FlowNetwork g = fb_round_network(profile, budgets, chosen, active);
    std::vector<Rational> weights(n);
    for (int r = 0; r < n; ++r) {
      weights[r] = budgets[r] * Rational(positional_utility(profile.ranking(r), chosen, active));
    }
    FlowAssignment flow = min_ratio_max_flow(g, weights);

    RoundRecord round;
    round.index = i;
    round.active_set = active;
    round.chosen = chosen;
    round.flow_value = flow.value;
    round.payments = flow.source_flow;
    for (int r = 0; r < n; ++r) budgets[r] -= round.payments[r];
    round.flow = std::move(flow);
    trace.rounds.push_back(std::move(round));
    order.push_back(chosen);
    active.remove(chosen);
  }
  order.push_back(active.members().front());

  RoundRecord last;
  last.index = m;
  last.active_set = active;
  last.chosen = active.members().front();
  last.payments.assign(n, Rational());
  trace.rounds.push_back(std::move(last));

  finish_trace(trace, profile);
  return {Ranking{order}, std::move(trace)};
}

}  // namespace proprank
