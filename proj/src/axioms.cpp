#include "proprank/axioms.hpp"

#include <algorithm>
#include <numeric>

#include "proprank/errors.hpp"
#include "proprank/flow.hpp"

namespace proprank {

std::string axiom_name(Axiom a) {
  switch (a) {
    case Axiom::uJR: return "uJR";
    case Axiom::uPJR: return "uPJR";
    case Axiom::sPJR: return "sPJR";
    case Axiom::RankPriceable: return "rank-priceable";
    case Axiom::PairPriceable: return "pair-priceable";
    case Axiom::Pareto: return "Pareto";
  }
  return "?";
}

std::string AxiomWitness::describe() const {
  std::string s;
  if (ranking) s += "ranking " + ranking->str() + "; ";
  if (!subset.empty()) {
    s += "support subset {";
    for (size_t i = 0; i < subset.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(subset[i]);
    }
    s += "}; ";
  }
  if (pair) {
    s += "pair x" + std::to_string(pair->first + 1) + " > x" + std::to_string(pair->second + 1) +
         "; ";
  }
  s += "have " + have.str() + ", need " + need.str();
  return s;
}

std::string AxiomReport::to_text() const {
  std::string s = axiom_name(axiom) + ": " + (satisfied ? "satisfied" : "VIOLATED");
  if (total_payment) s += " (total payment " + total_payment->str() + ")";
  if (witness) s += " [" + witness->describe() + "]";
  return s;
}

AxiomReport check_ujr(const Profile& profile, const Ranking& out) {
  AxiomReport report{Axiom::uJR, true, std::nullopt, std::nullopt};
  Rational threshold = Rational(1) / profile.total_pairs();
  for (const auto& [r, w] : profile.entries()) {
    if (w >= threshold && utility(r, out) < 1) {
      report.satisfied = false;
      report.witness = AxiomWitness{r, {}, std::nullopt, Rational(utility(r, out)), Rational(1)};
      break;
    }
  }
  return report;
}

AxiomReport check_upjr(const Profile& profile, const Ranking& out) {
  AxiomReport report{Axiom::uPJR, true, std::nullopt, std::nullopt};
  Rational worst_deficit;
  for (const auto& [r, w] : profile.entries()) {
    Rational required{floor_int(w * profile.total_pairs())};
    Rational got{utility(r, out)};
    if (got < required) {
      Rational deficit = required - got;
      if (!report.witness || deficit > worst_deficit) {
        report.satisfied = false;
        report.witness = AxiomWitness{r, {}, std::nullopt, got, required};
        worst_deficit = deficit;
      }
    }
  }
  return report;
}

namespace {

// Pair (x, y), x above y, encoded as x * m + y.
std::vector<char> pair_mask(const Ranking& r) {
  const int m = r.m();
  std::vector<char> mask(static_cast<size_t>(m) * m, 0);
  for (auto [x, y] : pair_set(r)) mask[static_cast<size_t>(x) * m + y] = 1;
  return mask;
}

}  // namespace

std::pair<long long, BigInt> spjr_coverage(const Profile& profile, const Ranking& out,
                                           const std::vector<int>& subset) {
  const int m = profile.m();
  std::vector<char> covered(static_cast<size_t>(m) * m, 0);
  Rational weight;
  for (int idx : subset) {
    const Ranking& r = profile.ranking(idx);
    weight += profile.weight(idx);
    for (auto [x, y] : pair_set(r)) covered[static_cast<size_t>(x) * m + y] = 1;
  }
  long long coverage = 0;
  for (auto [x, y] : pair_set(out)) {
    if (covered[static_cast<size_t>(x) * m + y]) ++coverage;
  }
  return {coverage, floor_int(weight * profile.total_pairs())};
}

AxiomReport check_spjr(const Profile& profile, const Ranking& out, int support_cap) {
  const int n = profile.support_size();
  if (n > support_cap) {
    throw CapacityError("sPJR over 2^" + std::to_string(n) +
                        " support subsets exceeds the cap of 2^" + std::to_string(support_cap));
  }
  const int m = profile.m();
  std::vector<std::vector<char>> masks;
  masks.reserve(n);
  for (const auto& [r, w] : profile.entries()) masks.push_back(pair_mask(r));
  auto out_pairs = pair_set(out);

  AxiomReport report{Axiom::sPJR, true, std::nullopt, std::nullopt};
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<char> covered(static_cast<size_t>(m) * m, 0);
    Rational weight;
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      weight += profile.weight(i);
      const auto& pm = masks[i];
      for (size_t k = 0; k < covered.size(); ++k) covered[k] |= pm[k];
    }
    long long coverage = 0;
    for (auto [x, y] : out_pairs) {
      if (covered[static_cast<size_t>(x) * m + y]) ++coverage;
    }
    BigInt required = floor_int(weight * profile.total_pairs());
    if (BigInt(coverage) < required) {
      AxiomWitness w;
      for (int i = 0; i < n; ++i) {
        if (mask >> i & 1u) w.subset.push_back(i);
      }
      w.have = Rational(coverage);
      w.need = Rational(required);
      report.satisfied = false;
      report.witness = std::move(w);
      break;  // lowest bitmask wins
    }
  }
  return report;
}

namespace {

AxiomReport priceability_report(Axiom axiom, const Profile& profile, const FlowNetwork& g) {
  FlowAssignment flow = max_flow(g);
  Rational needed = profile.total_pairs() - Rational(1);
  AxiomReport report{axiom, flow.value > needed, std::nullopt, flow.value};
  if (!report.satisfied) {
    AxiomWitness w;
    w.have = flow.value;
    w.need = needed;
    report.witness = std::move(w);
  }
  return report;
}

}  // namespace

AxiomReport verify_rank_priceability(const Profile& profile, const Ranking& out) {
  return priceability_report(Axiom::RankPriceable, profile,
                             rank_priceability_network(profile, out));
}

AxiomReport verify_pair_priceability(const Profile& profile, const Ranking& out) {
  return priceability_report(Axiom::PairPriceable, profile,
                             pair_priceability_network(profile, out));
}

AxiomReport check_pareto(const Profile& profile, const Ranking& out) {
  const int m = profile.m();
  AxiomReport report{Axiom::Pareto, true, std::nullopt, std::nullopt};
  for (int x = 0; x < m && report.satisfied; ++x) {
    for (int y = 0; y < m; ++y) {
      if (x == y || out.prefers(x, y)) continue;
      bool unanimous = true;
      for (const auto& [r, w] : profile.entries()) {
        if (!r.prefers(x, y)) {
          unanimous = false;
          break;
        }
      }
      if (unanimous) {
        report.satisfied = false;
        report.witness =
            AxiomWitness{std::nullopt, {}, std::make_pair(x, y), Rational(0), Rational(1)};
        break;
      }
    }
  }
  return report;
}

std::vector<std::vector<Rational>> rank_scheme_from_trace(const Profile& profile,
                                                          const RuleRun& run) {
  const int m = profile.m();
  const int n = profile.support_size();
  std::vector<std::vector<Rational>> scheme(n, std::vector<Rational>(m));
  for (const auto& round : run.trace.rounds) {
    for (int r = 0; r < n; ++r) scheme[r][round.index - 1] += round.payments[r];
  }
  return scheme;
}

bool check_rank_scheme(const Profile& profile, const Ranking& out,
                       const std::vector<std::vector<Rational>>& scheme, std::string* why) {
  const int m = profile.m();
  const int n = profile.support_size();
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  CandidateSet X = CandidateSet::full(m);
  std::vector<Rational> position_total(m);
  for (int pos = 0; pos < m; ++pos) {
    int candidate = out.at(pos);
    for (int r = 0; r < n; ++r) {
      const Rational& pay = scheme[r][pos];
      if (pay.is_negative()) return fail("negative payment");
      Rational cap{positional_utility(profile.ranking(r), candidate, X)};
      if (pay > cap) return fail("payment above positional utility at position " +
                                 std::to_string(pos + 1));
      position_total[pos] += pay;
    }
    if (position_total[pos] > Rational(m - 1 - pos)) {
      return fail("position " + std::to_string(pos + 1) + " paid more than its cost");
    }
    X.remove(candidate);
  }
  Rational grand_total;
  for (int r = 0; r < n; ++r) {
    Rational spent;
    for (int pos = 0; pos < m; ++pos) spent += scheme[r][pos];
    if (spent > profile.weight(r) * profile.total_pairs()) {
      return fail("ranking " + std::to_string(r) + " overspent its budget");
    }
    grand_total += spent;
  }
  if (!(grand_total > profile.total_pairs() - Rational(1))) {
    return fail("total spend " + grand_total.str() + " not above C(m,2)-1");
  }
  return true;
}

std::vector<std::vector<Rational>> pair_scheme_from_trace(const Profile& profile,
                                                          const RuleRun& run) {
  const int n = profile.support_size();
  auto pairs = pair_set(run.ranking);
  std::vector<std::vector<Rational>> scheme(n, std::vector<Rational>(pairs.size()));
  // Pair (x_i, x_j) of the output is funded in the round that placed x_i, by
  // the flow on the ranking -> x_j arc.
  for (const auto& round : run.trace.rounds) {
    if (!round.flow) continue;
    for (size_t p = 0; p < pairs.size(); ++p) {
      if (pairs[p].first != round.chosen) continue;
      // right-vertex index of pairs[p].second within this round's network
      int rj = 0;
      for (int y : round.active_set) {
        if (y == round.chosen) continue;
        if (y == pairs[p].second) break;
        ++rj;
      }
      for (int r = 0; r < n; ++r) scheme[r][p] = round.flow->mid_value(r, rj);
    }
  }
  return scheme;
}

bool check_pair_scheme(const Profile& profile, const Ranking& out,
                       const std::vector<std::vector<Rational>>& scheme, std::string* why) {
  const int n = profile.support_size();
  auto pairs = pair_set(out);
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  Rational grand_total;
  for (int r = 0; r < n; ++r) {
    Rational spent;
    for (size_t p = 0; p < pairs.size(); ++p) {
      const Rational& pay = scheme[r][p];
      if (pay.is_negative()) return fail("negative payment");
      if (pay > Rational(1)) return fail("pair payment above 1");
      if (!pay.is_zero() && !profile.ranking(r).prefers(pairs[p].first, pairs[p].second)) {
        return fail("payment for a disagreeing pair");
      }
      spent += pay;
    }
    if (spent > profile.weight(r) * profile.total_pairs()) {
      return fail("ranking " + std::to_string(r) + " overspent its budget");
    }
    grand_total += spent;
  }
  for (size_t p = 0; p < pairs.size(); ++p) {
    Rational pair_total;
    for (int r = 0; r < n; ++r) pair_total += scheme[r][p];
    if (pair_total > Rational(1)) return fail("pair funded above 1");
  }
  if (!(grand_total > profile.total_pairs() - Rational(1))) {
    return fail("total spend " + grand_total.str() + " not above C(m,2)-1");
  }
  return true;
}

std::string bound_name(BoundKind k) {
  switch (k) {
    case BoundKind::Psb: return "psb";
    case BoundKind::Rmes: return "rmes";
    case BoundKind::Fb: return "fb";
  }
  return "?";
}

Rational bound_value(BoundKind kind, int m, const Rational& alpha) {
  Rational pairs{choose2(m)};
  switch (kind) {
    case BoundKind::Psb:
    case BoundKind::Fb:
      return pairs * alpha / Rational(4) - Rational(3, 16);
    case BoundKind::Rmes: {
      Rational xi{choose2(m - m / 4)};
      if (pairs * alpha - Rational(1, 2) <= xi) {
        return pairs * alpha / Rational(4) - Rational(1, 8);
      }
      Rational share = xi / (pairs * alpha);
      return pairs / Rational(2) * (Rational(1) - share) +
             (xi + Rational(1)) / Rational(4) * share - Rational(1) / (Rational(4) * alpha);
    }
  }
  throw InvalidInputError("unknown bound kind");
}

namespace {

// Support entry indices sorted by utility(r, out) ascending; the greedy worst
// subprofile fills this order.
std::vector<int> greedy_order(const Profile& profile, const Ranking& out) {
  std::vector<int> order(profile.support_size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<long long> util(profile.support_size());
  for (int i = 0; i < profile.support_size(); ++i) util[i] = utility(profile.ranking(i), out);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return util[a] < util[b]; });
  return order;
}

}  // namespace

Rational min_average_utility(const Profile& profile, const Ranking& out, const Rational& alpha) {
  if (alpha <= Rational(0) || alpha > Rational(1)) {
    throw InvalidInputError("subprofile size must be in (0, 1]");
  }
  auto order = greedy_order(profile, out);
  Rational remaining = alpha;
  Rational total_utility;
  for (int idx : order) {
    Rational take = min(remaining, profile.weight(idx));
    total_utility += take * Rational(utility(profile.ranking(idx), out));
    remaining -= take;
    if (remaining.is_zero()) break;
  }
  return total_utility / alpha;
}

Subprofile BoundCurve::worst_subprofile(const Profile& profile, const Ranking& out,
                                        const Rational& alpha) const {
  auto order = greedy_order(profile, out);
  std::vector<Rational> weights(profile.support_size());
  Rational remaining = alpha;
  for (int idx : order) {
    Rational take = min(remaining, profile.weight(idx));
    weights[idx] = take;
    remaining -= take;
    if (remaining.is_zero()) break;
  }
  return Subprofile(profile, std::move(weights));
}

BoundCurve worst_group_margin(const Profile& profile, const Ranking& out, BoundKind kind) {
  const int m = profile.m();
  Rational pairs{choose2(m)};

  // Candidate sizes: prefix boundaries of the greedy order, plus the RMES
  // regime switch. Between consecutive breakpoints the worst average utility
  // is u_k + c/alpha with c <= 0 and the bound is linear (or K + D/alpha on
  // the second RMES branch), so the margin is concave or monotone there and
  // its minimum sits on a breakpoint.
  std::vector<Rational> sizes;
  auto order = greedy_order(profile, out);
  Rational cumulative;
  for (int idx : order) {
    cumulative += profile.weight(idx);
    sizes.push_back(cumulative);
  }
  if (kind == BoundKind::Rmes) {
    Rational xi{choose2(m - m / 4)};
    Rational switch_alpha = (xi + Rational(1, 2)) / pairs;
    if (switch_alpha > Rational(0) && switch_alpha < Rational(1)) sizes.push_back(switch_alpha);
  }
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  BoundCurve curve;
  curve.bound = kind;
  bool first = true;
  for (const auto& alpha : sizes) {
    BoundPoint point;
    point.size = alpha;
    point.min_avg_utility = min_average_utility(profile, out, alpha);
    point.bound_value = proprank::bound_value(kind, m, alpha);
    if (first || point.margin() < curve.min_margin) curve.min_margin = point.margin();
    first = false;
    curve.points.push_back(std::move(point));
  }
  return curve;
}

}  // namespace proprank
