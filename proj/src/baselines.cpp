#include "proprank/baselines.hpp"

#include <algorithm>
#include <numeric>

#include "proprank/errors.hpp"

namespace proprank {

namespace {

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Walks all m! rankings in lexicographic order and keeps the best objective;
// `better(candidate, incumbent)` returns true on strict improvement.
template <typename Objective, typename Better>
SwfResult enumerate_rankings(const Profile& profile, int cap, Objective objective, Better better) {
  const int m = profile.m();
  if (m > cap) {
    throw CapacityError("enumeration over " + std::to_string(m) +
                        "! rankings exceeds the cap of " + std::to_string(cap));
  }
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::optional<SwfResult> best;
  do {
    Ranking candidate{order};
    Rational score = objective(candidate);
    if (!best) {
      best = SwfResult{candidate, score, false};
    } else if (better(score, best->score)) {
      best = SwfResult{candidate, score, best->tie_note};
    } else if (score == best->score) {
      best->tie_note = true;  // lexicographically earlier incumbent stays
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return *best;
}

}  // namespace

SwfResult sequential_borda(const Profile& profile) {
  const int m = profile.m();
  std::vector<Rational> weights;
  weights.reserve(profile.support_size());
  for (const auto& [r, w] : profile.entries()) weights.push_back(w);

  CandidateSet active = CandidateSet::full(m);
  std::vector<int> order;
  order.reserve(m);
  while (active.size() > 1) {
    int best = -1;
    Rational best_score;
    for (int x : active) {
      Rational score = borda_total(profile, weights, x, active);
      if (best < 0 || score > best_score) {
        best = x;
        best_score = score;
      }
    }
    order.push_back(best);
    active.remove(best);
  }
  order.push_back(active.members().front());
  Ranking out{order};
  Rational score;
  for (const auto& [r, w] : profile.entries()) score += w * Rational(utility(r, out));
  return {out, score, false};
}

SwfResult kemeny(const Profile& profile, int enumeration_cap) {
  auto objective = [&](const Ranking& out) {
    Rational s;
    for (const auto& [r, w] : profile.entries()) s += w * Rational(utility(r, out));
    return s;
  };
  return enumerate_rankings(profile, enumeration_cap, objective,
                            [](const Rational& a, const Rational& b) { return a > b; });
}

SwfResult squared_kemeny(const Profile& profile, int enumeration_cap) {
  auto objective = [&](const Ranking& out) {
    Rational s;
    for (const auto& [r, w] : profile.entries()) {
      Rational d{swap_distance(r, out)};
      s += w * d * d;
    }
    return s;
  };
  return enumerate_rankings(profile, enumeration_cap, objective,
                            [](const Rational& a, const Rational& b) { return a < b; });
}

SwfResult chamberlin_courant(const Profile& profile) {
  const int m = profile.m();
  if (m < 2) throw InvalidInputError("chamberlin_courant needs m >= 2");
  const long long total = m <= 20 ? factorial(m) : 0;  // 0 sentinel: support < m! for sure
  if (total == 0 || profile.support_size() < total) {
    // Some ranking's inverse is outside the support, so the minimum weight is
    // zero; scan lexicographically until an inverse misses the support.
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    do {
      Ranking out{order};
      if (profile.find(out.inverse()) < 0) {
        bool tie = total == 0 || total - profile.support_size() > 1;
        return {out, Rational(1), tie};
      }
    } while (std::next_permutation(order.begin(), order.end()));
    throw InternalError("no ranking with a missing inverse despite support < m!");
  }
  // Every inverse is in the support: minimize the weight; among equal weights
  // take the entry whose inverse is lexicographically smallest.
  std::optional<Ranking> best;
  Rational best_weight;
  long long tied = 0;
  for (const auto& [r, w] : profile.entries()) {
    Ranking out = r.inverse();
    if (!best || w < best_weight) {
      best = out;
      best_weight = w;
      tied = 1;
    } else if (w == best_weight) {
      ++tied;
      if (out < *best) best = out;
    }
  }
  return {*best, Rational(1) - best_weight, tied > 1};
}

namespace {

// Permutation of 0..n-1 with exactly d inversions (greedy digits).
std::vector<int> permutation_with_inversions(int n, long long d) {
  std::vector<int> items(n);
  std::iota(items.begin(), items.end(), 0);
  std::vector<int> out;
  out.reserve(n);
  long long remaining = d;
  for (int i = 0; i < n; ++i) {
    long long rest_max = choose2(n - 1 - i);
    long long take = std::max<long long>(0, remaining - rest_max);
    out.push_back(items[take]);
    items.erase(items.begin() + take);
    remaining -= take;
  }
  if (remaining != 0) throw InternalError("inversion construction failed");
  return out;
}

long long count_inversions(const std::vector<int>& seq) {
  long long inv = 0;
  for (size_t i = 0; i < seq.size(); ++i) {
    for (size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] > seq[j]) ++inv;
    }
  }
  return inv;
}

}  // namespace

std::pair<Profile, Ranking> make_sqk_ujr_violation_profile(int m) {
  if (m < 5) throw InvalidInputError("the family needs m >= 5");
  std::vector<int> ascending(m);
  std::iota(ascending.begin(), ascending.end(), 0);
  Ranking r1{ascending};

  std::vector<int> o2{0};
  for (int c = m - 1; c >= 1; --c) o2.push_back(c);
  Ranking r2{o2};

  // Third ranking: bottom-ranks candidate 0 and agrees with r1 on exactly
  // floor(C(m-1,2)/2) of the suffix pairs.
  const int n = m - 1;
  const long long target_agree = choose2(n) / 2;
  std::vector<int> suffix = permutation_with_inversions(n, choose2(n) - target_agree);
  for (int& c : suffix) c += 1;
  long long agree = choose2(n) - count_inversions(suffix);
  if (agree != target_agree) throw InternalError("suffix agreement count is off");
  std::vector<int> o3 = suffix;
  o3.push_back(0);
  Ranking r3{o3};

  std::vector<int> o4(suffix.rbegin(), suffix.rend());
  o4.push_back(0);
  Ranking r4{o4};

  Rational w1 = Rational(m) / Rational(5) / Rational(choose2(m));
  Rational rest = (Rational(1) - w1) / Rational(3);
  Profile profile{m, {{r1, w1}, {r2, rest}, {r3, rest}, {r4, rest}}};
  return {std::move(profile), std::move(r1)};
}

}  // namespace proprank
