#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "proprank/core.hpp"
#include "proprank/errors.hpp"
#include "proprank/profile_io.hpp"

using namespace proprank;

namespace {

Ranking rk(std::vector<int> v) { return Ranking{std::move(v)}; }

// Shared sample pair: x1..x5 against x4,x5,x1,x3,x2.
const Ranking kA = rk({0, 1, 2, 3, 4});
const Ranking kB = rk({3, 4, 0, 2, 1});

// Pair-by-pair counting oracle, independent of utility()'s loop structure.
long long utility_oracle(const Ranking& a, const Ranking& b) {
  long long agree = 0;
  for (int x = 0; x < a.m(); ++x) {
    for (int y = 0; y < a.m(); ++y) {
      if (x != y && a.prefers(x, y) && b.prefers(x, y)) ++agree;
    }
  }
  return agree;
}

Ranking random_ranking(int m, detail::Rng& rng) {
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  for (int i = m - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
  return rk(order);
}

}  // namespace

TEST_CASE("ranking validates permutations") {
  CHECK_THROWS_AS(rk({0, 0, 1}), InvalidInputError);
  CHECK_THROWS_AS(rk({0, 2}), InvalidInputError);
  CHECK_THROWS_AS(rk({}), InvalidInputError);
  CHECK(rk({2, 0, 1}).position_of(2) == 0);
  CHECK(rk({2, 0, 1}).at(2) == 1);
}

TEST_CASE("inverse of inverse is the identity map") {
  detail::Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Ranking r = random_ranking(3 + static_cast<int>(rng.below(6)), rng);
    CHECK(r.inverse().inverse() == r);
  }
}

TEST_CASE("utility on the pinned pair") {
  CHECK(utility(kA, kA) == 10);             // identical rankings agree on all pairs
  CHECK(utility(kA, kA.inverse()) == 0);    // inverse rankings agree on none
  CHECK(utility(kA, kB) == 3);              // enumerated by the pair oracle
  CHECK(utility_oracle(kA, kB) == 3);
  CHECK_THROWS_AS(utility(kA, rk({0, 1, 2})), InvalidInputError);
}

TEST_CASE("swap distance complements utility") {
  CHECK(swap_distance(kA, kA) == 0);
  CHECK(swap_distance(kA, kA.inverse()) == 10);
  CHECK(swap_distance(kA, kB) == 7);
  detail::Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    int m = 2 + static_cast<int>(rng.below(7));
    Ranking a = random_ranking(m, rng);
    Ranking b = random_ranking(m, rng);
    CHECK(utility(a, b) + swap_distance(a, b) == choose2(m));
    CHECK(utility(a, b) == utility_oracle(a, b));
  }
}

TEST_CASE("positional utility at the extremes") {
  CandidateSet X = CandidateSet::full(5);
  CHECK(positional_utility(kA, 0, X) == 4);  // top of X
  CHECK(positional_utility(kA, 4, X) == 0);  // bottom of X
  CHECK_THROWS_AS(positional_utility(kA, 0, CandidateSet({1, 2})), InvalidInputError);
}

TEST_CASE("positional utilities telescope to the pair count") {
  detail::Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    int m = 2 + static_cast<int>(rng.below(6));
    Ranking r = random_ranking(m, rng);
    Ranking out = random_ranking(m, rng);
    CandidateSet X = CandidateSet::full(m);
    long long total = 0;
    for (int i = 0; i < m; ++i) {
      total += positional_utility(r, out.at(i), X);
      X.remove(out.at(i));
    }
    CHECK(total == utility(r, out));
  }
}

TEST_CASE("pair sets partition the ordered pairs") {
  CHECK(pair_set(rk({0, 1})) == std::vector<std::pair<int, int>>{{0, 1}});
  detail::Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    int m = 2 + static_cast<int>(rng.below(6));
    Ranking r = random_ranking(m, rng);
    auto pairs = pair_set(r);
    auto inverse_pairs = pair_set(r.inverse());
    CHECK(static_cast<long long>(pairs.size()) == choose2(m));
    for (auto [x, y] : pairs) {
      CHECK(std::find(inverse_pairs.begin(), inverse_pairs.end(), std::make_pair(x, y)) ==
            inverse_pairs.end());
      CHECK(std::find(inverse_pairs.begin(), inverse_pairs.end(), std::make_pair(y, x)) !=
            inverse_pairs.end());
    }
  }
}

TEST_CASE("profile construction enforces the weight contract") {
  CHECK_THROWS_AS(Profile(5, {{kA, Rational(1, 2)}, {kB, Rational(1, 3)}}), InvalidInputError);
  CHECK_THROWS_AS(Profile(5, {{kA, Rational(3, 2)}, {kB, Rational(-1, 2)}}), InvalidInputError);
  // zero-weight rankings are dropped
  Profile p{5, {{kA, Rational(1)}, {kB, Rational(0)}}};
  CHECK(p.support_size() == 1);
  CHECK(p.find(kB) == -1);
  // duplicate lines merge
  Profile q{5, {{kA, Rational(1, 4)}, {kA, Rational(3, 4)}}};
  CHECK(q.support_size() == 1);
  CHECK(q.weight(0) == Rational(1));
}

TEST_CASE("subprofile weights must be dominated") {
  Profile p{5, {{kA, Rational(3, 5)}, {kB, Rational(2, 5)}}};
  Subprofile s{p, {Rational(1, 5), Rational(2, 5)}};
  CHECK(s.size() == Rational(3, 5));
  CHECK_THROWS_AS(Subprofile(p, {Rational(4, 5), Rational(0)}), InvalidInputError);
  CHECK_THROWS_AS(Subprofile(p, {Rational(-1, 5), Rational(0)}), InvalidInputError);
}

TEST_CASE("borda_total on the pinned round") {
  Profile p{5, {{kA, Rational(3, 5)}, {kB, Rational(2, 5)}}};
  std::vector<Rational> budgets{Rational(6), Rational(4)};
  CandidateSet X = CandidateSet::full(5);
  CHECK(borda_total(p, budgets, 0, X) == Rational(32));  // 6*4 + 4*2

  // single ranking with budget w and its top candidate scores w * (|X|-1)
  Profile single{5, {{kB, Rational(1)}}};
  std::vector<Rational> w{Rational(7, 3)};
  CHECK(borda_total(single, w, 3, X) == Rational(28, 3));

  // scores over all candidates add up to (total budget) * C(|X|,2)
  Rational sum;
  for (int x : X) sum += borda_total(p, budgets, x, X);
  CHECK(sum == Rational(10) * Rational(choose2(5)));
}
