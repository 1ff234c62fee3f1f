#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "proprank/rational.hpp"

namespace proprank {

// Strict total order over candidates 0..m-1, best candidate first.
class Ranking {
 public:
  explicit Ranking(std::vector<int> order);

  int m() const { return static_cast<int>(order_.size()); }
  int at(int position) const { return order_[position]; }
  int position_of(int candidate) const { return pos_[candidate]; }
  bool prefers(int x, int y) const { return pos_[x] < pos_[y]; }
  const std::vector<int>& order() const { return order_; }

  // Reversed order: the worst candidate becomes the best.
  Ranking inverse() const;

  std::string str() const;  // "x1 > x2 > ..." with default names

  friend bool operator==(const Ranking& a, const Ranking& b) { return a.order_ == b.order_; }
  friend std::strong_ordering operator<=>(const Ranking& a, const Ranking& b) {
    return a.order_ <=> b.order_;
  }

 private:
  std::vector<int> order_;
  std::vector<int> pos_;  // pos_[c] = position of candidate c
};

// The active candidates X_i of a sequential rule; kept sorted.
class CandidateSet {
 public:
  CandidateSet() = default;
  explicit CandidateSet(std::vector<int> members);
  static CandidateSet full(int m);

  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool contains(int candidate) const;
  void remove(int candidate);
  const std::vector<int>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const CandidateSet&, const CandidateSet&) = default;

 private:
  std::vector<int> members_;
};

// Weighted profile: positive rational weights over rankings, summing to one.
// Zero-weight entries are dropped on construction. Entries are held in
// lexicographic ranking order, so iteration is deterministic.
class Profile {
 public:
  // Merges duplicate rankings by adding weights, drops zeros, and validates
  // that every weight is nonnegative and the total is exactly one.
  Profile(int m, std::vector<std::pair<Ranking, Rational>> entries);

  int m() const { return m_; }
  int support_size() const { return static_cast<int>(entries_.size()); }
  const std::vector<std::pair<Ranking, Rational>>& entries() const { return entries_; }
  const Ranking& ranking(int i) const { return entries_[i].first; }
  const Rational& weight(int i) const { return entries_[i].second; }

  // Index of a ranking in the support, or -1.
  int find(const Ranking& r) const;

  // C(m,2): total number of candidate pairs; also the budget of the whole
  // electorate in the sequential rules.
  Rational total_pairs() const { return Rational(static_cast<long long>(m_) * (m_ - 1) / 2); }

 private:
  int m_;
  std::vector<std::pair<Ranking, Rational>> entries_;
};

// Pointwise-dominated weight vector over a profile's support.
class Subprofile {
 public:
  Subprofile(const Profile& parent, std::vector<Rational> weights);

  const Profile& parent() const { return *parent_; }
  const Rational& weight(int i) const { return weights_[i]; }
  const std::vector<Rational>& weights() const { return weights_; }
  Rational size() const;  // |S| = total weight

 private:
  const Profile* parent_;
  std::vector<Rational> weights_;
};

long long choose2(int n);

// Number of ordered candidate pairs the two rankings agree on.
long long utility(const Ranking& a, const Ranking& b);

// C(m,2) - utility: the Kendall tau (swap) distance.
long long swap_distance(const Ranking& a, const Ranking& b);

// Borda score of x within X with respect to r: |{y in X \ {x} : x above y}|.
long long positional_utility(const Ranking& r, int x, const CandidateSet& X);

// All ordered pairs (x, y) with x ranked above y.
std::vector<std::pair<int, int>> pair_set(const Ranking& r);

// Weighted Borda score sum_r budgets[r] * positional_utility(r, x, X).
// `budgets` is aligned with the profile's entries.
Rational borda_total(const Profile& profile, std::span<const Rational> budgets, int x,
                     const CandidateSet& X);

}  // namespace proprank
