#include "proprank/core.hpp"

#include <algorithm>
#include <map>

#include "proprank/errors.hpp"

namespace proprank {

Ranking::Ranking(std::vector<int> order) : order_(std::move(order)) {
  const int m = static_cast<int>(order_.size());
  if (m == 0) throw InvalidInputError("empty ranking");
  pos_.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    int c = order_[i];
    if (c < 0 || c >= m || pos_[c] != -1) {
      throw InvalidInputError("ranking is not a permutation of 0.." + std::to_string(m - 1));
    }
    pos_[c] = i;
  }
}

Ranking Ranking::inverse() const {
  std::vector<int> rev(order_.rbegin(), order_.rend());
  return Ranking(std::move(rev));
}

std::string Ranking::str() const {
  std::string s;
  for (size_t i = 0; i < order_.size(); ++i) {
    if (i) s += " > ";
    s += "x" + std::to_string(order_[i] + 1);
  }
  return s;
}

CandidateSet::CandidateSet(std::vector<int> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

CandidateSet CandidateSet::full(int m) {
  std::vector<int> v(m);
  for (int i = 0; i < m; ++i) v[i] = i;
  CandidateSet s;
  s.members_ = std::move(v);
  return s;
}

bool CandidateSet::contains(int candidate) const {
  return std::binary_search(members_.begin(), members_.end(), candidate);
}

void CandidateSet::remove(int candidate) {
  auto it = std::lower_bound(members_.begin(), members_.end(), candidate);
  if (it == members_.end() || *it != candidate) {
    throw InvalidInputError("candidate not in active set");
  }
  members_.erase(it);
}

Profile::Profile(int m, std::vector<std::pair<Ranking, Rational>> entries) : m_(m) {
  if (m < 1) throw InvalidInputError("profile needs at least one candidate");
  std::map<Ranking, Rational> merged;
  for (auto& [r, w] : entries) {
    if (r.m() != m) throw InvalidInputError("ranking size does not match profile m");
    if (w.is_negative()) throw InvalidInputError("negative weight in profile");
    merged[r] += w;
  }
  Rational total;
  for (auto& [r, w] : merged) {
    if (w.is_zero()) continue;
    total += w;
    entries_.emplace_back(r, w);
  }
  if (total != Rational(1)) {
    throw InvalidInputError("profile weights sum to " + total.str() + ", expected 1");
  }
}

int Profile::find(const Ranking& r) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), r,
                             [](const auto& e, const Ranking& key) { return e.first < key; });
  if (it == entries_.end() || !(it->first == r)) return -1;
  return static_cast<int>(it - entries_.begin());
}

Subprofile::Subprofile(const Profile& parent, std::vector<Rational> weights)
    : parent_(&parent), weights_(std::move(weights)) {
  if (static_cast<int>(weights_.size()) != parent.support_size()) {
    throw InvalidInputError("subprofile weight vector does not match support");
  }
  for (int i = 0; i < parent.support_size(); ++i) {
    if (weights_[i].is_negative() || weights_[i] > parent.weight(i)) {
      throw InvalidInputError("subprofile weight outside [0, R(ranking)]");
    }
  }
}

Rational Subprofile::size() const {
  Rational total;
  for (const auto& w : weights_) total += w;
  return total;
}

long long choose2(int n) { return static_cast<long long>(n) * (n - 1) / 2; }

long long utility(const Ranking& a, const Ranking& b) {
  if (a.m() != b.m()) throw InvalidInputError("utility of rankings with different m");
  const int m = a.m();
  long long agree = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      int x = a.at(i), y = a.at(j);  // x above y in a
      if (b.prefers(x, y)) ++agree;
    }
  }
  return agree;
}

long long swap_distance(const Ranking& a, const Ranking& b) {
  return choose2(a.m()) - utility(a, b);
}

long long positional_utility(const Ranking& r, int x, const CandidateSet& X) {
  if (!X.contains(x)) throw InvalidInputError("positional_utility: x not in X");
  long long count = 0;
  for (int y : X) {
    if (y != x && r.prefers(x, y)) ++count;
  }
  return count;
}

std::vector<std::pair<int, int>> pair_set(const Ranking& r) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(choose2(r.m()));
  for (int i = 0; i < r.m(); ++i) {
    for (int j = i + 1; j < r.m(); ++j) {
      pairs.emplace_back(r.at(i), r.at(j));
    }
  }
  return pairs;
}

Rational borda_total(const Profile& profile, std::span<const Rational> budgets, int x,
                     const CandidateSet& X) {
  if (!X.contains(x)) throw InvalidInputError("borda_total: x not in X");
  Rational total;
  for (int i = 0; i < profile.support_size(); ++i) {
    long long u = positional_utility(profile.ranking(i), x, X);
    if (u != 0 && !budgets[i].is_zero()) {
      total += budgets[i] * Rational(u);
    }
  }
  return total;
}

}  // namespace proprank
