#pragma once

#include <utility>

#include "proprank/core.hpp"

namespace proprank {

inline constexpr int kDefaultEnumerationCap = 8;

struct SwfResult {
  Ranking ranking;
  Rational score;       // the rule's own objective at `ranking`
  bool tie_note = false;  // another ranking reached the same objective
};

// Repeatedly places the Borda winner (ties to the smaller index) and removes
// it; weights never change.
SwfResult sequential_borda(const Profile& profile);

// Exhaustive argmax of sum_r R(r) * utility(r, out) over all m! rankings.
// Ties resolve to the lexicographically smallest order. Throws CapacityError
// above the enumeration cap.
SwfResult kemeny(const Profile& profile, int enumeration_cap = kDefaultEnumerationCap);

// Exhaustive argmin of sum_r R(r) * swap(r, out)^2; same tie rule and cap.
SwfResult squared_kemeny(const Profile& profile, int enumeration_cap = kDefaultEnumerationCap);

// Maximizes the share of rankings with nonzero utility. Equivalent to
// minimizing the weight of the output's inverse, so it runs in O(support)
// instead of enumerating rankings; the objective reported is
// 1 - R(inverse(out)).
SwfResult chamberlin_courant(const Profile& profile);

// Four-ranking family on which Squared Kemeny leaves a weight-(m/5)/C(m,2)
// ranking with zero utility (its output is that ranking's full inverse).
// Returns the profile and the unrepresented ranking. The third ranking is
// constructed with exactly ceil(C(m-1,2)/2) inversions over the suffix, which
// the generator asserts before returning.
std::pair<Profile, Ranking> make_sqk_ujr_violation_profile(int m);

}  // namespace proprank
