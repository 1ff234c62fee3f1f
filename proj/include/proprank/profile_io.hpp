#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "proprank/core.hpp"

namespace proprank {

// A parsed profile file: the profile plus the candidate names used in it.
struct ProfileDocument {
  std::vector<std::string> names;  // index -> display name
  Profile profile;

  std::string name_of(int candidate) const { return names[candidate]; }
  std::string format_ranking(const Ranking& r, const std::string& sep = " > ") const;
};

// Line-oriented text format:
//   # comment
//   m 5
//   candidates a b c d e          (optional; else names come from first use)
//   ranking 3/5: a > b > c > d > e
// Weights are "p/q", integer, or decimal literals; duplicate ranking lines
// merge by weight addition; the weights must sum to exactly 1.
ProfileDocument parse_profile(const std::string& text);

std::string render_profile(const ProfileDocument& doc);

// Deterministic, platform-independent generators. Weights are rationals on
// the common denominator 2^20.
Profile gen_ic(int m, int support, std::uint64_t seed);
Profile gen_mallows(int m, int support, std::uint64_t seed, const Rational& phi);
Profile gen_two_bloc(int m, int support, std::uint64_t seed, const Rational& split);

enum class GenModel { Ic, Mallows, TwoBloc };

struct GenSpec {
  GenModel model = GenModel::Ic;
  int m = 5;
  int support = 4;
  std::uint64_t seed = 1;
  Rational phi = Rational(1, 2);    // mallows dispersion
  Rational split = Rational(3, 5);  // two-bloc weight of the first bloc
};

Profile gen_profile(const GenSpec& spec);

// Default names x1..xm for generated profiles.
std::vector<std::string> default_names(int m);

// FNV-1a digest of the canonical rendering; used to key run records.
std::string profile_digest(const ProfileDocument& doc);

namespace detail {

// splitmix64: tiny, well-mixed, identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [0, bound) without modulo bias.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

}  // namespace detail

}  // namespace proprank
