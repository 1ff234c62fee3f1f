#include "proprank/profile_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "proprank/errors.hpp"

namespace proprank {

namespace detail {

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidInputError("rng bound must be positive");
  std::uint64_t threshold = -bound % bound;  // reject to kill modulo bias
  for (;;) {
    std::uint64_t v = next();
    if (v >= threshold) return v % bound;
  }
}

}  // namespace detail

std::string ProfileDocument::format_ranking(const Ranking& r, const std::string& sep) const {
  std::string s;
  for (int i = 0; i < r.m(); ++i) {
    if (i) s += sep;
    s += names[r.at(i)];
  }
  return s;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace

ProfileDocument parse_profile(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  int m = -1;
  bool names_declared = false;
  std::vector<std::string> names;
  std::map<std::string, int> name_index;
  std::vector<std::pair<Ranking, Rational>> entries;
  int last_ranking_line = 0;

  auto intern = [&](const std::string& name, int ln) -> int {
    auto it = name_index.find(name);
    if (it != name_index.end()) return it->second;
    if (names_declared) throw ParseError(ln, "unknown candidate name '" + name + "'");
    if (static_cast<int>(names.size()) >= m) {
      throw ParseError(ln, "more candidate names than m=" + std::to_string(m));
    }
    int idx = static_cast<int>(names.size());
    names.push_back(name);
    name_index[name] = idx;
    return idx;
  };

  while (std::getline(is, line)) {
    ++line_no;
    line = strip_comment(line);
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    const std::string& keyword = tokens[0];
    if (keyword == "m") {
      if (m != -1) throw ParseError(line_no, "duplicate m header");
      if (tokens.size() != 2) throw ParseError(line_no, "expected: m <count>");
      try {
        m = std::stoi(tokens[1]);
      } catch (const std::exception&) {
        throw ParseError(line_no, "bad candidate count '" + tokens[1] + "'");
      }
      if (m < 1) throw ParseError(line_no, "m must be at least 1");
    } else if (keyword == "candidates") {
      if (m == -1) throw ParseError(line_no, "candidates before the m header");
      if (names_declared) throw ParseError(line_no, "duplicate candidates line");
      if (static_cast<int>(tokens.size()) - 1 != m) {
        throw ParseError(line_no, "expected exactly " + std::to_string(m) + " names");
      }
      for (size_t i = 1; i < tokens.size(); ++i) intern(tokens[i], line_no);
      names_declared = true;
    } else if (keyword == "ranking") {
      if (m == -1) throw ParseError(line_no, "ranking before the m header");
      last_ranking_line = line_no;
      // "ranking <rat>: c > c > ..."
      std::string rest = line.substr(line.find("ranking") + 7);
      auto colon = rest.find(':');
      if (colon == std::string::npos) throw ParseError(line_no, "missing ':' after the weight");
      std::string weight_text = rest.substr(0, colon);
      weight_text.erase(std::remove_if(weight_text.begin(), weight_text.end(),
                                       [](unsigned char c) { return std::isspace(c); }),
                        weight_text.end());
      Rational weight;
      try {
        weight = Rational::parse(weight_text);
      } catch (const InvalidInputError& e) {
        throw ParseError(line_no, e.what());
      }
      if (weight.is_negative()) throw ParseError(line_no, "negative weight");
      std::string order_text = rest.substr(colon + 1);
      std::vector<std::string> cells;
      std::string cell;
      std::istringstream os(order_text);
      while (std::getline(os, cell, '>')) {
        auto toks = split_ws(cell);
        if (toks.size() != 1) throw ParseError(line_no, "malformed candidate list");
        cells.push_back(toks[0]);
      }
      if (static_cast<int>(cells.size()) != m) {
        throw ParseError(line_no, "ranking lists " + std::to_string(cells.size()) +
                                      " candidates, expected " + std::to_string(m));
      }
      std::vector<int> order;
      order.reserve(m);
      for (const auto& c : cells) order.push_back(intern(c, line_no));
      std::set<int> distinct(order.begin(), order.end());
      if (static_cast<int>(distinct.size()) != m) {
        throw ParseError(line_no, "ranking is not a permutation of the candidates");
      }
      entries.emplace_back(Ranking{order}, weight);
    } else {
      throw ParseError(line_no, "unknown directive '" + keyword + "'");
    }
  }
  if (m == -1) throw ParseError(line_no, "missing m header");
  if (entries.empty()) throw ParseError(line_no, "no ranking lines");
  if (static_cast<int>(names.size()) != m) {
    throw ParseError(last_ranking_line,
                     "only " + std::to_string(names.size()) + " distinct candidates named, m=" +
                         std::to_string(m));
  }
  try {
    Profile profile{m, std::move(entries)};
    return ProfileDocument{std::move(names), std::move(profile)};
  } catch (const InvalidInputError& e) {
    throw ParseError(last_ranking_line, e.what());
  }
}

std::string render_profile(const ProfileDocument& doc) {
  std::ostringstream os;
  os << "m " << doc.profile.m() << "\n";
  os << "candidates";
  for (const auto& n : doc.names) os << " " << n;
  os << "\n";
  for (const auto& [r, w] : doc.profile.entries()) {
    os << "ranking " << w.str() << ": " << doc.format_ranking(r) << "\n";
  }
  return os.str();
}

std::vector<std::string> default_names(int m) {
  std::vector<std::string> names;
  names.reserve(m);
  for (int i = 0; i < m; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

namespace {

constexpr std::uint64_t kWeightDenominator = 1u << 20;

// `count` positive weights summing to exactly 1, denominator 2^20: distinct
// uniform cut points over (0, 2^20).
std::vector<Rational> simplex_weights(int count, detail::Rng& rng) {
  if (count > static_cast<int>(kWeightDenominator) - 1) {
    throw InvalidInputError("support too large for the weight denominator");
  }
  std::set<std::uint64_t> cuts;
  while (static_cast<int>(cuts.size()) < count - 1) {
    cuts.insert(1 + rng.below(kWeightDenominator - 1));
  }
  std::vector<std::uint64_t> points(cuts.begin(), cuts.end());
  points.push_back(kWeightDenominator);
  std::vector<Rational> weights;
  std::uint64_t prev = 0;
  for (auto p : points) {
    weights.emplace_back(Rational(BigInt(p - prev), BigInt(kWeightDenominator)));
    prev = p;
  }
  return weights;
}

Ranking random_ranking(int m, detail::Rng& rng) {
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  for (int i = m - 1; i > 0; --i) {
    std::swap(order[i], order[static_cast<int>(rng.below(i + 1))]);
  }
  return Ranking{order};
}

// One Mallows insertion sample around `center` with dispersion phi, sampled
// exactly: at step k the new item lands j slots above the bottom with
// probability proportional to phi^j.
Ranking mallows_sample(const Ranking& center, const Rational& phi, detail::Rng& rng) {
  const int m = center.m();
  std::vector<int> partial;
  partial.reserve(m);
  const BigInt a = phi.numerator();
  const BigInt b = phi.denominator();
  for (int k = 0; k < m; ++k) {
    int item = center.at(k);
    // weights over positions j = 0..k (0 = keep center order, i.e. append at
    // the bottom): a^j * b^(k-j), all scaled by b^k
    std::vector<BigInt> cumulative(k + 1);
    BigInt total = 0;
    BigInt w = 1;
    for (int j = 0; j <= k; ++j) {
      BigInt term = w;
      for (int p = 0; p < k - j; ++p) term *= b;
      total += term;
      cumulative[j] = total;
      w *= a;
    }
    BigInt draw;
    if (total <= 1) {
      draw = 0;
    } else {
      // total fits in 64 bits for desk-scale phi and m; guard anyway
      if (total > BigInt(UINT64_MAX)) {
        // fall back to coarse rejection over 64-bit slices
        draw = BigInt(rng.below(UINT64_MAX)) % total;
      } else {
        draw = BigInt(rng.below(static_cast<std::uint64_t>(total)));
      }
    }
    int pos = 0;
    while (cumulative[pos] <= draw) ++pos;
    partial.insert(partial.end() - pos, item);
  }
  return Ranking{partial};
}

}  // namespace

Profile gen_ic(int m, int support, std::uint64_t seed) {
  if (support < 1) throw InvalidInputError("support must be at least 1");
  std::uint64_t perms = 1;
  for (int i = 2; i <= m && perms < static_cast<std::uint64_t>(support); ++i) perms *= i;
  if (perms < static_cast<std::uint64_t>(support)) {
    throw InvalidInputError("support exceeds m!");
  }
  detail::Rng rng(seed * 0x100000001b3ULL + 0x6a09e667f3bcc909ULL);
  std::set<Ranking> distinct;
  while (static_cast<int>(distinct.size()) < support) {
    distinct.insert(random_ranking(m, rng));
  }
  auto weights = simplex_weights(support, rng);
  std::vector<std::pair<Ranking, Rational>> entries;
  int i = 0;
  for (const auto& r : distinct) entries.emplace_back(r, weights[i++]);
  return Profile{m, std::move(entries)};
}

Profile gen_mallows(int m, int support, std::uint64_t seed, const Rational& phi) {
  if (support < 1) throw InvalidInputError("support must be at least 1");
  if (phi.is_negative() || phi > Rational(1)) {
    throw InvalidInputError("mallows dispersion must be in [0, 1]");
  }
  detail::Rng rng(seed * 0x100000001b3ULL + 0x3c6ef372fe94f82bULL);
  Ranking center = random_ranking(m, rng);
  auto weights = simplex_weights(support, rng);
  std::vector<std::pair<Ranking, Rational>> entries;
  for (int i = 0; i < support; ++i) {
    entries.emplace_back(mallows_sample(center, phi, rng), weights[i]);
  }
  return Profile{m, std::move(entries)};  // duplicates merge
}

Profile gen_two_bloc(int m, int support, std::uint64_t seed, const Rational& split) {
  if (support < 2) throw InvalidInputError("two-bloc needs support >= 2");
  if (split.is_negative() || split > Rational(1)) {
    throw InvalidInputError("split must be in [0, 1]");
  }
  detail::Rng rng(seed * 0x100000001b3ULL + 0xa54ff53a5f1d36f1ULL);
  Ranking base = random_ranking(m, rng);
  Ranking mirror = base.inverse();
  // Noise rankings split the final 1/8 of the mass; the blocs share the rest
  // according to `split`. All fractions stay on the 2^20 grid.
  std::vector<std::pair<Ranking, Rational>> entries;
  int noise = support - 2;
  Rational noise_mass = noise > 0 ? Rational(1, 8) : Rational(0);
  Rational bloc_mass = Rational(1) - noise_mass;
  Rational w_base = bloc_mass * split;
  Rational w_mirror = bloc_mass - w_base;
  entries.emplace_back(base, w_base);
  entries.emplace_back(mirror, w_mirror);
  if (noise > 0) {
    auto noise_weights = simplex_weights(noise, rng);
    for (int i = 0; i < noise; ++i) {
      const Ranking& anchor = (i % 2 == 0) ? base : mirror;
      entries.emplace_back(mallows_sample(anchor, Rational(1, 2), rng),
                           noise_weights[i] * noise_mass);
    }
  }
  return Profile{m, std::move(entries)};
}

Profile gen_profile(const GenSpec& spec) {
  switch (spec.model) {
    case GenModel::Ic: return gen_ic(spec.m, spec.support, spec.seed);
    case GenModel::Mallows: return gen_mallows(spec.m, spec.support, spec.seed, spec.phi);
    case GenModel::TwoBloc: return gen_two_bloc(spec.m, spec.support, spec.seed, spec.split);
  }
  throw InvalidInputError("unknown generator model");
}

std::string profile_digest(const ProfileDocument& doc) {
  std::string canonical = render_profile(doc);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << hash;
  return os.str();
}

}  // namespace proprank
