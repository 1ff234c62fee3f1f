#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "proprank/core.hpp"
#include "proprank/rational.hpp"

namespace proprank {

// Arc capacity: a nonnegative rational or explicitly unbounded.
struct Capacity {
  bool unbounded = false;
  Rational value;

  static Capacity inf() {
    Capacity c;
    c.unbounded = true;
    return c;
  }
  Capacity() = default;
  Capacity(Rational v) : value(std::move(v)) {}  // NOLINT: implicit by design
  Capacity(long long v) : value(v) {}            // NOLINT

  std::string str() const { return unbounded ? "inf" : value.str(); }
};

// Source / left layer / right layer / sink network. Arcs only run
// source -> left, left -> right, right -> sink; no parallel arcs.
// In this library the left vertices are rankings and the right vertices are
// candidates, positions, or candidate pairs.
struct FlowNetwork {
  int num_left = 0;
  int num_right = 0;
  std::vector<Capacity> source_cap;                        // per left vertex
  std::vector<std::vector<std::pair<int, Capacity>>> mid;  // per left: (right, cap), sorted
  std::vector<Capacity> sink_cap;                          // per right vertex
  std::vector<std::string> left_labels;                    // optional, for dumps
  std::vector<std::string> right_labels;

  // Vertex ids used by Cut: 0 = source, 1..num_left = left,
  // num_left+1..num_left+num_right = right, num_left+num_right+1 = sink.
  int source_vertex() const { return 0; }
  int sink_vertex() const { return num_left + num_right + 1; }
  int left_vertex(int i) const { return 1 + i; }
  int right_vertex(int j) const { return 1 + num_left + j; }

  void validate() const;  // throws InvalidInputError on malformed shape
};

struct FlowAssignment {
  Rational value;
  std::vector<Rational> source_flow;                        // per left vertex
  std::vector<std::vector<std::pair<int, Rational>>> mid_flow;  // aligned with mid
  std::vector<Rational> sink_flow;                          // per right vertex

  Rational mid_value(int left, int right) const;
};

struct Cut {
  std::vector<int> source_side;  // vertex ids, contains the source, not the sink
  Capacity capacity;
};

// Shortest-augmenting-path max flow in exact rational arithmetic.
// Conservation and capacity constraints are re-verified before returning.
FlowAssignment max_flow(const FlowNetwork& g);

// Residual-reachability min cut of a maximum flow; its capacity equals the
// max-flow value (checked).
Cut min_cut(const FlowNetwork& g);

std::pair<FlowAssignment, Cut> max_flow_min_cut(const FlowNetwork& g);

// Among all maximum flows, returns one that lexicographically minimizes the
// sorted-descending vector of ratios f(s, v) / weights[v] over positive-weight
// left vertices (so in particular the largest ratio is minimal). Zero-weight
// vertices carry zero flow. Levels are found by cut-driven discrete Newton
// steps, which terminate exactly on rationals.
FlowAssignment min_ratio_max_flow(const FlowNetwork& g, const std::vector<Rational>& weights);

// The minimal achievable maximum ratio alone (the first Newton level).
Rational min_max_ratio(const FlowNetwork& g, const std::vector<Rational>& weights);

// Transportation network whose max flow is the best total payment of a
// candidate-level payment scheme for `ranking` under `profile`:
// source -> ranking arcs capped by the ranking's budget C(m,2) * R(r),
// ranking -> position arcs capped by the utility of placing the position's
// candidate there, position -> sink arcs capped by the position cost m-i.
FlowNetwork rank_priceability_network(const Profile& profile, const Ranking& ranking);

// Same idea at pair granularity: ranking -> pair arcs exist (capacity 1) only
// where the ranking agrees with the pair, pair -> sink arcs have capacity 1.
FlowNetwork pair_priceability_network(const Profile& profile, const Ranking& ranking);

// Graphviz-compatible dump with capacities (and flows, if given) as "p/q".
std::string to_dot(const FlowNetwork& g, const FlowAssignment* flow = nullptr);

}  // namespace proprank
