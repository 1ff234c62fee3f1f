#include "proprank/flow.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "proprank/errors.hpp"

namespace proprank {

void FlowNetwork::validate() const {
  if (num_left < 0 || num_right < 0) throw InvalidInputError("negative layer size");
  if (static_cast<int>(source_cap.size()) != num_left ||
      static_cast<int>(mid.size()) != num_left ||
      static_cast<int>(sink_cap.size()) != num_right) {
    throw InvalidInputError("flow network arrays do not match layer sizes");
  }
  for (const auto& c : source_cap) {
    if (!c.unbounded && c.value.is_negative()) throw InvalidInputError("negative capacity");
  }
  for (const auto& c : sink_cap) {
    if (!c.unbounded && c.value.is_negative()) throw InvalidInputError("negative capacity");
  }
  for (const auto& arcs : mid) {
    int last = -1;
    for (const auto& [r, c] : arcs) {
      if (r < 0 || r >= num_right) throw InvalidInputError("mid arc to unknown right vertex");
      if (r <= last) throw InvalidInputError("mid arcs must be sorted without parallels");
      if (!c.unbounded && c.value.is_negative()) throw InvalidInputError("negative capacity");
      last = r;
    }
  }
}

Rational FlowAssignment::mid_value(int left, int right) const {
  for (const auto& [r, f] : mid_flow[left]) {
    if (r == right) return f;
  }
  return Rational();
}

namespace {

// Residual edge-list solver over the 4-layer shape.
struct Solver {
  struct Edge {
    int from, to;
    Capacity cap;
    Rational flow;
    Rational residual_or_zero() const { return cap.value - flow; }  // finite only
    bool has_residual() const { return cap.unbounded || flow < cap.value; }
  };

  explicit Solver(const FlowNetwork& g) : g(g) {
    g.validate();
    n = g.num_left + g.num_right + 2;
    adj.assign(n, {});
    for (int i = 0; i < g.num_left; ++i) {
      add_edge(g.source_vertex(), g.left_vertex(i), g.source_cap[i]);
    }
    for (int i = 0; i < g.num_left; ++i) {
      for (const auto& [r, c] : g.mid[i]) {
        add_edge(g.left_vertex(i), g.right_vertex(r), c);
      }
    }
    for (int j = 0; j < g.num_right; ++j) {
      add_edge(g.right_vertex(j), g.sink_vertex(), g.sink_cap[j]);
    }
  }

  void add_edge(int from, int to, Capacity cap) {
    adj[from].push_back(static_cast<int>(edges.size()));
    edges.push_back({from, to, cap, Rational()});
    adj[to].push_back(static_cast<int>(edges.size()));
    edges.push_back({to, from, Capacity(Rational()), Rational()});
  }

  // BFS for a shortest augmenting path; returns false if the sink is
  // unreachable. parent_edge[v] is the edge used to enter v.
  bool bfs(std::vector<int>& parent_edge) {
    parent_edge.assign(n, -1);
    std::vector<char> seen(n, 0);
    seen[g.source_vertex()] = 1;
    std::deque<int> queue{g.source_vertex()};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int id : adj[v]) {
        const Edge& e = edges[id];
        if (seen[e.to] || !residual_positive(e)) continue;
        seen[e.to] = 1;
        parent_edge[e.to] = id;
        if (e.to == g.sink_vertex()) return true;
        queue.push_back(e.to);
      }
    }
    return false;
  }

  static bool residual_positive(const Edge& e) {
    if (e.cap.unbounded) return true;
    return e.flow < e.cap.value;
  }

  Rational run() {
    Rational total;
    std::vector<int> parent_edge;
    while (bfs(parent_edge)) {
      // Bottleneck over the path; must be finite because source arcs are
      // finite on any s->t path (an all-unbounded path means the max flow
      // itself is unbounded).
      std::optional<Rational> bottleneck;
      for (int v = g.sink_vertex(); v != g.source_vertex();) {
        const Edge& e = edges[parent_edge[v]];
        if (!e.cap.unbounded) {
          Rational r = e.residual_or_zero();
          if (!bottleneck || r < *bottleneck) bottleneck = r;
        }
        v = e.from;
      }
      if (!bottleneck) throw InvalidInputError("max flow is unbounded");
      for (int v = g.sink_vertex(); v != g.source_vertex();) {
        Edge& e = edges[parent_edge[v]];
        e.flow += *bottleneck;
        edges[parent_edge[v] ^ 1].flow -= *bottleneck;
        v = e.from;
      }
      total += *bottleneck;
    }
    return total;
  }

  std::vector<char> residual_reachable() const {
    std::vector<char> seen(n, 0);
    seen[g.source_vertex()] = 1;
    std::deque<int> queue{g.source_vertex()};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int id : adj[v]) {
        const Edge& e = edges[id];
        if (!seen[e.to] && residual_positive(e)) {
          seen[e.to] = 1;
          queue.push_back(e.to);
        }
      }
    }
    return seen;
  }

  FlowAssignment extract(const Rational& value) const {
    FlowAssignment f;
    f.value = value;
    f.source_flow.assign(g.num_left, Rational());
    f.mid_flow.assign(g.num_left, {});
    f.sink_flow.assign(g.num_right, Rational());
    for (size_t id = 0; id < edges.size(); id += 2) {
      const Edge& e = edges[id];
      if (e.flow.is_negative()) throw InternalError("negative forward flow");
      if (e.from == g.source_vertex()) {
        f.source_flow[e.to - 1] = e.flow;
      } else if (e.to == g.sink_vertex()) {
        f.sink_flow[e.from - 1 - g.num_left] = e.flow;
      } else {
        f.mid_flow[e.from - 1].emplace_back(e.to - 1 - g.num_left, e.flow);
      }
    }
    verify(f);
    return f;
  }

  // Conservation and capacity re-check; cheap at this scale and mandatory.
  void verify(const FlowAssignment& f) const {
    Rational s_out, t_in;
    for (int i = 0; i < g.num_left; ++i) {
      if (!g.source_cap[i].unbounded && f.source_flow[i] > g.source_cap[i].value) {
        throw InternalError("source capacity violated");
      }
      Rational out;
      for (size_t k = 0; k < g.mid[i].size(); ++k) {
        const auto& [r, c] = g.mid[i][k];
        const auto& [rf, fv] = f.mid_flow[i][k];
        if (r != rf) throw InternalError("mid flow misaligned");
        if (!c.unbounded && fv > c.value) throw InternalError("mid capacity violated");
        if (fv.is_negative()) throw InternalError("negative flow");
        out += fv;
      }
      if (out != f.source_flow[i]) throw InternalError("conservation violated at left vertex");
      s_out += f.source_flow[i];
    }
    std::vector<Rational> in(g.num_right);
    for (int i = 0; i < g.num_left; ++i) {
      for (const auto& [r, fv] : f.mid_flow[i]) in[r] += fv;
    }
    for (int j = 0; j < g.num_right; ++j) {
      if (in[j] != f.sink_flow[j]) throw InternalError("conservation violated at right vertex");
      if (!g.sink_cap[j].unbounded && f.sink_flow[j] > g.sink_cap[j].value) {
        throw InternalError("sink capacity violated");
      }
      t_in += f.sink_flow[j];
    }
    if (s_out != f.value || t_in != f.value) throw InternalError("flow value mismatch");
  }

  Cut cut_from_reachability() const {
    std::vector<char> seen = residual_reachable();
    Cut cut;
    for (int v = 0; v < n; ++v) {
      if (seen[v]) cut.source_side.push_back(v);
    }
    Capacity total{false, Rational()};
    for (size_t id = 0; id < edges.size(); id += 2) {
      const Edge& e = edges[id];
      if (seen[e.from] && !seen[e.to]) {
        if (e.cap.unbounded) {
          total.unbounded = true;
        } else {
          total.value += e.cap.value;
        }
      }
    }
    cut.capacity = total;
    return cut;
  }

  const FlowNetwork& g;
  int n;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> adj;
};

}  // namespace

FlowAssignment max_flow(const FlowNetwork& g) {
  Solver solver(g);
  Rational value = solver.run();
  return solver.extract(value);
}

Cut min_cut(const FlowNetwork& g) { return max_flow_min_cut(g).second; }

std::pair<FlowAssignment, Cut> max_flow_min_cut(const FlowNetwork& g) {
  Solver solver(g);
  Rational value = solver.run();
  FlowAssignment f = solver.extract(value);
  Cut cut = solver.cut_from_reachability();
  if (cut.capacity.unbounded || cut.capacity.value != value) {
    throw InternalError("min cut capacity does not equal max flow value");
  }
  return {std::move(f), std::move(cut)};
}

namespace {

FlowNetwork with_source_caps(const FlowNetwork& g, std::vector<Capacity> caps) {
  FlowNetwork capped = g;
  capped.source_cap = std::move(caps);
  return capped;
}

struct NewtonResult {
  Rational rho;
  FlowNetwork network;    // capped at rho
  FlowAssignment flow;    // max flow of the capped network, value = target
};

// Minimal rho such that capping each free source arc i at
// min(source_cap[i], rho * weights[i]) still admits a flow of value `target`.
// Fixed vertices keep the capacities in `fixed_caps`.
NewtonResult newton_min_rho(const FlowNetwork& g, const std::vector<Rational>& weights,
                            const std::vector<char>& is_free,
                            const std::vector<Capacity>& fixed_caps, const Rational& target) {
  Rational rho;
  for (int iter = 0; iter < 10000; ++iter) {
    std::vector<Capacity> caps(g.num_left);
    for (int i = 0; i < g.num_left; ++i) {
      if (!is_free[i]) {
        caps[i] = fixed_caps[i];
      } else {
        Rational parametric = rho * weights[i];
        if (g.source_cap[i].unbounded || parametric < g.source_cap[i].value) {
          caps[i] = Capacity(parametric);
        } else {
          caps[i] = g.source_cap[i];
        }
      }
    }
    FlowNetwork capped = with_source_caps(g, std::move(caps));
    Solver solver(capped);
    Rational value = solver.run();
    if (value == target) {
      return {rho, std::move(capped), solver.extract(value)};
    }
    if (value > target) throw InternalError("capped flow exceeds the uncapped max flow");
    // The residual min cut gives the binding linear constraint
    // constant + rho * slope >= target on this segment.
    std::vector<char> seen = solver.residual_reachable();
    Rational constant;
    Rational slope;
    for (int i = 0; i < g.num_left; ++i) {
      if (!seen[g.left_vertex(i)]) {
        if (!is_free[i]) {
          if (fixed_caps[i].unbounded) throw InternalError("unbounded fixed source cap in cut");
          constant += fixed_caps[i].value;
        } else if (g.source_cap[i].unbounded || rho * weights[i] <= g.source_cap[i].value) {
          slope += weights[i];
        } else {
          constant += g.source_cap[i].value;
        }
      }
    }
    for (int i = 0; i < g.num_left; ++i) {
      if (!seen[g.left_vertex(i)]) continue;
      for (const auto& [r, c] : g.mid[i]) {
        if (!seen[g.right_vertex(r)]) {
          if (c.unbounded) throw InternalError("unbounded mid arc crosses a deficient cut");
          constant += c.value;
        }
      }
    }
    for (int j = 0; j < g.num_right; ++j) {
      if (seen[g.right_vertex(j)] && !seen[g.sink_vertex()]) {
        if (g.sink_cap[j].unbounded) throw InternalError("unbounded sink arc in cut");
        constant += g.sink_cap[j].value;
      }
    }
    if (slope.is_zero()) {
      throw InternalError("ratio-capped network cannot reach the maximum flow value");
    }
    Rational next = (target - constant) / slope;
    if (!(next > rho)) throw InternalError("newton step did not advance");
    rho = next;
  }
  throw InternalError("newton iteration limit exceeded");
}

}  // namespace

Rational min_max_ratio(const FlowNetwork& g, const std::vector<Rational>& weights) {
  if (static_cast<int>(weights.size()) != g.num_left) {
    throw InvalidInputError("weights do not match left layer");
  }
  Rational target = max_flow(g).value;
  if (target.is_zero()) return Rational();
  std::vector<char> is_free(g.num_left, 0);
  std::vector<Capacity> fixed_caps(g.num_left, Capacity(Rational()));
  bool any_free = false;
  for (int i = 0; i < g.num_left; ++i) {
    if (weights[i].is_negative()) throw InvalidInputError("negative ratio weight");
    if (!weights[i].is_zero()) {
      is_free[i] = 1;
      any_free = true;
    }
  }
  if (!any_free) throw InternalError("positive max flow with all-zero ratio weights");
  return newton_min_rho(g, weights, is_free, fixed_caps, target).rho;
}

FlowAssignment min_ratio_max_flow(const FlowNetwork& g, const std::vector<Rational>& weights) {
  if (static_cast<int>(weights.size()) != g.num_left) {
    throw InvalidInputError("weights do not match left layer");
  }
  Rational target = max_flow(g).value;
  std::vector<char> is_free(g.num_left, 0);
  // Zero-weight vertices carry zero flow (the 0/0 = 0 convention).
  std::vector<Capacity> fixed_caps(g.num_left, Capacity(Rational()));
  int free_count = 0;
  for (int i = 0; i < g.num_left; ++i) {
    if (weights[i].is_negative()) throw InvalidInputError("negative ratio weight");
    if (!weights[i].is_zero()) {
      is_free[i] = 1;
      ++free_count;
    }
  }
  if (target.is_zero()) {
    FlowNetwork capped = with_source_caps(g, std::vector<Capacity>(g.num_left, Capacity(Rational())));
    return max_flow(capped);
  }
  if (free_count == 0) {
    throw InternalError("positive max flow with all-zero ratio weights");
  }
  // Peel off one ratio level at a time: the vertices on the sink side of the
  // residual min cut are saturated in every maximum flow of the capped
  // network, so their ratio cannot drop below the current level. Fix them and
  // re-minimize the ratio for the rest.
  while (free_count > 0) {
    NewtonResult level = newton_min_rho(g, weights, is_free, fixed_caps, target);
    Solver solver(level.network);
    Rational value = solver.run();
    if (value != target) throw InternalError("level network lost flow value");
    std::vector<char> seen = solver.residual_reachable();
    int bound_here = 0;
    for (int i = 0; i < g.num_left; ++i) {
      if (is_free[i] && !seen[g.left_vertex(i)]) {
        is_free[i] = 0;
        fixed_caps[i] = level.network.source_cap[i];
        ++bound_here;
      }
    }
    if (bound_here == 0) {
      // Only possible at level rho = 0: every remaining vertex can carry zero.
      for (int i = 0; i < g.num_left; ++i) {
        if (is_free[i]) {
          is_free[i] = 0;
          fixed_caps[i] = level.network.source_cap[i];
          ++bound_here;
        }
      }
    }
    free_count -= bound_here;
  }
  FlowNetwork final_net = with_source_caps(g, fixed_caps);
  FlowAssignment f = max_flow(final_net);
  if (f.value != target) throw InternalError("lexicographic capping lost flow value");
  return f;
}

FlowNetwork rank_priceability_network(const Profile& profile, const Ranking& ranking) {
  if (ranking.m() != profile.m()) throw InvalidInputError("ranking m does not match profile");
  const int m = profile.m();
  const int n = profile.support_size();
  FlowNetwork g;
  g.num_left = n;
  g.num_right = m;
  g.source_cap.resize(n);
  g.mid.resize(n);
  g.sink_cap.resize(m);
  g.left_labels.resize(n);
  g.right_labels.resize(m);
  Rational budget_scale = profile.total_pairs();
  for (int i = 0; i < n; ++i) {
    g.source_cap[i] = Capacity(profile.weight(i) * budget_scale);
    g.left_labels[i] = "r" + std::to_string(i);
  }
  CandidateSet X = CandidateSet::full(m);
  for (int pos = 0; pos < m; ++pos) {
    int candidate = ranking.at(pos);
    for (int i = 0; i < n; ++i) {
      long long u = positional_utility(profile.ranking(i), candidate, X);
      if (u > 0) g.mid[i].emplace_back(pos, Capacity(Rational(u)));
    }
    g.sink_cap[pos] = Capacity(Rational(static_cast<long long>(m - 1 - pos)));
    g.right_labels[pos] = "pos" + std::to_string(pos + 1) + ":x" + std::to_string(candidate + 1);
    X.remove(candidate);
  }
  return g;
}

FlowNetwork pair_priceability_network(const Profile& profile, const Ranking& ranking) {
  if (ranking.m() != profile.m()) throw InvalidInputError("ranking m does not match profile");
  const int n = profile.support_size();
  auto pairs = pair_set(ranking);
  FlowNetwork g;
  g.num_left = n;
  g.num_right = static_cast<int>(pairs.size());
  g.source_cap.resize(n);
  g.mid.resize(n);
  g.sink_cap.assign(pairs.size(), Capacity(Rational(1)));
  g.left_labels.resize(n);
  g.right_labels.resize(pairs.size());
  Rational budget_scale = profile.total_pairs();
  for (size_t j = 0; j < pairs.size(); ++j) {
    g.right_labels[j] =
        "x" + std::to_string(pairs[j].first + 1) + ">x" + std::to_string(pairs[j].second + 1);
  }
  for (int i = 0; i < n; ++i) {
    g.source_cap[i] = Capacity(profile.weight(i) * budget_scale);
    g.left_labels[i] = "r" + std::to_string(i);
    for (size_t j = 0; j < pairs.size(); ++j) {
      if (profile.ranking(i).prefers(pairs[j].first, pairs[j].second)) {
        g.mid[i].emplace_back(static_cast<int>(j), Capacity(Rational(1)));
      }
    }
  }
  return g;
}

std::string to_dot(const FlowNetwork& g, const FlowAssignment* flow) {
  std::ostringstream os;
  os << "digraph flow {\n  rankdir=LR;\n";
  auto left_name = [&](int i) {
    return g.left_labels.size() == static_cast<size_t>(g.num_left) && !g.left_labels[i].empty()
               ? g.left_labels[i]
               : "L" + std::to_string(i);
  };
  auto right_name = [&](int j) {
    return g.right_labels.size() == static_cast<size_t>(g.num_right) && !g.right_labels[j].empty()
               ? g.right_labels[j]
               : "R" + std::to_string(j);
  };
  auto edge = [&](const std::string& a, const std::string& b, const Capacity& c,
                  const Rational* f) {
    os << "  \"" << a << "\" -> \"" << b << "\" [label=\"";
    if (f) os << f->str() << "/";
    os << c.str() << "\"];\n";
  };
  for (int i = 0; i < g.num_left; ++i) {
    edge("s", left_name(i), g.source_cap[i], flow ? &flow->source_flow[i] : nullptr);
  }
  for (int i = 0; i < g.num_left; ++i) {
    for (size_t k = 0; k < g.mid[i].size(); ++k) {
      edge(left_name(i), right_name(g.mid[i][k].first), g.mid[i][k].second,
           flow ? &flow->mid_flow[i][k].second : nullptr);
    }
  }
  for (int j = 0; j < g.num_right; ++j) {
    edge(right_name(j), "t", g.sink_cap[j], flow ? &flow->sink_flow[j] : nullptr);
  }
  os << "}\n";
  return os.str();
}

}  // namespace proprank
