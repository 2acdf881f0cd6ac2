#include "wquiv/tame.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "wquiv/error.hpp"
#include "wquiv/mutation.hpp"

namespace wquiv {

namespace {

constexpr std::size_t kEnumerationVertexCap = 24;
constexpr std::int64_t kExtraCycleCap = 2;
constexpr std::size_t kEnumerationStepBudget = 20'000'000;

struct Edge {
  int to = 0;
  int arrow = 0;
  bool forward = true;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Per-quiver lookup tables shared by the cycle routines.
struct TriangleIndex {
  WeightedQuiver quiver;
  std::vector<Triangle> tris;
  std::map<int, std::vector<std::size_t>> of_arrow;
  std::map<int, std::vector<Edge>> adjacency;

  explicit TriangleIndex(const WeightedQuiver& q) : quiver(split_bundles(q)), tris(triangles(quiver)) {
    for (std::size_t t = 0; t < tris.size(); ++t) {
      for (int a : tris[t].arrows) of_arrow[a].push_back(t);
    }
    for (int v : quiver.vertex_ids()) adjacency[v];
    for (const auto& a : quiver.arrows()) {
      adjacency[a.src].push_back({a.dst, a.id, true});
      adjacency[a.dst].push_back({a.src, a.id, false});
    }
    for (auto& [v, edges] : adjacency) std::sort(edges.begin(), edges.end());
  }

  std::optional<std::size_t> shared_triangle(int a, int b) const {
    auto ia = of_arrow.find(a);
    auto ib = of_arrow.find(b);
    if (ia == of_arrow.end() || ib == of_arrow.end()) return std::nullopt;
    for (std::size_t t : ia->second) {
      if (std::find(ib->second.begin(), ib->second.end(), t) != ib->second.end()) return t;
    }
    return std::nullopt;
  }

  std::size_t triangles_at(int v) const {
    return static_cast<std::size_t>(std::count_if(tris.begin(), tris.end(), [v](const Triangle& t) {
      return std::find(t.vertices.begin(), t.vertices.end(), v) != t.vertices.end();
    }));
  }

  int degree(int v) const { return static_cast<int>(adjacency.at(v).size()); }

  bool each_arrow_in_at_most_one_triangle() const {
    return std::all_of(of_arrow.begin(), of_arrow.end(), [](const auto& kv) { return kv.second.size() <= 1; });
  }
};

WalkStep step_between(const Arrow& a, int from) { return {a.id, a.src == from}; }

std::vector<WalkCycle> enumerate_delta_free(const TriangleIndex& idx, std::size_t budget) {
  std::vector<WalkCycle> found;
  std::size_t steps = 0;
  std::set<int> used_arrows;
  std::map<std::size_t, int> used_tris;
  std::set<int> on_path;
  std::vector<WalkStep> path;

  auto admissible = [&](int arrow) {
    auto it = idx.of_arrow.find(arrow);
    if (it == idx.of_arrow.end()) return true;
    return std::none_of(it->second.begin(), it->second.end(), [&](std::size_t t) { return used_tris[t] > 0; });
  };
  auto mark = [&](int arrow, int delta) {
    auto it = idx.of_arrow.find(arrow);
    if (it == idx.of_arrow.end()) return;
    for (std::size_t t : it->second) used_tris[t] += delta;
  };

  for (const auto& [s, unused] : idx.adjacency) {
    auto dfs = [&](auto&& self, int cur) -> void {
      for (const Edge& e : idx.adjacency.at(cur)) {
        if (++steps > budget) {
          throw Error("enumeration_budget", "Delta-free cycle enumeration exceeded its step budget");
        }
        if (used_arrows.count(e.arrow) != 0 || !admissible(e.arrow)) continue;
        if (e.to == s) {
          if (path.empty()) continue;
          const Arrow& first = idx.quiver.arrow(path.front().arrow);
          const int second = path.front().forward ? first.dst : first.src;
          if (second < cur || (second == cur && path.front().arrow < e.arrow)) {
            WalkCycle c{s, path};
            c.steps.push_back({e.arrow, e.forward});
            found.push_back(std::move(c));
          }
          continue;
        }
        if (e.to < s || on_path.count(e.to) != 0) continue;
        used_arrows.insert(e.arrow);
        mark(e.arrow, 1);
        on_path.insert(e.to);
        path.push_back({e.arrow, e.forward});
        self(self, e.to);
        path.pop_back();
        on_path.erase(e.to);
        mark(e.arrow, -1);
        used_arrows.erase(e.arrow);
      }
    };
    on_path.insert(s);
    dfs(dfs, s);
    on_path.erase(s);
  }
  return found;
}

// The unique graph cycle left after deleting one edge per triangle, reduced
// until Delta-free. Needs every arrow in at most one triangle and chi = 0.
std::optional<WalkCycle> shortcut_delta_free(const TriangleIndex& idx) {
  std::set<int> deleted;
  for (const auto& t : idx.tris) deleted.insert(t.arrows[0]);
  std::map<int, std::vector<Edge>> adj;
  for (const auto& [v, edges] : idx.adjacency) {
    for (const Edge& e : edges) {
      if (deleted.count(e.arrow) == 0) adj[v].push_back(e);
    }
  }
  // Strip leaves until only the cycle remains.
  std::set<int> removed;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [v, edges] : adj) {
      if (removed.count(v) != 0) continue;
      const auto live = std::count_if(edges.begin(), edges.end(), [&](const Edge& e) { return removed.count(e.to) == 0; });
      if (live <= 1) {
        removed.insert(v);
        changed = true;
      }
    }
  }
  std::optional<int> root;
  for (const auto& [v, edges] : adj) {
    if (removed.count(v) == 0) {
      root = v;
      break;
    }
  }
  if (!root) return std::nullopt;
  const int start = *root;
  WalkCycle c{start, {}};
  int cur = start;
  std::set<int> used;
  do {
    const auto& edges = adj.at(cur);
    auto it = std::find_if(edges.begin(), edges.end(),
                           [&](const Edge& e) { return removed.count(e.to) == 0 && used.count(e.arrow) == 0; });
    if (it == edges.end()) return std::nullopt;
    used.insert(it->arrow);
    c.steps.push_back({it->arrow, it->forward});
    cur = it->to;
  } while (cur != start);
  auto reduced = reduce_cycle(idx.quiver, c);
  if (reduced.triangle) return std::nullopt;
  return canonical_cycle(idx.quiver, reduced.cycle);
}

std::string describe_walk(const WalkCycle& c) {
  std::string out = "start " + std::to_string(c.start) + " via";
  for (const auto& s : c.steps) out += " " + std::string(s.forward ? "+" : "-") + std::to_string(s.arrow);
  return out;
}

}  // namespace

std::vector<Triangle> triangles(const WeightedQuiver& q) {
  const WeightedQuiver s = split_bundles(q);
  std::map<int, std::vector<const Arrow*>> out;
  for (const auto& a : s.arrows()) out[a.src].push_back(&a);
  std::vector<Triangle> result;
  for (const auto& a : s.arrows()) {
    for (const Arrow* b : out[a.dst]) {
      if (b->dst == a.src || b->dst == a.dst || b->id < a.id) continue;
      for (const Arrow* c : out[b->dst]) {
        if (c->dst != a.src || c->id < a.id) continue;
        if ((a.weight * b->weight * c->weight).is_trivial()) {
          result.push_back({{a.id, b->id, c->id}, {a.src, a.dst, b->dst}});
        }
      }
    }
  }
  return result;
}

std::int64_t euler_characteristic(const WeightedQuiver& q) {
  const WeightedQuiver s = split_bundles(q);
  return static_cast<std::int64_t>(s.vertices().size()) - static_cast<std::int64_t>(s.arrows().size()) +
         static_cast<std::int64_t>(triangles(s).size());
}

bool is_oriented(const WalkCycle& c) {
  if (c.steps.empty()) return false;
  const bool first = c.steps.front().forward;
  return std::all_of(c.steps.begin(), c.steps.end(), [first](const WalkStep& s) { return s.forward == first; });
}

WalkCycle canonical_cycle(const WeightedQuiver& q, const WalkCycle& c) {
  const auto vertices = walk_vertices(q, c);
  const std::size_t len = c.steps.size();
  if (len == 0) return c;
  std::size_t pos = 0;
  for (std::size_t i = 1; i < len; ++i) {
    if (vertices[i] < vertices[pos]) pos = i;
  }
  WalkCycle rotated{vertices[pos], {}};
  for (std::size_t i = 0; i < len; ++i) rotated.steps.push_back(c.steps[(pos + i) % len]);
  const auto rv = walk_vertices(q, rotated);
  const int ahead = rv[1];
  const int behind = rv[len - 1];
  if (behind < ahead || (behind == ahead && rotated.steps.back().arrow < rotated.steps.front().arrow)) {
    return reverse_walk(rotated);
  }
  return rotated;
}

std::vector<WalkCycle> delta_free_cycles(const WeightedQuiver& q) {
  const TriangleIndex idx(q);
  const auto components = connected_components(idx.quiver);
  const std::int64_t cyclomatic = static_cast<std::int64_t>(idx.quiver.arrows().size()) -
                                  static_cast<std::int64_t>(idx.quiver.vertices().size()) +
                                  static_cast<std::int64_t>(components.size());
  const bool small = idx.quiver.vertices().size() <= kEnumerationVertexCap &&
                     cyclomatic - static_cast<std::int64_t>(idx.tris.size()) <= kExtraCycleCap;
  const bool shortcut_applies = components.size() == 1 && idx.each_arrow_in_at_most_one_triangle() &&
                                euler_characteristic(idx.quiver) == 0;
  if (!small && shortcut_applies) {
    if (auto c = shortcut_delta_free(idx)) return {*c};
  }
  auto cycles = enumerate_delta_free(idx, kEnumerationStepBudget);
  std::sort(cycles.begin(), cycles.end(), [](const WalkCycle& a, const WalkCycle& b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.steps.size() != b.steps.size()) return a.steps.size() < b.steps.size();
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
      if (a.steps[i].arrow != b.steps[i].arrow) return a.steps[i].arrow < b.steps[i].arrow;
    }
    return false;
  });
  return cycles;
}

CycleReduction reduce_cycle(const WeightedQuiver& q, const WalkCycle& c) {
  const TriangleIndex idx(q);
  CycleReduction out;
  out.cycle = c;
  out.history.push_back(c);
  while (true) {
    auto& cur = out.cycle;
    const auto vertices = walk_vertices(idx.quiver, cur);
    const std::size_t len = cur.steps.size();
    if (len == 3) {
      auto t01 = idx.shared_triangle(cur.steps[0].arrow, cur.steps[1].arrow);
      auto t12 = idx.shared_triangle(cur.steps[1].arrow, cur.steps[2].arrow);
      if (t01 && t12 && *t01 == *t12) {
        out.triangle = true;
        return out;
      }
    }
    if (len < 3) return out;
    auto third_edge = [&](std::size_t t, int a, int b) {
      for (int x : idx.tris[t].arrows) {
        if (x != a && x != b) return x;
      }
      throw Error("internal", "triangle lookup failed");
    };
    bool reduced = false;
    for (std::size_t i = 0; i + 1 < len && !reduced; ++i) {
      auto t = idx.shared_triangle(cur.steps[i].arrow, cur.steps[i + 1].arrow);
      if (!t) continue;
      const Arrow& e = idx.quiver.arrow(third_edge(*t, cur.steps[i].arrow, cur.steps[i + 1].arrow));
      WalkCycle next{cur.start, {}};
      next.steps.insert(next.steps.end(), cur.steps.begin(), cur.steps.begin() + static_cast<std::ptrdiff_t>(i));
      next.steps.push_back(step_between(e, vertices[i]));
      next.steps.insert(next.steps.end(), cur.steps.begin() + static_cast<std::ptrdiff_t>(i + 2), cur.steps.end());
      cur = std::move(next);
      reduced = true;
    }
    if (!reduced) {
      auto t = idx.shared_triangle(cur.steps[len - 1].arrow, cur.steps[0].arrow);
      if (!t) return out;
      const Arrow& e = idx.quiver.arrow(third_edge(*t, cur.steps[len - 1].arrow, cur.steps[0].arrow));
      const int from = vertices[len - 1];
      WalkCycle next{from, {step_between(e, from)}};
      next.steps.insert(next.steps.end(), cur.steps.begin() + 1, cur.steps.end() - 1);
      cur = std::move(next);
    }
    out.history.push_back(cur);
  }
}

CnMembership cn_membership(const WeightedQuiver& q) {
  require_valid(q);
  if (connected_components(q).size() != 1) throw Error("disconnected", "C_n(t) membership needs a connected quiver");
  const TriangleIndex idx(q);
  CnMembership out;
  auto fail = [&](int condition, std::string witness) {
    out.violated = condition;
    out.witness = std::move(witness);
    return out;
  };

  for (const auto& [arrow, ts] : idx.of_arrow) {
    if (ts.size() > 1) {
      return fail(1, "arrow " + std::to_string(arrow) + " lies in " + std::to_string(ts.size()) + " triangles");
    }
  }
  const auto chi = euler_characteristic(idx.quiver);
  if (chi != 0) return fail(2, "chi = " + std::to_string(chi));

  const auto twos = two_cycles(idx.quiver);
  if (!twos.empty()) {
    return fail(3, "oriented 2-cycle on arrows " + std::to_string(twos.front().first) + " and " +
                       std::to_string(twos.front().second));
  }
  const auto cycles = delta_free_cycles(idx.quiver);
  if (cycles.size() != 1) return fail(3, std::to_string(cycles.size()) + " Delta-free cycles");
  const WalkCycle& gamma = cycles.front();
  if (is_oriented(gamma)) return fail(3, "Delta-free cycle is oriented: " + describe_walk(gamma));
  const GroupElement weight = cycle_weight(idx.quiver, gamma);
  if (weight.is_trivial()) return fail(3, "Delta-free cycle has trivial weight: " + describe_walk(gamma));

  for (int v : idx.quiver.vertex_ids()) {
    const int deg = idx.degree(v);
    const std::size_t in = idx.triangles_at(v);
    const std::string at = "vertex " + std::to_string(v) + " has degree " + std::to_string(deg);
    if (deg > 4) return fail(4, at);
    if (deg == 3 && in != 1) return fail(4, at + " and lies in " + std::to_string(in) + " triangles");
    if (deg == 4 && in != 2) return fail(4, at + " and lies in " + std::to_string(in) + " triangles");
  }

  out.member = true;
  out.t = weight;
  out.cycle = gamma;
  return out;
}

Canonicalization canonicalize_to_cycle(const WeightedQuiver& q) {
  Canonicalization out{{}, split_bundles(q), identity(q.group())};
  const std::size_t n = q.vertices().size();
  for (std::size_t round = 0;; ++round) {
    const auto m = cn_membership(out.quiver);
    if (!m.member) {
      throw Error(round == 0 ? "not_member" : "invariant_breach",
                  "quiver is not in C_n(t): condition " + std::to_string(m.violated) + ", " + m.witness);
    }
    const WalkCycle& gamma = *m.cycle;
    if (round > 0 && !are_conjugate(*m.t, out.t) && !are_conjugate(invert(*m.t), out.t)) {
      throw Error("invariant_breach", "cycle weight changed during canonicalization");
    }
    out.t = *m.t;
    if (gamma.steps.size() >= n) return out;
    if (round >= n) throw Error("invariant_breach", "canonicalization did not terminate");

    const auto on_cycle = walk_vertices(out.quiver, gamma);
    std::set<int> cycle_arrows;
    for (const auto& s : gamma.steps) cycle_arrows.insert(s.arrow);
    std::optional<std::pair<int, int>> choice;  // (cycle arrow, opposite vertex)
    for (const auto& t : triangles(out.quiver)) {
      for (int k = 0; k < 3; ++k) {
        if (cycle_arrows.count(t.arrows[k]) == 0) continue;
        const int opposite = t.vertices[(k + 2) % 3];
        if (std::find(on_cycle.begin(), on_cycle.end(), opposite) != on_cycle.end()) continue;
        if (!choice || t.arrows[k] < choice->first) choice = std::make_pair(t.arrows[k], opposite);
      }
    }
    if (!choice) throw Error("invariant_breach", "no triangle meets the Delta-free cycle");
    out.quiver = mutate(out.quiver, choice->second).result;
    out.sequence.push_back(choice->second);
    const auto after = cn_membership(out.quiver);
    if (!after.member || after.cycle->steps.size() != gamma.steps.size() + 1) {
      throw Error("invariant_breach", "mutation at " + std::to_string(choice->second) +
                                          " did not lengthen the Delta-free cycle");
    }
  }
}

WeightedQuiver trivialize_weights(const WeightedQuiver& q) {
  WeightedQuiver out(q.group());
  for (const auto& v : q.vertices()) out.add_vertex(v.id, v.frozen);
  for (const auto& a : q.arrows()) out.add_arrow_with_id(a.id, a.src, a.dst, identity(q.group()), a.multiplicity);
  return out;
}

TameVerdict classify_tame(const WeightedQuiver& q) {
  require_valid(q);
  TameVerdict out;
  const auto eq = are_equivalent(q, trivialize_weights(q));
  if (eq.outcome == EquivalenceOutcome::equivalent) {
    out.kind = TameKind::gauge_trivial;
    out.witness = eq.witness;
    return out;
  }
  if (connected_components(q).size() != 1) {
    out.reason = "disconnected and not gauge-trivial";
    return out;
  }
  const auto m = cn_membership(q);
  if (m.member) {
    out.kind = TameKind::cn_member;
    out.t = m.t;
    out.cycle = m.cycle;
    return out;
  }
  out.reason = "not gauge-trivial; C_n(t) condition " + std::to_string(m.violated) + " fails: " + m.witness;
  return out;
}

}  // namespace wquiv
