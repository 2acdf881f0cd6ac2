#include "wquiv/equivalence.hpp"

#include <algorithm>
#include <deque>

#include "wquiv/error.hpp"

namespace wquiv {

namespace {

void require_shape_match(const WeightedQuiver& a, const WeightedQuiver& b) {
  auto fail = [](const std::string& why) { throw Error("shape_mismatch", "quivers differ in shape: " + why); };
  if (a.group() != b.group()) fail("group kinds " + a.group().describe() + " vs " + b.group().describe());
  if (!std::equal(a.vertices().begin(), a.vertices().end(), b.vertices().begin(), b.vertices().end())) {
    fail("vertex sets");
  }
  if (a.arrows().size() != b.arrows().size()) fail("arrow counts");
  for (std::size_t i = 0; i < a.arrows().size(); ++i) {
    const Arrow& x = a.arrows()[i];
    const Arrow& y = b.arrows()[i];
    if (x.id != y.id || x.src != y.src || x.dst != y.dst || x.multiplicity != y.multiplicity) {
      fail("arrow " + std::to_string(x.id));
    }
  }
}

// Tree path root -> v as walk steps, following parent arrows.
std::vector<WalkStep> tree_path(const WeightedQuiver& q, const std::map<int, int>& parent_arrow, int root, int v) {
  std::vector<WalkStep> path;
  while (v != root) {
    const Arrow& a = q.arrow(parent_arrow.at(v));
    const bool forward = a.dst == v;
    path.push_back({a.id, forward});
    v = forward ? a.src : a.dst;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::map<int, int> parents_from_tree(const WeightedQuiver& q, const std::vector<int>& tree_arrows, int root) {
  std::map<int, std::vector<int>> incident;
  for (int id : tree_arrows) {
    const Arrow& a = q.arrow(id);
    incident[a.src].push_back(id);
    incident[a.dst].push_back(id);
  }
  std::map<int, int> parent;
  std::deque<int> queue{root};
  std::map<int, bool> seen{{root, true}};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int id : incident[u]) {
      const Arrow& a = q.arrow(id);
      const int v = a.src == u ? a.dst : a.src;
      if (seen[v]) continue;
      seen[v] = true;
      parent[v] = id;
      queue.push_back(v);
    }
  }
  return parent;
}

}  // namespace

WeightedQuiver apply_gauge(const WeightedQuiver& q, const GaugeFunction& g) {
  WeightedQuiver out(q.group());
  for (const auto& v : q.vertices()) {
    if (g.find(v.id) == g.end()) {
      throw Error("missing_vertex", "gauge is not defined on vertex " + std::to_string(v.id), std::to_string(v.id));
    }
    out.add_vertex(v.id, v.frozen);
  }
  for (const auto& a : q.arrows()) {
    out.add_arrow_with_id(a.id, a.src, a.dst, invert(g.at(a.src)) * a.weight * g.at(a.dst), a.multiplicity);
  }
  return out;
}

GaugeFunction compose_gauges(const GaugeFunction& g, const GaugeFunction& h) {
  GaugeFunction out;
  for (const auto& [v, x] : g) out.emplace(v, x * h.at(v));
  return out;
}

GaugeFunction inverse_gauge(const GaugeFunction& g) {
  GaugeFunction out;
  for (const auto& [v, x] : g) out.emplace(v, invert(x));
  return out;
}

GaugeFunction identity_gauge(const WeightedQuiver& q) {
  GaugeFunction out;
  for (int v : q.vertex_ids()) out.emplace(v, identity(q.group()));
  return out;
}

TreeNormalization tree_normalize(const WeightedQuiver& q, int root) {
  if (!q.has_vertex(root)) throw Error("unknown_vertex", "no vertex " + std::to_string(root));
  // Incident arrows per vertex, ordered by (other endpoint, arrow id).
  std::map<int, std::vector<std::pair<int, int>>> incident;
  for (const auto& a : q.arrows()) {
    incident[a.src].push_back({a.dst, a.id});
    incident[a.dst].push_back({a.src, a.id});
  }
  for (auto& [v, list] : incident) std::sort(list.begin(), list.end());

  TreeNormalization out;
  out.gauge.emplace(root, identity(q.group()));
  std::deque<int> queue{root};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const auto& [v, id] : incident[u]) {
      if (out.gauge.count(v) != 0) continue;
      const Arrow& a = q.arrow(id);
      const GroupElement step = a.src == u ? a.weight : invert(a.weight);
      out.gauge.emplace(v, out.gauge.at(u) * step);
      out.tree_arrows.push_back(id);
      queue.push_back(v);
    }
  }
  if (out.gauge.size() != q.vertices().size()) {
    throw Error("disconnected", "tree normalization needs a connected quiver");
  }
  std::sort(out.tree_arrows.begin(), out.tree_arrows.end());
  out.normalized = apply_gauge(q, inverse_gauge(out.gauge));
  return out;
}

std::vector<int> walk_vertices(const WeightedQuiver& q, const WalkCycle& c) {
  std::vector<int> vertices{c.start};
  for (const auto& step : c.steps) {
    const Arrow* a = q.find_arrow(step.arrow);
    if (a == nullptr) throw Error("broken_walk", "walk uses unknown arrow " + std::to_string(step.arrow));
    const int from = step.forward ? a->src : a->dst;
    const int to = step.forward ? a->dst : a->src;
    if (from != vertices.back()) {
      throw Error("broken_walk", "walk breaks at arrow " + std::to_string(step.arrow) + ": expected to leave " +
                                     std::to_string(vertices.back()));
    }
    vertices.push_back(to);
  }
  if (vertices.back() != c.start) throw Error("broken_walk", "walk does not close up");
  return vertices;
}

GroupElement cycle_weight(const WeightedQuiver& q, const WalkCycle& c) {
  walk_vertices(q, c);
  GroupElement w = identity(q.group());
  for (const auto& step : c.steps) {
    const GroupElement& x = q.arrow(step.arrow).weight;
    w = w * (step.forward ? x : invert(x));
  }
  return w;
}

WalkCycle reverse_walk(const WalkCycle& c) {
  WalkCycle out{c.start, {}};
  for (auto it = c.steps.rbegin(); it != c.steps.rend(); ++it) out.steps.push_back({it->arrow, !it->forward});
  return out;
}

WalkCycle fundamental_cycle(const WeightedQuiver& q, const std::vector<int>& tree_arrows, int root, int arrow) {
  const auto parent = parents_from_tree(q, tree_arrows, root);
  const Arrow& a = q.arrow(arrow);
  WalkCycle c{root, tree_path(q, parent, root, a.src)};
  c.steps.push_back({arrow, true});
  const auto back = reverse_walk(WalkCycle{root, tree_path(q, parent, root, a.dst)});
  c.steps.insert(c.steps.end(), back.steps.begin(), back.steps.end());
  return c;
}

EquivalenceResult are_equivalent(const WeightedQuiver& a, const WeightedQuiver& b, int conjugacy_bound) {
  require_shape_match(a, b);
  EquivalenceResult result;
  GaugeFunction witness;
  bool undecided = false;

  for (const auto& component : connected_components(a)) {
    WeightedQuiver part_a(a.group());
    WeightedQuiver part_b(b.group());
    for (int v : component) {
      part_a.add_vertex(v, a.is_frozen(v));
      part_b.add_vertex(v, b.is_frozen(v));
    }
    for (std::size_t i = 0; i < a.arrows().size(); ++i) {
      const Arrow& x = a.arrows()[i];
      if (!std::binary_search(component.begin(), component.end(), x.src)) continue;
      const Arrow& y = b.arrows()[i];
      part_a.add_arrow_with_id(x.id, x.src, x.dst, x.weight, x.multiplicity);
      part_b.add_arrow_with_id(y.id, y.src, y.dst, y.weight, y.multiplicity);
    }
    const int root = component.front();
    const auto na = tree_normalize(part_a, root);
    const auto nb = tree_normalize(part_b, root);

    // Remaining freedom is a constant h with h^-1 u h = v on every non-tree arrow.
    std::vector<std::pair<GroupElement, GroupElement>> equations;
    std::vector<int> equation_arrows;
    for (const auto& x : na.normalized.arrows()) {
      if (std::binary_search(na.tree_arrows.begin(), na.tree_arrows.end(), x.id)) continue;
      const GroupElement& u = x.weight;
      const GroupElement& v = nb.normalized.arrow(x.id).weight;
      if (!are_conjugate(u, v)) {
        result.outcome = EquivalenceOutcome::not_equivalent;
        result.distinguishing_cycle = fundamental_cycle(part_a, na.tree_arrows, root, x.id);
        result.weight_a = cycle_weight(part_a, *result.distinguishing_cycle);
        result.weight_b = cycle_weight(part_b, *result.distinguishing_cycle);
        result.reason = a.group().is_abelian() ? "cycle weights differ" : "cycle weights are not conjugate";
        return result;
      }
      if (u.is_trivial()) continue;
      equations.emplace_back(u, v);
      equation_arrows.push_back(x.id);
    }

    std::optional<GroupElement> h;
    if (equations.empty()) {
      h = identity(a.group());
    } else {
      const GroupElement particular = *find_conjugator(equations.front().first, equations.front().second);
      const GroupElement z = primitive_root(equations.front().second);
      auto solves = [&](const GroupElement& candidate) {
        return std::all_of(equations.begin(), equations.end(), [&](const auto& eq) {
          return invert(candidate) * eq.first * candidate == eq.second;
        });
      };
      // Sharpen the search with the later equations. Writing w = p^-1 u p, the
      // admissible z^k lie in C(w) c0 where c0^-1 w c0 = v. If z commutes with
      // the root of w the condition is c0 in <z>, independent of k. Otherwise
      // at most one k works, and bounded cancellation between powers of
      // non-commuting elements gives |k| <= |c0| + 2(|z| + |r|) + 2.
      bool impossible = false;
      std::optional<std::size_t> exact_bound;
      if (!a.group().is_abelian()) {
        for (std::size_t i = 1; i < equations.size() && !impossible; ++i) {
          const GroupElement w = invert(particular) * equations[i].first * particular;
          const GroupElement c0 = *find_conjugator(w, equations[i].second);
          const GroupElement r = primitive_root(w);
          if (z * r == r * z) {
            if (!(z * c0 == c0 * z)) impossible = true;
            continue;
          }
          const std::size_t k = c0.payload().size() + 2 * (z.payload().size() + r.payload().size()) + 2;
          exact_bound = exact_bound ? std::min(*exact_bound, k) : k;
        }
      }
      if (impossible) {
        result.outcome = EquivalenceOutcome::not_equivalent;
        result.reason = "cycle weights admit no common conjugator";
        return result;
      }
      int bound = a.group().is_abelian() ? 0 : conjugacy_bound;
      const bool decisive = exact_bound && *exact_bound <= static_cast<std::size_t>(conjugacy_bound);
      if (decisive) bound = static_cast<int>(*exact_bound);
      for (int step = 0; step <= bound && !h; ++step) {
        for (int sign : {1, -1}) {
          if (step == 0 && sign < 0) continue;
          GroupElement candidate = particular * power(z, sign * step);
          if (solves(candidate)) {
            h = std::move(candidate);
            break;
          }
        }
      }
      if (!h && decisive) {
        result.outcome = EquivalenceOutcome::not_equivalent;
        result.reason = "cycle weights admit no common conjugator";
        return result;
      }
      if (!h && a.group().is_abelian()) {
        // Abelian with all pairs conjugate means equal; unreachable.
        throw Error("internal", "abelian equivalence check reached an inconsistent state");
      }
    }
    if (!h) {
      undecided = true;
      result.reason = "simultaneous conjugacy not resolved within |k| <= " + std::to_string(conjugacy_bound);
      continue;
    }
    for (int v : component) witness.emplace(v, invert(na.gauge.at(v)) * *h * nb.gauge.at(v));
  }

  if (undecided) {
    result.outcome = EquivalenceOutcome::undecided;
    return result;
  }
  if (!(apply_gauge(a, witness) == b)) throw Error("internal", "equivalence witness failed verification");
  result.outcome = EquivalenceOutcome::equivalent;
  result.witness = std::move(witness);
  return result;
}

GaugeFunction mutate_gauge(const GaugeFunction& g, int /*k*/) { return g; }

}  // namespace wquiv
