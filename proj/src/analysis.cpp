#include "wquiv/analysis.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "wquiv/error.hpp"

namespace wquiv {

namespace {

struct Adjacency {
  std::vector<int> ids;
  std::vector<std::vector<const Arrow*>> out;

  explicit Adjacency(const WeightedQuiver& q) : ids(q.vertex_ids()), out(ids.size()) {
    for (const auto& a : q.arrows()) out[index(a.src)].push_back(&a);
  }
  std::size_t index(int id) const {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  }
};

// Arrow ids of a directed path from `from` to `to` using only vertices with
// component[v] == comp; breadth-first, ties by arrow id.
std::vector<int> directed_path(const Adjacency& adj, const std::vector<int>& component, int comp, int from, int to) {
  std::vector<const Arrow*> via(adj.ids.size(), nullptr);
  std::vector<bool> seen(adj.ids.size(), false);
  std::deque<std::size_t> queue{adj.index(from)};
  seen[adj.index(from)] = true;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    if (adj.ids[u] == to) break;
    for (const Arrow* a : adj.out[u]) {
      const std::size_t v = adj.index(a->dst);
      if (component[v] != comp || seen[v]) continue;
      seen[v] = true;
      via[v] = a;
      queue.push_back(v);
    }
  }
  std::vector<int> path;
  for (std::size_t v = adj.index(to); adj.ids[v] != from; v = adj.index(via[v]->src)) {
    path.push_back(via[v]->id);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

GroupElement walk_weight(const WeightedQuiver& q, const std::vector<int>& arrows) {
  GroupElement w = identity(q.group());
  for (int id : arrows) w = w * q.arrow(id).weight;
  return w;
}

}  // namespace

std::vector<std::vector<int>> strongly_connected_components(const WeightedQuiver& q) {
  const Adjacency adj(q);
  const std::size_t n = adj.ids.size();
  std::vector<int> index(n, -1);
  std::vector<int> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<int>> components;
  int counter = 0;

  // Iterative Tarjan: each frame is (vertex, next outgoing arrow position).
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < adj.out[v].size()) {
        const std::size_t w = adj.index(adj.out[v][pos++]->dst);
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<int> comp;
        std::size_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(adj.ids[w]);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
      const std::size_t finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        const std::size_t parent = frames.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  std::sort(components.begin(), components.end());
  return components;
}

OrientedCycleCheck oriented_cycles_trivial(const WeightedQuiver& q) {
  const Adjacency adj(q);
  const auto sccs = strongly_connected_components(q);
  std::vector<int> component(adj.ids.size(), -1);
  for (std::size_t c = 0; c < sccs.size(); ++c) {
    for (int id : sccs[c]) component[adj.index(id)] = static_cast<int>(c);
  }

  for (std::size_t c = 0; c < sccs.size(); ++c) {
    if (sccs[c].size() < 2) continue;
    const int comp = static_cast<int>(c);
    const int base = sccs[c].front();
    // Path weights from the base vertex along a breadth-first tree.
    std::unordered_map<int, GroupElement> potential{{base, identity(q.group())}};
    std::deque<int> queue{base};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (const Arrow* a : adj.out[adj.index(u)]) {
        if (component[adj.index(a->dst)] != comp || potential.count(a->dst) != 0) continue;
        potential.emplace(a->dst, potential.at(u) * a->weight);
        queue.push_back(a->dst);
      }
    }
    for (int u : sccs[c]) {
      for (const Arrow* a : adj.out[adj.index(u)]) {
        if (component[adj.index(a->dst)] != comp) continue;
        if (potential.at(u) * a->weight == potential.at(a->dst)) continue;
        // Either p.a.r or q.r is a nontrivial closed walk, where p, q are
        // paths base -> src, base -> dst and r is a path dst -> base.
        const auto p = directed_path(adj, component, comp, base, a->src);
        const auto tail = directed_path(adj, component, comp, a->dst, base);
        std::vector<int> walk = p;
        walk.push_back(a->id);
        walk.insert(walk.end(), tail.begin(), tail.end());
        GroupElement w = walk_weight(q, walk);
        if (w.is_trivial()) {
          walk = directed_path(adj, component, comp, base, a->dst);
          walk.insert(walk.end(), tail.begin(), tail.end());
          w = walk_weight(q, walk);
        }
        return {false, ClosedWalk{std::move(walk), std::move(w)}};
      }
    }
  }
  return {true, std::nullopt};
}

ExploreStats explore_mutation_class(
    const WeightedQuiver& q, int depth,
    const std::function<bool(const WeightedQuiver&, std::span<const int>)>& visit,
    const std::function<bool(std::span<const int>, const std::string&)>& on_failure) {
  struct Node {
    WeightedQuiver quiver;
    std::vector<int> sequence;
  };
  ExploreStats stats;
  std::unordered_set<std::string> seen{canonical_key(q)};
  std::deque<Node> queue;
  stats.states = 1;
  if (!visit(q, {})) {
    stats.stopped = true;
    return stats;
  }
  queue.push_back({q, {}});
  const auto vertices = q.mutable_ids();
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    if (static_cast<int>(node.sequence.size()) >= depth) continue;
    for (int k : vertices) {
      if (!node.sequence.empty() && node.sequence.back() == k) continue;
      std::vector<int> sequence = node.sequence;
      sequence.push_back(k);
      WeightedQuiver next;
      try {
        next = merge_bundles(mutate(node.quiver, k).result);
      } catch (const Error& e) {
        if (on_failure && !on_failure(sequence, e.what())) {
          stats.stopped = true;
          return stats;
        }
        continue;
      }
      if (!seen.insert(canonical_key(next)).second) continue;
      ++stats.states;
      if (!visit(next, sequence)) {
        stats.stopped = true;
        return stats;
      }
      queue.push_back({std::move(next), std::move(sequence)});
    }
  }
  return stats;
}

NondegeneracyVerdict check_nondegenerate(const WeightedQuiver& q, int depth) {
  require_valid(q);
  if (const auto cycles = two_cycles(q); !cycles.empty()) {
    throw Error("two_cycle", "nondegeneracy search needs a quiver without oriented 2-cycles",
                "arrows " + std::to_string(cycles.front().first) + "," + std::to_string(cycles.front().second));
  }
  NondegeneracyVerdict verdict;
  verdict.depth = depth;
  const auto stats = explore_mutation_class(q, depth, [&](const WeightedQuiver& state, std::span<const int> seq) {
    const auto cycles = two_cycles(state);
    if (cycles.empty()) return true;
    verdict.counterexample = NondegeneracyCounterexample{{seq.begin(), seq.end()}, cycles.front(), state};
    return false;
  });
  verdict.states = stats.states;
  return verdict;
}

WeightedQuiver frame(const WeightedQuiver& q, const FrameOptions& options) {
  require_valid(q);
  if (!q.frozen_ids().empty()) {
    throw Error("already_framed", "quiver already has frozen vertices",
                "vertex " + std::to_string(q.frozen_ids().front()));
  }
  WeightedQuiver out = q;
  const int offset = q.max_vertex_id();
  for (int v : q.vertex_ids()) out.add_vertex(v + offset, true);
  for (int v : q.vertex_ids()) {
    GroupElement w = identity(q.group());
    if (auto it = options.weights.find(v); it != options.weights.end()) w = it->second;
    if (w.kind() != q.group()) throw Error("kind_mismatch", "frame weight for vertex " + std::to_string(v) + " has the wrong group kind");
    out.add_arrow(v + offset, v, std::move(w));
  }
  return out;
}

CVectorMatrix c_vectors(const WeightedQuiver& q) {
  CVectorMatrix m;
  m.rows = q.mutable_ids();
  m.cols = q.frozen_ids();
  m.entries.assign(m.rows.size(), std::vector<Count>(m.cols.size()));
  auto position = [](const std::vector<int>& ids, int id) -> std::ptrdiff_t {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    return (it != ids.end() && *it == id) ? it - ids.begin() : -1;
  };
  for (const auto& a : q.arrows()) {
    const bool src_frozen = q.is_frozen(a.src);
    const bool dst_frozen = q.is_frozen(a.dst);
    if (src_frozen && dst_frozen) {
      throw Error("frozen_arrow",
                  "arrow " + std::to_string(a.id) + " joins frozen vertices " + std::to_string(a.src) + " and " +
                      std::to_string(a.dst),
                  std::to_string(a.id));
    }
    if (!src_frozen && dst_frozen) {
      m.entries[static_cast<std::size_t>(position(m.rows, a.src))][static_cast<std::size_t>(position(m.cols, a.dst))] +=
          a.multiplicity;
    } else if (src_frozen && !dst_frozen) {
      m.entries[static_cast<std::size_t>(position(m.rows, a.dst))][static_cast<std::size_t>(position(m.cols, a.src))] -=
          a.multiplicity;
    }
  }
  return m;
}

SignCoherence is_sign_coherent(const CVectorMatrix& m) {
  SignCoherence out;
  for (std::size_t r = 0; r < m.entries.size(); ++r) {
    bool positive = false;
    bool negative = false;
    for (const auto& x : m.entries[r]) {
      positive = positive || x > 0;
      negative = negative || x < 0;
    }
    const bool ok = !(positive && negative);
    out.rows.push_back(ok);
    if (!ok && out.coherent) {
      out.coherent = false;
      out.offending_row = m.rows[r];
    }
  }
  return out;
}

WeightedQuiver attach_probe_arrow(const WeightedQuiver& q, int i, int j, const GroupElement& w) {
  if (i == j) throw Error("loop", "probe arrow would be a loop at " + std::to_string(i));
  if (!q.has_vertex(i) || !q.has_vertex(j)) throw Error("unknown_vertex", "probe endpoints must be vertices");
  if (w.kind() != q.group()) throw Error("kind_mismatch", "probe weight has the wrong group kind");
  for (const auto& a : q.arrows()) {
    if (a.src == i && a.dst == j && (a.weight * w).is_trivial()) {
      throw Error("trivial_two_cycle",
                  "probe " + std::to_string(j) + "->" + std::to_string(i) + " forms a trivial 2-cycle with arrow " +
                      std::to_string(a.id),
                  std::to_string(a.id));
    }
  }
  WeightedQuiver out = q;
  out.add_arrow(j, i, w);
  return out;
}

SignCoherenceCase sign_coherence_case(const WeightedQuiver& unframed, int max_length, std::string name) {
  SignCoherenceCase result;
  result.name = std::move(name);
  result.max_length = max_length;
  const WeightedQuiver framed = frame(unframed);
  auto note_failure = [&](std::span<const int> seq) {
    if (!result.first_failure) result.first_failure = std::vector<int>(seq.begin(), seq.end());
  };
  const auto stats = explore_mutation_class(
      framed, max_length,
      [&](const WeightedQuiver& state, std::span<const int> seq) {
        bool frozen_arrow = false;
        for (const auto& a : state.arrows()) {
          if (state.is_frozen(a.src) && state.is_frozen(a.dst)) {
            frozen_arrow = true;
            break;
          }
        }
        if (frozen_arrow) {
          ++result.frozen_arrow_states;
          note_failure(seq);
          return true;
        }
        if (!is_sign_coherent(c_vectors(state)).coherent) {
          ++result.incoherent_states;
          note_failure(seq);
        }
        return true;
      },
      [&](std::span<const int> seq, const std::string& what) {
        if (result.detail.empty()) result.detail = what;
        note_failure(seq);
        return true;
      });
  result.states = stats.states;
  return result;
}

}  // namespace wquiv
