#include "wquiv/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "wquiv/analysis.hpp"
#include "wquiv/error.hpp"
#include "wquiv/mutation.hpp"

namespace wquiv {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error("internal", "Rng::below(0)");
  // Rejection sampling on the largest multiple of n.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = 0;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

GroupElement random_element(Rng& rng, const GroupKind& kind, int max_length) {
  switch (kind.tag()) {
    case GroupTag::trivial:
      return identity(kind);
    case GroupTag::cyclic:
      return GroupElement::from_residue(kind, static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(kind.modulus()))));
    case GroupTag::free_abelian: {
      std::vector<std::int64_t> e(static_cast<std::size_t>(kind.rank()));
      for (auto& x : e) x = rng.between(-max_length + 1, max_length - 1);
      return GroupElement::from_exponents(kind, std::move(e));
    }
    case GroupTag::free: {
      if (kind.rank() == 0) return identity(kind);
      std::vector<std::int64_t> word(static_cast<std::size_t>(rng.between(0, max_length)));
      for (auto& x : word) {
        x = rng.between(1, kind.rank());
        if (rng.coin()) x = -x;
      }
      return GroupElement::from_word(kind, word);
    }
  }
  return identity(kind);
}

GaugeFunction random_gauge(Rng& rng, const WeightedQuiver& q, int max_length) {
  GaugeFunction g;
  for (int v : q.vertex_ids()) g.emplace(v, random_element(rng, q.group(), max_length));
  return g;
}

WeightedQuiver random_shape(Rng& rng, int n, int max_parallel, const GroupKind& kind) {
  WeightedQuiver q(kind);
  for (int v = 1; v <= n; ++v) q.add_vertex(v);
  const auto states = static_cast<std::uint64_t>(2 * max_parallel + 1);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const auto s = static_cast<int>(rng.below(states));
      if (s == 0) continue;
      const bool forward = s <= max_parallel;
      const int count = forward ? s : s - max_parallel;
      for (int c = 0; c < count; ++c) q.add_arrow(forward ? i : j, forward ? j : i, identity(kind));
    }
  }
  return q;
}

WeightedQuiver unoriented_cycle(Rng& rng, int n, const GroupElement& t) {
  if (n < 2) throw Error("unsatisfiable", "a cycle needs at least two vertices");
  const GroupKind kind = t.kind();
  std::vector<bool> aligned(static_cast<std::size_t>(n));
  do {
    for (std::size_t i = 0; i < aligned.size(); ++i) aligned[i] = rng.coin();
  } while (std::all_of(aligned.begin(), aligned.end(), [](bool b) { return b; }) ||
           std::none_of(aligned.begin(), aligned.end(), [](bool b) { return b; }));
  const auto weighted = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n)));
  WeightedQuiver q(kind);
  for (int v = 1; v <= n; ++v) q.add_vertex(v);
  for (int i = 1; i <= n; ++i) {
    const int a = i;
    const int b = i == n ? 1 : i + 1;
    const auto idx = static_cast<std::size_t>(i - 1);
    const GroupElement w = idx == weighted ? t : identity(kind);
    if (aligned[idx]) {
      q.add_arrow(a, b, w);
    } else {
      q.add_arrow(b, a, w);
    }
  }
  return q;
}

WeightPolicy parse_policy(std::string_view name) {
  if (name == "trivial") return WeightPolicy::trivial;
  if (name == "gauge") return WeightPolicy::gauge;
  if (name == "oriented-cycle-trivial") return WeightPolicy::oriented_cycle_trivial;
  if (name == "cn-reverse") return WeightPolicy::cn_reverse;
  if (name == "free-random") return WeightPolicy::free_random;
  if (name == "catalog") return WeightPolicy::catalog;
  throw Error("parse", "unknown weight policy '" + std::string(name) + "'");
}

std::string policy_name(WeightPolicy p) {
  switch (p) {
    case WeightPolicy::trivial: return "trivial";
    case WeightPolicy::gauge: return "gauge";
    case WeightPolicy::oriented_cycle_trivial: return "oriented-cycle-trivial";
    case WeightPolicy::cn_reverse: return "cn-reverse";
    case WeightPolicy::free_random: return "free-random";
    case WeightPolicy::catalog: return "catalog";
  }
  return "?";
}

namespace {

std::string entry_name(WeightPolicy p, std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04zu", index);
  return policy_name(p) + "-" + buf;
}

WeightedQuiver with_weights(const WeightedQuiver& shape, const std::function<GroupElement(const Arrow&)>& weight) {
  WeightedQuiver q(shape.group());
  for (const auto& v : shape.vertices()) q.add_vertex(v.id, v.frozen);
  for (const auto& a : shape.arrows()) q.add_arrow_with_id(a.id, a.src, a.dst, weight(a), a.multiplicity);
  return q;
}

CorpusEntry oriented_cycle_trivial_member(Rng& rng, const CorpusSpec& spec, std::size_t index) {
  const WeightedQuiver shape = random_shape(rng, spec.n, spec.max_parallel, spec.group);
  std::map<int, std::size_t> component;
  const auto sccs = strongly_connected_components(shape);
  for (std::size_t c = 0; c < sccs.size(); ++c) {
    for (int v : sccs[c]) component[v] = c;
  }
  const GaugeFunction h = random_gauge(rng, shape);
  auto q = with_weights(shape, [&](const Arrow& a) {
    if (component.at(a.src) == component.at(a.dst)) return invert(h.at(a.src)) * h.at(a.dst);
    return random_element(rng, spec.group);
  });
  return {entry_name(spec.policy, index), std::move(q), {}};
}

CorpusEntry cn_member(Rng& rng, const CorpusSpec& spec, std::size_t index) {
  const GroupElement t = GroupElement::generator(spec.group, 1);
  WeightedQuiver q = unoriented_cycle(rng, spec.n, t);
  q = apply_gauge(q, random_gauge(rng, q, 1));
  const int max_steps = std::max(0, spec.n - 3);
  const int steps = spec.reverse_steps ? *spec.reverse_steps : static_cast<int>(rng.between(0, max_steps));
  CorpusEntry e{entry_name(spec.policy, index), q, {}};
  int previous = 0;
  for (int s = 0; s < steps; ++s) {
    int k = 0;
    do {
      k = static_cast<int>(rng.between(1, spec.n));
    } while (k == previous && spec.n > 1);
    e.quiver = mutate(e.quiver, k).result;
    e.sequence.push_back(k);
    previous = k;
  }
  return e;
}

}  // namespace

std::vector<CorpusEntry> generate_corpus(const CorpusSpec& spec) {
  if (spec.n < 1) throw Error("unsatisfiable", "corpus quivers need at least one vertex");
  if (spec.max_parallel < 0) throw Error("unsatisfiable", "max_parallel must be nonnegative");
  std::vector<CorpusEntry> out;
  if (spec.policy == WeightPolicy::catalog) {
    const auto catalog = small_quiver_catalog(spec.n, spec.max_parallel, spec.group);
    for (std::size_t i = 0; i < catalog.size(); ++i) out.push_back({entry_name(spec.policy, i), catalog[i], {}});
    return out;
  }
  if (spec.policy == WeightPolicy::cn_reverse) {
    if (spec.group.is_degenerate()) {
      throw Error("unsatisfiable", "C_n(t) needs a nontrivial t; group " + spec.group.describe() + " has none");
    }
    if (spec.n < 2) throw Error("unsatisfiable", "C_n(t) needs n >= 2");
  }
  Rng rng(spec.seed);
  for (std::size_t i = 0; i < spec.count; ++i) {
    switch (spec.policy) {
      case WeightPolicy::trivial:
        out.push_back({entry_name(spec.policy, i), random_shape(rng, spec.n, spec.max_parallel, spec.group), {}});
        break;
      case WeightPolicy::gauge: {
        const auto shape = random_shape(rng, spec.n, spec.max_parallel, spec.group);
        out.push_back({entry_name(spec.policy, i), apply_gauge(shape, random_gauge(rng, shape)), {}});
        break;
      }
      case WeightPolicy::oriented_cycle_trivial:
        out.push_back(oriented_cycle_trivial_member(rng, spec, i));
        break;
      case WeightPolicy::cn_reverse:
        out.push_back(cn_member(rng, spec, i));
        break;
      case WeightPolicy::free_random: {
        const auto shape = random_shape(rng, spec.n, spec.max_parallel, spec.group);
        out.push_back({entry_name(spec.policy, i),
                       with_weights(shape, [&](const Arrow&) { return random_element(rng, spec.group); }),
                       {}});
        break;
      }
      case WeightPolicy::catalog:
        break;
    }
  }
  return out;
}

std::vector<WeightedQuiver> small_quiver_catalog(int max_vertices, int max_parallel, const GroupKind& kind) {
  std::vector<WeightedQuiver> out;
  const int base = 2 * max_parallel + 1;
  for (int n = 1; n <= max_vertices; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    // b[i][j] = #(i -> j) - #(j -> i); encode the upper triangle in base 2m+1.
    auto encode = [&](const std::vector<std::vector<int>>& b) {
      std::uint64_t code = 0;
      for (const auto& [i, j] : pairs) {
        code = code * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(b[i][j] + max_parallel);
      }
      return code;
    };
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < pairs.size(); ++k) total *= static_cast<std::uint64_t>(base);
    std::set<std::uint64_t> seen;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<std::vector<int>> b(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
      std::uint64_t rest = code;
      for (std::size_t k = pairs.size(); k-- > 0;) {
        const int x = static_cast<int>(rest % static_cast<std::uint64_t>(base)) - max_parallel;
        rest /= static_cast<std::uint64_t>(base);
        b[pairs[k].first][pairs[k].second] = x;
        b[pairs[k].second][pairs[k].first] = -x;
      }
      std::uint64_t best = code;
      for (const auto& perm : perms) {
        std::vector<std::vector<int>> pb(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) pb[perm[i]][perm[j]] = b[i][j];
        }
        best = std::min(best, encode(pb));
      }
      if (best != code || !seen.insert(code).second) continue;
      WeightedQuiver q(kind);
      for (int v = 1; v <= n; ++v) q.add_vertex(v);
      for (const auto& [i, j] : pairs) {
        const int x = b[i][j];
        for (int c = 0; c < std::abs(x); ++c) {
          q.add_arrow(x > 0 ? i + 1 : j + 1, x > 0 ? j + 1 : i + 1, identity(kind));
        }
      }
      out.push_back(std::move(q));
    }
  }
  return out;
}

}  // namespace wquiv
