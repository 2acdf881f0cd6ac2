#include "generators.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace gen {

using wquiv::GroupElement;
using wquiv::GroupKind;
using wquiv::GroupTag;
using wquiv::WeightedQuiver;

std::vector<GroupKind> kinds() {
  return {GroupKind::trivial(), GroupKind::cyclic(6), GroupKind::free_abelian(2), GroupKind::free(2)};
}

GroupKind kind_for_case(std::size_t i) {
  static const auto ks = kinds();
  return ks[i % ks.size()];
}

GroupElement element(Source& s, const GroupKind& kind, int max_len) {
  switch (kind.tag()) {
    case GroupTag::trivial:
      return wquiv::identity(kind);
    case GroupTag::cyclic:
      return GroupElement::from_residue(kind, s.range(0, static_cast<int>(kind.modulus()) - 1));
    case GroupTag::free_abelian: {
      std::vector<std::int64_t> e(static_cast<std::size_t>(kind.rank()));
      for (auto& x : e) x = s.range(-max_len, max_len);
      return GroupElement::from_exponents(kind, e);
    }
    case GroupTag::free: {
      std::vector<std::int64_t> letters(static_cast<std::size_t>(s.range(0, max_len)));
      for (auto& x : letters) {
        x = s.range(1, std::max(1, kind.rank()));
        if (s.chance(0.5)) x = -x;
      }
      return GroupElement::from_word(kind, letters);
    }
  }
  return wquiv::identity(kind);
}

WeightedQuiver quiver(Source& s, const GroupKind& kind, const ShapeOptions& o) {
  WeightedQuiver q(kind);
  int n = s.range(o.min_vertices, o.max_vertices);
  for (int v = 1; v <= n; ++v) q.add_vertex(v);
  auto w = [&] { return o.random_weights ? element(s, kind) : wquiv::identity(kind); };
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (!s.chance(o.density)) continue;
      int m = s.range(1, o.max_parallel);
      if (o.allow_two_cycles) {
        for (int c = 0; c < m; ++c) {
          if (s.chance(0.5)) q.add_arrow(i, j, w());
          else q.add_arrow(j, i, w());
        }
      } else {
        bool forward = s.chance(0.5);
        for (int c = 0; c < m; ++c) q.add_arrow(forward ? i : j, forward ? j : i, w());
      }
    }
  }
  return q;
}

wquiv::GaugeFunction gauge(Source& s, const WeightedQuiver& q, int max_len) {
  wquiv::GaugeFunction g;
  for (int v : q.vertex_ids()) g[v] = element(s, q.group(), max_len);
  return g;
}

WeightedQuiver tree(Source& s, const GroupKind& kind, int n) {
  WeightedQuiver q(kind);
  for (int v = 1; v <= n; ++v) q.add_vertex(v);
  for (int v = 2; v <= n; ++v) {
    int parent = s.range(1, v - 1);
    if (s.chance(0.5)) q.add_arrow(parent, v, element(s, kind));
    else q.add_arrow(v, parent, element(s, kind));
  }
  return q;
}

std::vector<wquiv::Word> trivial_cycles(const WeightedQuiver& q, std::size_t lo, std::size_t hi) {
  std::vector<wquiv::Word> out;
  std::vector<wquiv::Arrow> arrows(q.arrows().begin(), q.arrows().end());
  wquiv::Word path;
  std::function<void(int, int, const GroupElement&)> extend = [&](int first_src, int at, const GroupElement& w) {
    if (path.size() >= lo && at == first_src && w.is_trivial()) out.push_back(path);
    if (path.size() == hi) return;
    for (const auto& a : arrows) {
      if (a.src != at || a.id < path.front()) continue;
      path.push_back(a.id);
      extend(first_src, a.dst, w * a.weight);
      path.pop_back();
    }
  };
  for (const auto& a : arrows) {
    if (a.src == a.dst) continue;
    path = {a.id};
    extend(a.src, a.dst, a.weight);
  }
  // Drop rotations that start at a repeated smallest arrow (periodic words
  // or rotations equal as cyclic words).
  std::vector<wquiv::Word> unique;
  for (const auto& w : out) {
    bool dup = false;
    for (std::size_t r = 1; r < w.size() && !dup; ++r) {
      wquiv::Word rot(w.begin() + static_cast<long>(r), w.end());
      rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(r));
      dup = rot < w;
    }
    if (!dup && std::find(unique.begin(), unique.end(), w) == unique.end()) unique.push_back(w);
  }
  return unique;
}

wquiv::Series potential(Source& s, const WeightedQuiver& q, std::size_t lo, std::size_t hi, double keep) {
  wquiv::Series out;
  for (const auto& w : trivial_cycles(q, lo, hi)) {
    if (!s.chance(keep)) continue;
    int num = s.range(1, 3) * (s.chance(0.5) ? 1 : -1);
    int den = s.range(1, 2);
    out.add(w, wquiv::Rational(num, den));
  }
  return out;
}

}  // namespace gen
