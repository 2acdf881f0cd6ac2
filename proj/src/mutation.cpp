#include "wquiv/mutation.hpp"

#include <algorithm>
#include <numeric>

#include "wquiv/error.hpp"

namespace wquiv {

namespace {

std::string describe_two_cycle(const WeightedQuiver& q, const TwoCycle& c) {
  const Arrow& a = q.arrow(c.first);
  return "arrows " + std::to_string(c.first) + "," + std::to_string(c.second) + " form a 2-cycle between " +
         std::to_string(a.src) + " and " + std::to_string(a.dst) + " with weight '" +
         format_element(a.weight * q.arrow(c.second).weight) + "'";
}

}  // namespace

int PremutationResult::composite_id(int a, int b) const {
  for (const auto& [id, origin] : provenance) {
    if (origin.kind == OriginKind::composite && origin.first == a && origin.second == b) return id;
  }
  throw Error("unknown_arrow", "no composite of arrows " + std::to_string(a) + " and " + std::to_string(b));
}

void check_mutable_at(const WeightedQuiver& q, int k, MutationOptions options) {
  if (!q.has_vertex(k)) throw Error("unknown_vertex", "no vertex " + std::to_string(k));
  if (q.is_frozen(k)) {
    throw Error("frozen_vertex", "cannot mutate at frozen vertex " + std::to_string(k), std::to_string(k));
  }
  const auto cycles = options.lenient ? two_cycles_at(q, k) : two_cycles(q);
  if (!cycles.empty()) {
    const std::string witness = describe_two_cycle(q, cycles.front());
    throw Error("two_cycle",
                "mutation at " + std::to_string(k) + " is undefined while an oriented 2-cycle survives: " + witness,
                witness);
  }
}

PremutationResult premutate(const WeightedQuiver& q, int k, MutationOptions options) {
  require_valid(q);
  check_mutable_at(q, k, options);

  PremutationResult out{WeightedQuiver(q.group()), {}};
  WeightedQuiver& result = out.quiver;
  for (const auto& v : q.vertices()) result.add_vertex(v.id, v.frozen);

  std::vector<const Arrow*> incoming;
  std::vector<const Arrow*> outgoing;
  for (const auto& a : q.arrows()) {
    if (a.dst == k) {
      incoming.push_back(&a);
      result.add_arrow_with_id(a.id, k, a.src, invert(a.weight), a.multiplicity);
      out.provenance[a.id] = {OriginKind::reversed, a.id, 0};
    } else if (a.src == k) {
      outgoing.push_back(&a);
      result.add_arrow_with_id(a.id, a.dst, k, invert(a.weight), a.multiplicity);
      out.provenance[a.id] = {OriginKind::reversed, a.id, 0};
    } else {
      result.add_arrow_with_id(a.id, a.src, a.dst, a.weight, a.multiplicity);
    }
  }
  for (const Arrow* a : incoming) {
    for (const Arrow* b : outgoing) {
      const int id = result.add_arrow(a->src, b->dst, a->weight * b->weight, a->multiplicity * b->multiplicity);
      out.provenance[id] = {OriginKind::composite, a->id, b->id};
    }
  }
  return out;
}

ReductionResult weight_reduce(const WeightedQuiver& q) {
  const auto arrows = q.arrows();
  std::vector<std::size_t> order(arrows.size());
  std::iota(order.begin(), order.end(), 0);
  auto key_less = [&](std::size_t x, std::size_t y) {
    const Arrow& a = arrows[x];
    const Arrow& b = arrows[y];
    if (a.src != b.src) return a.src < b.src;
    if (a.dst != b.dst) return a.dst < b.dst;
    if (auto c = a.weight <=> b.weight; c != 0) return c < 0;
    return a.id < b.id;
  };
  std::sort(order.begin(), order.end(), key_less);

  // Runs of equal (src, dst, weight), each listing arrow indices by ascending id.
  struct Run {
    std::size_t begin;
    std::size_t end;
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    const Arrow& a = arrows[order[i]];
    while (j < order.size() && arrows[order[j]].src == a.src && arrows[order[j]].dst == a.dst &&
           arrows[order[j]].weight == a.weight) {
      ++j;
    }
    runs.push_back({i, j});
    i = j;
  }

  std::vector<Count> remaining(arrows.size());
  for (std::size_t i = 0; i < arrows.size(); ++i) remaining[i] = arrows[i].multiplicity;

  ReductionResult out{WeightedQuiver(q.group()), {}};
  for (const Run& run : runs) {
    const Arrow& head = arrows[order[run.begin]];
    if (head.src >= head.dst) continue;
    const GroupElement partner_weight = invert(head.weight);
    // Locate the partner run j -> i with weight g^-1.
    auto it = std::lower_bound(runs.begin(), runs.end(), 0, [&](const Run& r, int) {
      const Arrow& x = arrows[order[r.begin]];
      if (x.src != head.dst) return x.src < head.dst;
      if (x.dst != head.src) return x.dst < head.src;
      return (x.weight <=> partner_weight) < 0;
    });
    if (it == runs.end()) continue;
    const Arrow& partner = arrows[order[it->begin]];
    if (partner.src != head.dst || partner.dst != head.src || partner.weight != partner_weight) continue;

    std::size_t x = run.begin;
    std::size_t y = it->begin;
    while (x < run.end && y < it->end) {
      Count& rx = remaining[order[x]];
      Count& ry = remaining[order[y]];
      const Count c = rx < ry ? rx : ry;
      out.cancelled.push_back({arrows[order[x]].id, arrows[order[y]].id, c});
      rx -= c;
      ry -= c;
      if (rx == 0) ++x;
      if (ry == 0) ++y;
    }
  }

  for (const auto& v : q.vertices()) out.quiver.add_vertex(v.id, v.frozen);
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    if (remaining[i] > 0) {
      out.quiver.add_arrow_with_id(arrows[i].id, arrows[i].src, arrows[i].dst, arrows[i].weight, remaining[i]);
    }
  }
  std::sort(out.cancelled.begin(), out.cancelled.end(),
            [](const CancelledPair& a, const CancelledPair& b) { return std::tie(a.first, a.second) < std::tie(b.first, b.second); });
  return out;
}

MutationRecord mutate(const WeightedQuiver& q, int k, MutationOptions options) {
  auto reduced = weight_reduce(premutate(q, k, options).quiver);
  return MutationRecord{k, std::move(reduced.cancelled), std::move(reduced.quiver)};
}

SequenceResult mutate_sequence(const WeightedQuiver& q, std::span<const int> ks, MutationOptions options) {
  SequenceResult out;
  out.records.reserve(ks.size());
  const WeightedQuiver* current = &q;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    try {
      out.records.push_back(mutate(*current, ks[i], options));
    } catch (const Error& e) {
      out.failure = SequenceFailure{i, e.code(), e.what()};
      break;
    }
    current = &out.records.back().result;
  }
  return out;
}

}  // namespace wquiv
