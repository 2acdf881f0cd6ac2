#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wquiv/equivalence.hpp"
#include "wquiv/quiver.hpp"

namespace wquiv {

// All functions here treat a bundle of multiplicity m as m distinct edges and
// work on split_bundles(q); arrow ids in results refer to that split quiver.
// For quivers with unit multiplicities this is q itself.

// An oriented 3-cycle of trivial weight: arrows[0]: vertices[0] -> vertices[1],
// arrows[1]: vertices[1] -> vertices[2], arrows[2]: vertices[2] -> vertices[0].
// arrows[0] is the smallest of the three ids.
struct Triangle {
  std::array<int, 3> arrows{};
  std::array<int, 3> vertices{};

  friend bool operator==(const Triangle&, const Triangle&) = default;
};

std::vector<Triangle> triangles(const WeightedQuiver& q);
std::int64_t euler_characteristic(const WeightedQuiver& q);

// Simple cycles of the underlying graph through at most one edge of each
// triangle, one per {gamma, gamma^-1} pair. Each starts at its smallest vertex
// and runs toward the smaller of its two neighbours on the cycle (ties between
// parallel edges broken by the smaller arrow id).
std::vector<WalkCycle> delta_free_cycles(const WeightedQuiver& q);

// The same representative choice, applied to any simple cycle.
WalkCycle canonical_cycle(const WeightedQuiver& q, const WalkCycle& c);

// True when all steps of the walk follow the arrows in one direction.
bool is_oriented(const WalkCycle& c);

struct CycleReduction {
  WalkCycle cycle;
  bool triangle = false;
  // Every intermediate cycle, starting with the input.
  std::vector<WalkCycle> history;
};

// Repeatedly replaces two consecutive edges lying in one triangle by the third
// edge, leftmost pair first, until the cycle is a triangle or Delta-free. A
// pair straddling the basepoint is only used when no other pair reduces; it
// removes the basepoint, so the new cycle starts at the preceding vertex and
// its weight changes by conjugation.
CycleReduction reduce_cycle(const WeightedQuiver& q, const WalkCycle& c);

struct CnMembership {
  bool member = false;
  // Member: the weight of the Delta-free cycle read from its start vertex.
  std::optional<GroupElement> t;
  std::optional<WalkCycle> cycle;
  // Non-member: the first violated condition (1-4) and a description.
  int violated = 0;
  std::string witness;
};

CnMembership cn_membership(const WeightedQuiver& q);

struct Canonicalization {
  std::vector<int> sequence;
  WeightedQuiver quiver;
  GroupElement t;
};

// Mutates a C_n(t) member to an unoriented n-cycle. Each step picks the
// triangle with an edge on the Delta-free cycle (and its third vertex off it)
// whose cycle edge has the smallest id, and mutates at the third vertex.
Canonicalization canonicalize_to_cycle(const WeightedQuiver& q);

enum class TameKind { gauge_trivial, cn_member, unknown };

struct TameVerdict {
  TameKind kind = TameKind::unknown;
  // For gauge_trivial: apply_gauge(q, *witness) has only trivial weights.
  std::optional<GaugeFunction> witness;
  std::optional<GroupElement> t;
  std::optional<WalkCycle> cycle;
  std::string reason;
};

TameVerdict classify_tame(const WeightedQuiver& q);

// The quiver with every weight replaced by the identity.
WeightedQuiver trivialize_weights(const WeightedQuiver& q);

}  // namespace wquiv
