#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wquiv/quiver.hpp"

namespace wquiv {

// A vertex function g: Q0 -> G. Applying it sends wt(a) for a: i -> j to
// g(i)^-1 wt(a) g(j).
using GaugeFunction = std::map<int, GroupElement>;

struct WalkStep {
  int arrow = 0;
  bool forward = true;

  friend bool operator==(const WalkStep&, const WalkStep&) = default;
};

// A closed walk in the underlying graph, arrows traversed in either direction.
struct WalkCycle {
  int start = 0;
  std::vector<WalkStep> steps;

  friend bool operator==(const WalkCycle&, const WalkCycle&) = default;
};

WeightedQuiver apply_gauge(const WeightedQuiver& q, const GaugeFunction& g);
// i -> g(i) h(i); applying it equals applying g then h.
GaugeFunction compose_gauges(const GaugeFunction& g, const GaugeFunction& h);
GaugeFunction inverse_gauge(const GaugeFunction& g);
GaugeFunction identity_gauge(const WeightedQuiver& q);

struct TreeNormalization {
  // g(i) is the weight of the tree path root -> i, so that
  // q == apply_gauge(normalized, g) and normalized == apply_gauge(q, g^-1).
  GaugeFunction gauge;
  WeightedQuiver normalized;
  std::vector<int> tree_arrows;
};

// Breadth-first spanning tree from `root`, neighbours in ascending vertex id
// (parallel arrows by ascending arrow id). Requires a connected quiver.
TreeNormalization tree_normalize(const WeightedQuiver& q, int root);

// Vertices visited by the walk, first == last. Throws on a broken walk.
std::vector<int> walk_vertices(const WeightedQuiver& q, const WalkCycle& c);
// Ordered product of wt(a) (forward) and wt(a)^-1 (backward) from c.start.
GroupElement cycle_weight(const WeightedQuiver& q, const WalkCycle& c);
WalkCycle reverse_walk(const WalkCycle& c);

// Cycle through root formed by a non-tree arrow and the tree paths to its ends.
WalkCycle fundamental_cycle(const WeightedQuiver& q, const std::vector<int>& tree_arrows, int root, int arrow);

enum class EquivalenceOutcome { equivalent, not_equivalent, undecided };

struct EquivalenceResult {
  EquivalenceOutcome outcome = EquivalenceOutcome::undecided;
  std::optional<GaugeFunction> witness;
  // For not_equivalent: a cycle whose weights in the two systems are not
  // conjugate (equal, for abelian kinds).
  std::optional<WalkCycle> distinguishing_cycle;
  std::optional<GroupElement> weight_a;
  std::optional<GroupElement> weight_b;
  std::string reason;
};

// Decides whether two weight systems on the same quiver shape (same vertices,
// same arrow ids with the same endpoints and multiplicities) are related by a
// gauge. Free groups need simultaneous conjugacy; the centralizer exponent is
// searched within |k| <= conjugacy_bound and undecided is reported beyond it.
// Non-equivalence is still reported when a later equation pins the exponent
// to a range inside the bound, or rules out the whole coset.
// For non-equivalence from simultaneous conjugacy no distinguishing cycle is set.
EquivalenceResult are_equivalent(const WeightedQuiver& a, const WeightedQuiver& b, int conjugacy_bound = 64);

// Mutation does not change the witnessing gauge.
GaugeFunction mutate_gauge(const GaugeFunction& g, int k);

}  // namespace wquiv
