#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wquiv/mutation.hpp"
#include "wquiv/quiver.hpp"

namespace wquiv {

// A closed directed walk, as the arrow ids traversed in order.
struct ClosedWalk {
  std::vector<int> arrows;
  GroupElement weight;
};

struct OrientedCycleCheck {
  bool all_trivial = true;
  std::optional<ClosedWalk> witness;  // a closed walk of nontrivial weight
};

// Decides whether every closed directed walk has weight 1 by checking that
// the path weights from a base vertex are consistent inside each strongly
// connected component.
OrientedCycleCheck oriented_cycles_trivial(const WeightedQuiver& q);

// Strongly connected components of the directed graph, each sorted.
std::vector<std::vector<int>> strongly_connected_components(const WeightedQuiver& q);

struct NondegeneracyCounterexample {
  std::vector<int> sequence;
  TwoCycle offending;
  WeightedQuiver quiver;  // the quiver carrying the surviving 2-cycle
};

struct NondegeneracyVerdict {
  int depth = 0;
  std::size_t states = 0;
  std::optional<NondegeneracyCounterexample> counterexample;

  bool clean() const noexcept { return !counterexample.has_value(); }
};

// Breadth-first search over all mutation sequences at mutable vertices of
// length <= depth, deduplicated by canonical key. The first sequence (in
// shortlex order) whose result keeps an oriented 2-cycle is returned.
NondegeneracyVerdict check_nondegenerate(const WeightedQuiver& q, int depth);

// Visits every distinct quiver reachable by at most `depth` mutations, in
// breadth-first shortlex order, together with the first sequence reaching it.
// The visitor returns false to stop. Mutation failures are reported through
// `on_failure` (sequence, error) and stop the search if it returns false.
struct ExploreStats {
  std::size_t states = 0;
  bool stopped = false;
};
ExploreStats explore_mutation_class(
    const WeightedQuiver& q, int depth,
    const std::function<bool(const WeightedQuiver&, std::span<const int>)>& visit,
    const std::function<bool(std::span<const int>, const std::string&)>& on_failure = {});

struct FrameOptions {
  // Weight of the arrow i' -> i, defaulting to the identity.
  std::map<int, GroupElement> weights;
};

// The frozen copy of vertex i is i + max_vertex_id(q).
WeightedQuiver frame(const WeightedQuiver& q, const FrameOptions& options = {});

// c_kj = #(k -> j') - #(j' -> k) for mutable k and frozen j'.
struct CVectorMatrix {
  std::vector<int> rows;  // mutable vertex ids
  std::vector<int> cols;  // frozen vertex ids
  std::vector<std::vector<Count>> entries;
};
CVectorMatrix c_vectors(const WeightedQuiver& q);

struct SignCoherence {
  bool coherent = true;
  std::vector<bool> rows;
  std::optional<int> offending_row;  // vertex id of the first incoherent row
};
SignCoherence is_sign_coherent(const CVectorMatrix& m);

// Returns q plus the arrow j -> i of weight w.
WeightedQuiver attach_probe_arrow(const WeightedQuiver& q, int i, int j, const GroupElement& w);

// Framing followed by the exhaustive mutation search used for the sign
// coherence experiment.
struct SignCoherenceCase {
  std::string name;
  int max_length = 0;
  std::size_t states = 0;
  std::size_t frozen_arrow_states = 0;
  std::size_t incoherent_states = 0;
  std::optional<std::vector<int>> first_failure;
  std::string detail;

  bool passed() const noexcept { return frozen_arrow_states == 0 && incoherent_states == 0 && detail.empty(); }
};
SignCoherenceCase sign_coherence_case(const WeightedQuiver& unframed, int max_length, std::string name = {});

}  // namespace wquiv
