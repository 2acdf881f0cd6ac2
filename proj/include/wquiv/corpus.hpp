#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "wquiv/equivalence.hpp"
#include "wquiv/quiver.hpp"

namespace wquiv {

// Seeded generator with its own bounded sampling, so that corpora are
// identical across standard libraries (std distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  // Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

GroupElement random_element(Rng& rng, const GroupKind& kind, int max_length = 3);
GaugeFunction random_gauge(Rng& rng, const WeightedQuiver& q, int max_length = 2);

// Vertices 1..n, each unordered pair joined by 0..max_parallel arrows in one
// direction (so no oriented 2-cycles), all weights the identity.
WeightedQuiver random_shape(Rng& rng, int n, int max_parallel, const GroupKind& kind);

// Unoriented n-cycle on vertices 1..n with random edge directions, weight t
// on one edge and the identity elsewhere.
WeightedQuiver unoriented_cycle(Rng& rng, int n, const GroupElement& t);

enum class WeightPolicy { trivial, gauge, oriented_cycle_trivial, cn_reverse, free_random, catalog };

WeightPolicy parse_policy(std::string_view name);
std::string policy_name(WeightPolicy p);

struct CorpusSpec {
  std::size_t count = 1;
  int n = 4;
  GroupKind group = GroupKind::trivial();
  WeightPolicy policy = WeightPolicy::trivial;
  std::uint64_t seed = 0;
  int max_parallel = 2;
  // cn_reverse: reverse mutations per member; random in [0, n-3] if unset.
  std::optional<int> reverse_steps;
};

struct CorpusEntry {
  std::string name;
  WeightedQuiver quiver;
  std::vector<int> sequence;  // cn_reverse: the mutations applied to the cycle
};

// Deterministic in the spec. Throws "unsatisfiable" for specs that cannot be
// met (e.g. C_n(t) over a group with no nontrivial element).
std::vector<CorpusEntry> generate_corpus(const CorpusSpec& spec);

// One representative per isomorphism class of quivers on 1..max_vertices
// vertices with no oriented 2-cycles and at most max_parallel parallel arrows,
// trivial weights, ordered by vertex count. Parallel arrows are unit arrows.
std::vector<WeightedQuiver> small_quiver_catalog(int max_vertices = 4, int max_parallel = 2,
                                                 const GroupKind& kind = GroupKind::trivial());

}  // namespace wquiv
