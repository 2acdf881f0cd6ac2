#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wquiv/quiver.hpp"

namespace wquiv {

struct MutationOptions {
  // Strict mode rejects mutation whenever the quiver has any oriented 2-cycle;
  // lenient mode only requires the mutation vertex itself to avoid 2-cycles.
  bool lenient = false;
};

enum class OriginKind { reversed, composite };

// Where a premutation arrow came from. For reversed arrows `first` is the
// original arrow (whose id is kept); composites [ab] record a and b.
struct ArrowOrigin {
  OriginKind kind = OriginKind::reversed;
  int first = 0;
  int second = 0;
};

struct PremutationResult {
  WeightedQuiver quiver;
  std::map<int, ArrowOrigin> provenance;
  // Composite arrow id for each (a, b) pair, in creation order.
  int composite_id(int a, int b) const;
};

struct CancelledPair {
  int first = 0;   // i -> j
  int second = 0;  // j -> i
  Count count = 1;

  friend bool operator==(const CancelledPair&, const CancelledPair&) = default;
};

struct ReductionResult {
  WeightedQuiver quiver;
  std::vector<CancelledPair> cancelled;
};

struct MutationRecord {
  int vertex = 0;
  std::vector<CancelledPair> cancelled;
  WeightedQuiver result;
};

// Steps 1 and 2 of weighted mutation: composite arrows [ab] with weight
// wt(a)wt(b) for every a: i -> k, b: k -> j, then every arrow at k reversed
// with inverted weight. Reversed arrows keep their ids; composites get fresh
// ids in (a, b) order.
PremutationResult premutate(const WeightedQuiver& q, int k, MutationOptions options = {});

// Removes as many trivial-weight oriented 2-cycles as possible: for every
// i -> j class of weight g exactly min(#(i->j, g), #(j->i, g^-1)) pairs,
// lowest arrow ids first.
ReductionResult weight_reduce(const WeightedQuiver& q);

MutationRecord mutate(const WeightedQuiver& q, int k, MutationOptions options = {});

struct SequenceFailure {
  std::size_t index = 0;
  std::string code;
  std::string reason;
};

struct SequenceResult {
  std::vector<MutationRecord> records;
  std::optional<SequenceFailure> failure;

  bool ok() const noexcept { return !failure.has_value(); }
};

SequenceResult mutate_sequence(const WeightedQuiver& q, std::span<const int> ks, MutationOptions options = {});

// Throws unless mutation at k is allowed under `options`.
void check_mutable_at(const WeightedQuiver& q, int k, MutationOptions options = {});

}  // namespace wquiv
