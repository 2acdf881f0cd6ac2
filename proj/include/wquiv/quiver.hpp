#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wquiv/group.hpp"

namespace wquiv {

// Arrow multiplicities grow doubly exponentially along mutation sequences of
// wild quivers, so they are arbitrary precision.
using Count = boost::multiprecision::cpp_int;

struct Vertex {
  int id = 0;
  bool frozen = false;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

// A bundle of `multiplicity` parallel arrows src -> dst sharing one weight.
// Most quivers only carry bundles of multiplicity one; larger bundles appear
// when mutation composes bundles (m arrows into k times n arrows out of k
// give one composite bundle of size m*n).
struct Arrow {
  int id = 0;
  int src = 0;
  int dst = 0;
  GroupElement weight;
  Count multiplicity = 1;
};

class WeightedQuiver {
 public:
  explicit WeightedQuiver(GroupKind group = GroupKind::trivial()) : group_(group) {}

  const GroupKind& group() const noexcept { return group_; }
  std::span<const Vertex> vertices() const noexcept { return vertices_; }
  std::span<const Arrow> arrows() const noexcept { return arrows_; }

  WeightedQuiver& add_vertex(int id, bool frozen = false);
  // Appends an arrow bundle with a fresh id and returns that id.
  int add_arrow(int src, int dst, GroupElement weight, Count multiplicity = 1);
  WeightedQuiver& add_arrow_with_id(int id, int src, int dst, GroupElement weight, Count multiplicity = 1);
  WeightedQuiver& remove_arrow(int id);
  WeightedQuiver& set_weight(int id, GroupElement weight);
  WeightedQuiver& set_multiplicity(int id, Count multiplicity);

  bool has_vertex(int id) const noexcept;
  const Vertex& vertex(int id) const;
  bool is_frozen(int id) const { return vertex(id).frozen; }
  const Arrow* find_arrow(int id) const noexcept;
  const Arrow& arrow(int id) const;

  int next_arrow_id() const noexcept { return arrows_.empty() ? 1 : arrows_.back().id + 1; }
  int max_vertex_id() const noexcept { return vertices_.empty() ? 0 : vertices_.back().id; }
  std::vector<int> vertex_ids() const;
  std::vector<int> mutable_ids() const;
  std::vector<int> frozen_ids() const;
  // Total number of arrows, counting multiplicities.
  Count arrow_count() const;
  bool has_unit_multiplicities() const noexcept;

 private:
  GroupKind group_;
  std::vector<Vertex> vertices_;  // sorted by id
  std::vector<Arrow> arrows_;     // sorted by id
};

// Every violated structural invariant; empty iff valid.
std::vector<std::string> validate(const WeightedQuiver& q);
// Throws Error("invalid_quiver") listing the violations, if any.
void require_valid(const WeightedQuiver& q);

// An oriented 2-cycle formed by arrows `first`: i -> j and `second`: j -> i.
struct TwoCycle {
  int first = 0;
  int second = 0;
  bool trivial = false;  // wt(first) * wt(second) == 1

  friend bool operator==(const TwoCycle&, const TwoCycle&) = default;
};
std::vector<TwoCycle> two_cycles(const WeightedQuiver& q);
std::vector<TwoCycle> two_cycles_at(const WeightedQuiver& q, int vertex);

// b_ij = #(i -> j) - #(j -> i), rows and columns in ascending vertex id order.
class ExchangeMatrix {
 public:
  ExchangeMatrix() = default;
  explicit ExchangeMatrix(std::vector<int> ids);

  std::span<const int> ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  Count& operator()(std::size_t r, std::size_t c) { return entries_[r * ids_.size() + c]; }
  const Count& operator()(std::size_t r, std::size_t c) const { return entries_[r * ids_.size() + c]; }
  // Entry addressed by vertex ids.
  const Count& at(int i, int j) const;
  std::size_t index_of(int id) const;
  bool is_skew_symmetric() const;

  friend bool operator==(const ExchangeMatrix&, const ExchangeMatrix&) = default;

 private:
  std::vector<int> ids_;
  std::vector<Count> entries_;
};
ExchangeMatrix exchange_matrix(const WeightedQuiver& q);

// One arrow class of the canonical form: all arrows src -> dst of one weight.
struct ArrowClass {
  int src = 0;
  int dst = 0;
  std::string weight;  // formatted
  GroupElement element;
  Count count;
};
// Arrow classes sorted by (src, dst, formatted weight), multiplicities summed.
std::vector<ArrowClass> arrow_classes(const WeightedQuiver& q);

// One arrow per class, ids 1.. in class order. Labeled-equal to q; keeps
// long mutation runs from multiplying parallel records.
WeightedQuiver merge_bundles(const WeightedQuiver& q);

// Labeled equality: same group, vertices, frozen flags and multiset of
// (src, dst, weight); arrow ids and bundle boundaries are ignored.
bool labeled_equal(const WeightedQuiver& a, const WeightedQuiver& b);
inline bool operator==(const WeightedQuiver& a, const WeightedQuiver& b) { return labeled_equal(a, b); }

// Compact string form of the canonical serialization; two quivers are
// labeled-equal iff their keys are equal.
std::string canonical_key(const WeightedQuiver& q);

// Replaces every bundle of multiplicity m by m unit arrows. The first copy
// keeps the bundle id; the others get fresh ids.
WeightedQuiver split_bundles(const WeightedQuiver& q, std::size_t max_multiplicity = 64);

// Vertex sets of the connected components of the underlying graph, each
// sorted, ordered by smallest vertex id.
std::vector<std::vector<int>> connected_components(const WeightedQuiver& q);

std::string count_to_string(const Count& c);

}  // namespace wquiv
