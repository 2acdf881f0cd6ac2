#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wquiv/mutation.hpp"
#include "wquiv/quiver.hpp"
#include "wquiv/series.hpp"

namespace wquiv {

// A weighted quiver with unit multiplicities and a potential on it.
struct QuiverWithPotential {
  WeightedQuiver quiver;
  Series potential;
};

// Rotates every cycle to its lexicographically smallest rotation and merges
// coefficients. Throws "not_cycle", "weight" or "loop_term" for terms that
// are not oriented cycles of identity weight or have length one.
Series cyclic_normal_form(const WeightedQuiver& q, const Series& s);

// True iff every term of s is a path of identity weight (raw input check).
bool weight_compatible(const WeightedQuiver& q, const Series& s);

// The degree-2 part of a potential as one matrix per (i < j, g): rows are the
// arrows i -> j of weight g, columns the arrows j -> i of weight g^-1, both by
// ascending id, entry c_pq the coefficient of a_p b_q.
struct ForwardBackwardBlock {
  int i = 0;
  int j = 0;
  GroupElement g;
  std::vector<int> forward;
  std::vector<int> backward;
  std::vector<std::vector<Rational>> c;
};
std::vector<ForwardBackwardBlock> degree2_forward_backward(const WeightedQuiver& q, const Series& s);

// Every block square and invertible and no terms of degree >= 3.
bool is_trivial(const WeightedQuiver& q, const Series& s);

// Arrow id -> image. Arrows without an entry are fixed.
using GradedAutomorphism = std::map<int, Series>;

// Throws "incompatible_automorphism" unless every image is a combination of
// paths with the arrow's endpoints and weight.
void check_automorphism(const WeightedQuiver& q, const GradedAutomorphism& phi);
// True when every image is the arrow plus terms of length >= 2.
bool is_unitriangular(const GradedAutomorphism& phi);
// Substitutes images for arrows and drops words longer than max_degree.
Series apply_automorphism(const WeightedQuiver& q, const GradedAutomorphism& phi, const Series& s,
                          std::size_t max_degree);
// The linear part of phi applied to both letters of each degree-2 term.
Series apply_linear_part(const GradedAutomorphism& phi, const Series& degree2);

struct TrivialPair {
  int forward = 0;   // a_p : i -> j, i < j
  int backward = 0;  // b_p : j -> i
};

struct SplitResult {
  std::vector<TrivialPair> pairs;
  Series trivial_potential;  // sum of a_p b_p
  WeightedQuiver reduced_quiver;
  Series reduced_potential;
  // phi with phi(S) cyclically equivalent to trivial + reduced up to the
  // truncation degree. It is the linear change of arrows choosing the
  // paired bases followed by the unitriangular corrections.
  GradedAutomorphism automorphism;
  GradedAutomorphism change_of_arrows;
  std::size_t iterations = 0;
  std::size_t truncation = 0;
};

// 2 * (max term degree) + 2.
std::size_t default_truncation(const Series& s);

// Throws "truncation_too_small" if truncation is below the potential's
// maximum degree.
SplitResult split(const WeightedQuiver& q, const Series& s, std::size_t truncation);

struct QpPremutation {
  PremutationResult premutation;
  Series potential;  // [S] + Delta_k, cyclic normal form
  Series bracket;    // [S]
  Series delta;      // Delta_k
};

// Throws "two_cycle_through_k" when a degree-2 term passes through k.
QpPremutation qp_premutate(const QuiverWithPotential& qp, int k);

struct QpMutation {
  QpPremutation premutation;
  SplitResult split;
  QuiverWithPotential result;  // the reduced part
  // weight_reduce(result.quiver) == mutate(qp.quiver, k).result
  bool matches_weighted_mutation = false;
};

QpMutation qp_mutate(const QuiverWithPotential& qp, int k, std::size_t truncation);

}  // namespace wquiv
