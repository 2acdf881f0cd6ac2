#pragma once

// Hand-rolled generators for property tests. Everything is driven by an
// explicit seed so failures can be replayed from the reported case number.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wquiv/equivalence.hpp"
#include "wquiv/quiver.hpp"
#include "wquiv/series.hpp"

namespace gen {

class Source {
 public:
  explicit Source(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [lo, hi].
  int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(engine_); }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[static_cast<std::size_t>(range(0, static_cast<int>(v.size()) - 1))]; }

 private:
  std::mt19937_64 engine_;
};

// The four group kinds used across the property suites.
std::vector<wquiv::GroupKind> kinds();
wquiv::GroupKind kind_for_case(std::size_t i);

wquiv::GroupElement element(Source& s, const wquiv::GroupKind& kind, int max_len = 3);

struct ShapeOptions {
  int min_vertices = 1;
  int max_vertices = 6;
  int max_parallel = 2;
  double density = 0.5;
  bool allow_two_cycles = false;
  bool random_weights = true;
};

// Vertices 1..n and, per unordered pair, up to max_parallel arrows in one
// direction (or both when two-cycles are allowed). Unit multiplicities.
wquiv::WeightedQuiver quiver(Source& s, const wquiv::GroupKind& kind, const ShapeOptions& o);

wquiv::GaugeFunction gauge(Source& s, const wquiv::WeightedQuiver& q, int max_len = 2);

// A random spanning tree on 1..n with arbitrary orientations and weights.
wquiv::WeightedQuiver tree(Source& s, const wquiv::GroupKind& kind, int n);

// All closed directed paths of length lo..hi with trivial weight, each
// rotation class listed once (starting at its smallest arrow id).
std::vector<wquiv::Word> trivial_cycles(const wquiv::WeightedQuiver& q, std::size_t lo, std::size_t hi);

// A random combination of trivial-weight cycles with small rational
// coefficients.
wquiv::Series potential(Source& s, const wquiv::WeightedQuiver& q, std::size_t lo, std::size_t hi, double keep = 0.5);

}  // namespace gen
