#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wquiv/quiver.hpp"

namespace wquiv {

using Rational = boost::multiprecision::cpp_rational;

// A path as arrow ids, composed left to right.
using Word = std::vector<int>;

// A finite linear combination of paths with exact rational coefficients.
// Zero coefficients are never stored.
struct Series {
  std::map<Word, Rational> terms;

  static Series monomial(Word w, Rational c = 1);

  bool is_zero() const noexcept { return terms.empty(); }
  void add(const Word& w, const Rational& c);
  Series& operator+=(const Series& other);
  Series& operator-=(const Series& other);
  Series scaled(const Rational& c) const;
  // Terms of exactly this length.
  Series part(std::size_t degree) const;
  std::size_t min_degree() const;  // 0 for the zero series
  std::size_t max_degree() const;

  friend bool operator==(const Series&, const Series&) = default;
};

Series operator+(Series a, const Series& b);
Series operator-(Series a, const Series& b);

// Product of two series, keeping only words of length <= max_degree.
// Products of non-composable paths are kept as words; callers that need
// paths check composability themselves.
Series multiply(const Series& x, const Series& y, std::size_t max_degree);

// Accepts "p", "-p", "p/q".
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);
// "2*[1,2,3] - [4,5]" style, terms in word order.
std::string format_series(const Series& s);

bool is_path(const WeightedQuiver& q, const Word& w);
int word_source(const WeightedQuiver& q, const Word& w);
int word_target(const WeightedQuiver& q, const Word& w);
GroupElement word_weight(const WeightedQuiver& q, const Word& w);

}  // namespace wquiv
