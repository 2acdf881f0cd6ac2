#include "wquiv/series.hpp"

#include <algorithm>
#include <cctype>

#include "wquiv/error.hpp"

namespace wquiv {

Series Series::monomial(Word w, Rational c) {
  Series s;
  s.add(w, c);
  return s;
}

void Series::add(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms.erase(it);
}

Series& Series::operator+=(const Series& other) {
  for (const auto& [w, c] : other.terms) add(w, c);
  return *this;
}

Series& Series::operator-=(const Series& other) {
  for (const auto& [w, c] : other.terms) add(w, -c);
  return *this;
}

Series Series::scaled(const Rational& c) const {
  Series out;
  if (c == 0) return out;
  for (const auto& [w, x] : terms) out.terms.emplace(w, x * c);
  return out;
}

Series Series::part(std::size_t degree) const {
  Series out;
  for (const auto& [w, c] : terms) {
    if (w.size() == degree) out.terms.emplace(w, c);
  }
  return out;
}

std::size_t Series::min_degree() const {
  std::size_t d = 0;
  bool first = true;
  for (const auto& [w, c] : terms) {
    if (first || w.size() < d) d = w.size();
    first = false;
  }
  return d;
}

std::size_t Series::max_degree() const {
  std::size_t d = 0;
  for (const auto& [w, c] : terms) d = std::max(d, w.size());
  return d;
}

Series operator+(Series a, const Series& b) { return a += b; }
Series operator-(Series a, const Series& b) { return a -= b; }

Series multiply(const Series& x, const Series& y, std::size_t max_degree) {
  Series out;
  for (const auto& [u, a] : x.terms) {
    for (const auto& [v, b] : y.terms) {
      if (u.size() + v.size() > max_degree) continue;
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      out.add(w, a * b);
    }
  }
  return out;
}

Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto integer = [&](std::string_view s) {
    s = trim(s);
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      throw Error("parse", "not a rational number: '" + std::string(text) + "'");
    }
    return boost::multiprecision::cpp_int(std::string(s.front() == '+' ? s.substr(1) : s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(integer(text));
  const auto den = integer(text.substr(slash + 1));
  if (den == 0) throw Error("parse", "zero denominator in '" + std::string(text) + "'");
  return Rational(integer(text.substr(0, slash)), den);
}

std::string format_rational(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string format_series(const Series& s) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : s.terms) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (mag != 1) out += format_rational(mag) + "*";
    out += "[";
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0) out += ",";
      out += std::to_string(w[i]);
    }
    out += "]";
  }
  return out;
}

bool is_path(const WeightedQuiver& q, const Word& w) {
  if (w.empty()) return false;
  const Arrow* prev = nullptr;
  for (int id : w) {
    const Arrow* a = q.find_arrow(id);
    if (a == nullptr) return false;
    if (prev != nullptr && prev->dst != a->src) return false;
    prev = a;
  }
  return true;
}

int word_source(const WeightedQuiver& q, const Word& w) { return q.arrow(w.front()).src; }
int word_target(const WeightedQuiver& q, const Word& w) { return q.arrow(w.back()).dst; }

GroupElement word_weight(const WeightedQuiver& q, const Word& w) {
  GroupElement g = identity(q.group());
  for (int id : w) g = g * q.arrow(id).weight;
  return g;
}

}  // namespace wquiv
