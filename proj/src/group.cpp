#include "wquiv/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "wquiv/error.hpp"

namespace wquiv {

namespace {

std::int64_t normalize_residue(std::int64_t value, std::int64_t modulus) {
  std::int64_t r = value % modulus;
  return r < 0 ? r + modulus : r;
}

void require_same_kind(const GroupElement& g, const GroupElement& h) {
  if (g.kind() != h.kind()) {
    throw Error("kind_mismatch",
                "group kind mismatch: " + g.kind().describe() + " vs " + h.kind().describe());
  }
}

// Appends `letter` to a reduced word, cancelling against the last letter.
void push_letter(std::vector<std::int64_t>& word, std::int64_t letter) {
  if (!word.empty() && word.back() == -letter) {
    word.pop_back();
  } else {
    word.push_back(letter);
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_integer(std::string_view text, std::string_view context) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error("parse", "malformed integer '" + std::string(text) + "' in " + std::string(context));
  }
  return value;
}

}  // namespace

GroupKind GroupKind::cyclic(std::int64_t modulus) {
  if (modulus < 1) throw Error("invalid_group", "cyclic modulus must be >= 1");
  return GroupKind(GroupTag::cyclic, modulus);
}

GroupKind GroupKind::free_abelian(int rank) {
  if (rank < 0) throw Error("invalid_group", "free abelian rank must be >= 0");
  return GroupKind(GroupTag::free_abelian, rank);
}

GroupKind GroupKind::free(int rank) {
  if (rank < 0) throw Error("invalid_group", "free rank must be >= 0");
  return GroupKind(GroupTag::free, rank);
}

std::string GroupKind::describe() const {
  switch (tag_) {
    case GroupTag::trivial:
      return "trivial";
    case GroupTag::cyclic:
      return "cyclic(" + std::to_string(param_) + ")";
    case GroupTag::free_abelian:
      return "free-abelian(" + std::to_string(param_) + ")";
    case GroupTag::free:
      return "free(" + std::to_string(param_) + ")";
  }
  return "?";
}

GroupElement::GroupElement(GroupKind kind) : kind_(kind) {
  switch (kind.tag()) {
    case GroupTag::cyclic:
      payload_.assign(1, 0);
      break;
    case GroupTag::free_abelian:
      payload_.assign(static_cast<std::size_t>(kind.rank()), 0);
      break;
    default:
      break;
  }
}

GroupElement GroupElement::from_residue(GroupKind kind, std::int64_t value) {
  if (kind.tag() != GroupTag::cyclic) throw Error("kind_mismatch", "residue given for " + kind.describe());
  GroupElement g(kind);
  g.payload_[0] = normalize_residue(value, kind.modulus());
  return g;
}

GroupElement GroupElement::from_exponents(GroupKind kind, std::vector<std::int64_t> exponents) {
  if (kind.tag() != GroupTag::free_abelian) {
    throw Error("kind_mismatch", "exponent vector given for " + kind.describe());
  }
  if (exponents.size() != static_cast<std::size_t>(kind.rank())) {
    throw Error("parse", "expected " + std::to_string(kind.rank()) + " exponents, got " +
                             std::to_string(exponents.size()));
  }
  GroupElement g(kind);
  g.payload_ = std::move(exponents);
  return g;
}

GroupElement GroupElement::from_word(GroupKind kind, std::span<const std::int64_t> letters) {
  if (kind.tag() != GroupTag::free) throw Error("kind_mismatch", "word given for " + kind.describe());
  GroupElement g(kind);
  for (std::int64_t letter : letters) {
    if (letter == 0 || letter > kind.rank() || -letter > kind.rank()) {
      throw Error("generator_range", "generator index " + std::to_string(letter < 0 ? -letter : letter) +
                                         " out of range for " + kind.describe());
    }
    push_letter(g.payload_, letter);
  }
  return g;
}

GroupElement GroupElement::generator(GroupKind kind, int index) {
  switch (kind.tag()) {
    case GroupTag::trivial:
      return GroupElement(kind);
    case GroupTag::cyclic:
      return from_residue(kind, 1);
    case GroupTag::free_abelian: {
      if (index < 1 || index > kind.rank()) throw Error("generator_range", "generator index out of range");
      std::vector<std::int64_t> e(static_cast<std::size_t>(kind.rank()), 0);
      e[static_cast<std::size_t>(index - 1)] = 1;
      return from_exponents(kind, std::move(e));
    }
    case GroupTag::free: {
      const std::int64_t letter = index;
      return from_word(kind, std::span<const std::int64_t>(&letter, 1));
    }
  }
  return GroupElement(kind);
}

bool GroupElement::is_trivial() const noexcept {
  return std::all_of(payload_.begin(), payload_.end(), [](std::int64_t x) { return x == 0; });
}

std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (a.payload_.size() != b.payload_.size()) return a.payload_.size() <=> b.payload_.size();
  return std::lexicographical_compare_three_way(a.payload_.begin(), a.payload_.end(), b.payload_.begin(),
                                                b.payload_.end());
}

GroupElement identity(GroupKind kind) { return GroupElement(kind); }

GroupElement multiply(const GroupElement& g, const GroupElement& h) {
  require_same_kind(g, h);
  const GroupKind& kind = g.kind();
  switch (kind.tag()) {
    case GroupTag::trivial:
      return g;
    case GroupTag::cyclic:
      return GroupElement::from_residue(kind, g.payload()[0] + h.payload()[0]);
    case GroupTag::free_abelian: {
      std::vector<std::int64_t> sum(g.payload().begin(), g.payload().end());
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += h.payload()[i];
      return GroupElement::from_exponents(kind, std::move(sum));
    }
    case GroupTag::free: {
      std::vector<std::int64_t> word(g.payload().begin(), g.payload().end());
      word.reserve(word.size() + h.payload().size());
      for (std::int64_t letter : h.payload()) push_letter(word, letter);
      return GroupElement::from_word(kind, word);
    }
  }
  return g;
}

GroupElement invert(const GroupElement& g) {
  const GroupKind& kind = g.kind();
  switch (kind.tag()) {
    case GroupTag::trivial:
      return g;
    case GroupTag::cyclic:
      return GroupElement::from_residue(kind, -g.payload()[0]);
    case GroupTag::free_abelian: {
      std::vector<std::int64_t> neg(g.payload().begin(), g.payload().end());
      for (auto& x : neg) x = -x;
      return GroupElement::from_exponents(kind, std::move(neg));
    }
    case GroupTag::free: {
      std::vector<std::int64_t> word(g.payload().rbegin(), g.payload().rend());
      for (auto& x : word) x = -x;
      return GroupElement::from_word(kind, word);
    }
  }
  return g;
}

GroupElement power(const GroupElement& g, std::int64_t n) {
  GroupElement base = n < 0 ? invert(g) : g;
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  GroupElement result = identity(g.kind());
  while (e > 0) {
    if (e & 1U) result = multiply(result, base);
    e >>= 1U;
    if (e > 0) base = multiply(base, base);
  }
  return result;
}

GroupElement parse_element(GroupKind kind, std::string_view text) {
  const std::string_view body = trim(text);
  if (body == "e") return identity(kind);
  switch (kind.tag()) {
    case GroupTag::trivial:
      if (body.empty()) return identity(kind);
      throw Error("parse", "trivial group element must be 'e', got '" + std::string(text) + "'");
    case GroupTag::cyclic:
      return GroupElement::from_residue(kind, parse_integer(body, "cyclic element"));
    case GroupTag::free_abelian: {
      if (body.size() < 2 || body.front() != '(' || body.back() != ')') {
        throw Error("parse", "free abelian element must look like (a,b,...), got '" + std::string(text) + "'");
      }
      std::string_view inner = trim(body.substr(1, body.size() - 2));
      std::vector<std::int64_t> exps;
      while (!inner.empty()) {
        const auto comma = inner.find(',');
        exps.push_back(parse_integer(inner.substr(0, comma), "free abelian element"));
        if (comma == std::string_view::npos) break;
        inner.remove_prefix(comma + 1);
        if (trim(inner).empty()) throw Error("parse", "trailing comma in '" + std::string(text) + "'");
      }
      return GroupElement::from_exponents(kind, std::move(exps));
    }
    case GroupTag::free: {
      std::vector<std::int64_t> letters;
      std::istringstream in{std::string(body)};
      std::string token;
      while (in >> token) {
        std::string_view t = token;
        if (t.size() < 2 || t.front() != 'x') throw Error("parse", "bad free group token '" + token + "'");
        t.remove_prefix(1);
        bool inverse = false;
        if (const auto caret = t.find('^'); caret != std::string_view::npos) {
          if (t.substr(caret) != "^-1") throw Error("parse", "only ^-1 exponents are allowed: '" + token + "'");
          inverse = true;
          t = t.substr(0, caret);
        }
        if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
          throw Error("parse", "bad generator index in '" + token + "'");
        }
        const std::int64_t index = parse_integer(t, "generator index");
        if (index < 1 || index > kind.rank()) {
          throw Error("generator_range", "generator x" + std::to_string(index) + " out of range for " +
                                             kind.describe());
        }
        letters.push_back(inverse ? -index : index);
      }
      return GroupElement::from_word(kind, letters);
    }
  }
  return identity(kind);
}

std::string format_element(const GroupElement& g) {
  switch (g.kind().tag()) {
    case GroupTag::trivial:
      return "e";
    case GroupTag::cyclic:
      return std::to_string(g.payload()[0]);
    case GroupTag::free_abelian: {
      std::string out = "(";
      for (std::size_t i = 0; i < g.payload().size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(g.payload()[i]);
      }
      return out + ")";
    }
    case GroupTag::free: {
      std::string out;
      for (std::int64_t letter : g.payload()) {
        if (!out.empty()) out += ' ';
        out += 'x';
        out += std::to_string(letter < 0 ? -letter : letter);
        if (letter < 0) out += "^-1";
      }
      return out;
    }
  }
  return {};
}

CyclicDecomposition cyclic_decomposition(const GroupElement& g) {
  if (g.kind().tag() != GroupTag::free) return {identity(g.kind()), g};
  const auto w = g.payload();
  std::size_t s = 0;
  while (2 * s + 1 < w.size() && w[s] == -w[w.size() - 1 - s]) ++s;
  return {GroupElement::from_word(g.kind(), w.subspan(0, s)),
          GroupElement::from_word(g.kind(), w.subspan(s, w.size() - 2 * s))};
}

GroupElement primitive_root(const GroupElement& g) {
  if (g.kind().tag() != GroupTag::free || g.is_trivial()) return g;
  const auto [p, core] = cyclic_decomposition(g);
  const auto c = core.payload();
  const std::size_t n = c.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = c[i] == c[i - d];
    if (periodic) {
      const GroupElement r = GroupElement::from_word(g.kind(), c.subspan(0, d));
      return multiply(multiply(p, r), invert(p));
    }
  }
  return g;
}

std::optional<GroupElement> find_conjugator(const GroupElement& u, const GroupElement& v) {
  require_same_kind(u, v);
  if (u.kind().tag() != GroupTag::free) {
    if (u == v) return identity(u.kind());
    return std::nullopt;
  }
  const auto [p, cu] = cyclic_decomposition(u);
  const auto [q, cv] = cyclic_decomposition(v);
  const auto a = cu.payload();
  const auto b = cv.payload();
  if (a.size() != b.size()) return std::nullopt;
  const std::size_t n = a.size();
  if (n == 0) return multiply(p, invert(q));
  // cu = s t, cv = t s  =>  cv = s^-1 cu s, and h = p s q^-1.
  for (std::size_t i = 0; i < n; ++i) {
    bool match = true;
    for (std::size_t j = 0; j < n && match; ++j) match = a[(i + j) % n] == b[j];
    if (match) {
      const GroupElement s = GroupElement::from_word(u.kind(), a.subspan(0, i));
      return multiply(multiply(p, s), invert(q));
    }
  }
  return std::nullopt;
}

bool are_conjugate(const GroupElement& u, const GroupElement& v) { return find_conjugator(u, v).has_value(); }

}  // namespace wquiv

std::size_t std::hash<wquiv::GroupElement>::operator()(const wquiv::GroupElement& g) const noexcept {
  std::size_t h = static_cast<std::size_t>(g.kind().tag()) * 0x9e3779b97f4a7c15ULL;
  h ^= static_cast<std::size_t>(g.kind().modulus() + g.kind().rank()) + 0x9e3779b9 + (h << 6) + (h >> 2);
  for (std::int64_t x : g.payload()) h ^= static_cast<std::size_t>(x) + 0x9e3779b9 + (h << 6) + (h >> 2);
  return h;
}
