#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wquiv {

enum class GroupTag : std::uint8_t { trivial, cyclic, free_abelian, free };

// The weight group. Cyclic groups carry a modulus, free and free abelian
// groups a rank. Cyclic(1), Free(0) and FreeAbelian(0) behave as the trivial
// group but keep their own tag.
class GroupKind {
 public:
  static GroupKind trivial() { return GroupKind(GroupTag::trivial, 0); }
  static GroupKind cyclic(std::int64_t modulus);
  static GroupKind free_abelian(int rank);
  static GroupKind free(int rank);

  GroupTag tag() const noexcept { return tag_; }
  std::int64_t modulus() const noexcept { return tag_ == GroupTag::cyclic ? param_ : 1; }
  int rank() const noexcept {
    return (tag_ == GroupTag::free || tag_ == GroupTag::free_abelian) ? static_cast<int>(param_) : 0;
  }
  bool is_abelian() const noexcept { return tag_ != GroupTag::free || param_ <= 1; }
  // True when every element is the identity.
  bool is_degenerate() const noexcept {
    return tag_ == GroupTag::trivial || (tag_ == GroupTag::cyclic && param_ == 1) || param_ == 0;
  }

  // "trivial", "cyclic(5)", "free-abelian(3)", "free(2)".
  std::string describe() const;

  friend bool operator==(const GroupKind&, const GroupKind&) = default;
  friend auto operator<=>(const GroupKind&, const GroupKind&) = default;

 private:
  GroupKind(GroupTag tag, std::int64_t param) : tag_(tag), param_(param) {}

  GroupTag tag_;
  std::int64_t param_;
};

// An element of a GroupKind, stored in canonical form so that equality of
// payloads is equality in the group:
//   cyclic        one residue in [0, m)
//   free abelian  exponent vector of length r
//   free          reduced word; letter +i is x_i, -i is x_i^-1 (1-based)
//   trivial       empty
class GroupElement {
 public:
  GroupElement() : kind_(GroupKind::trivial()) {}
  explicit GroupElement(GroupKind kind);

  static GroupElement from_residue(GroupKind kind, std::int64_t value);
  static GroupElement from_exponents(GroupKind kind, std::vector<std::int64_t> exponents);
  static GroupElement from_word(GroupKind kind, std::span<const std::int64_t> letters);
  // The i-th generator (1-based): x_i, the i-th unit vector, or 1 mod m.
  static GroupElement generator(GroupKind kind, int index);

  const GroupKind& kind() const noexcept { return kind_; }
  std::span<const std::int64_t> payload() const noexcept { return payload_; }
  bool is_trivial() const noexcept;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b);

 private:
  GroupKind kind_;
  std::vector<std::int64_t> payload_;
};

GroupElement identity(GroupKind kind);
GroupElement multiply(const GroupElement& g, const GroupElement& h);
GroupElement invert(const GroupElement& g);
GroupElement power(const GroupElement& g, std::int64_t n);

inline GroupElement operator*(const GroupElement& g, const GroupElement& h) { return multiply(g, h); }

GroupElement parse_element(GroupKind kind, std::string_view text);
std::string format_element(const GroupElement& g);

// g = conjugator * core * conjugator^-1 with `core` cyclically reduced.
// For abelian kinds the conjugator is the identity and core == g.
struct CyclicDecomposition {
  GroupElement conjugator;
  GroupElement core;
};
CyclicDecomposition cyclic_decomposition(const GroupElement& g);

// The unique r that is not a proper power with g = r^n, n >= 1 (free groups);
// g itself for other kinds and for the identity.
GroupElement primitive_root(const GroupElement& g);

// Some h with h^-1 u h = v, if one exists.
std::optional<GroupElement> find_conjugator(const GroupElement& u, const GroupElement& v);
bool are_conjugate(const GroupElement& u, const GroupElement& v);

}  // namespace wquiv

template <>
struct std::hash<wquiv::GroupElement> {
  std::size_t operator()(const wquiv::GroupElement& g) const noexcept;
};
