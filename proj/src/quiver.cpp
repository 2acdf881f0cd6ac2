#include "wquiv/quiver.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <set>

#include "wquiv/error.hpp"

namespace wquiv {

namespace {

template <typename T>
auto find_by_id(std::vector<T>& items, int id) {
  return std::lower_bound(items.begin(), items.end(), id, [](const T& x, int v) { return x.id < v; });
}

template <typename T>
auto find_by_id(const std::vector<T>& items, int id) {
  return std::lower_bound(items.begin(), items.end(), id, [](const T& x, int v) { return x.id < v; });
}

}  // namespace

std::string count_to_string(const Count& c) {
  if (c >= 0 && c <= std::numeric_limits<std::uint64_t>::max()) {
    char buf[24];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), static_cast<std::uint64_t>(c));
    return std::string(buf, ptr);
  }
  return c.str();
}

WeightedQuiver& WeightedQuiver::add_vertex(int id, bool frozen) {
  auto it = find_by_id(vertices_, id);
  if (it != vertices_.end() && it->id == id) {
    throw Error("duplicate_vertex", "vertex " + std::to_string(id) + " already present");
  }
  vertices_.insert(it, Vertex{id, frozen});
  return *this;
}

int WeightedQuiver::add_arrow(int src, int dst, GroupElement weight, Count multiplicity) {
  const int id = next_arrow_id();
  arrows_.push_back(Arrow{id, src, dst, std::move(weight), std::move(multiplicity)});
  return id;
}

WeightedQuiver& WeightedQuiver::add_arrow_with_id(int id, int src, int dst, GroupElement weight,
                                                  Count multiplicity) {
  auto it = find_by_id(arrows_, id);
  if (it != arrows_.end() && it->id == id) {
    throw Error("duplicate_arrow", "arrow id " + std::to_string(id) + " already present");
  }
  arrows_.insert(it, Arrow{id, src, dst, std::move(weight), std::move(multiplicity)});
  return *this;
}

WeightedQuiver& WeightedQuiver::remove_arrow(int id) {
  auto it = find_by_id(arrows_, id);
  if (it == arrows_.end() || it->id != id) throw Error("unknown_arrow", "no arrow " + std::to_string(id));
  arrows_.erase(it);
  return *this;
}

WeightedQuiver& WeightedQuiver::set_weight(int id, GroupElement weight) {
  auto it = find_by_id(arrows_, id);
  if (it == arrows_.end() || it->id != id) throw Error("unknown_arrow", "no arrow " + std::to_string(id));
  it->weight = std::move(weight);
  return *this;
}

WeightedQuiver& WeightedQuiver::set_multiplicity(int id, Count multiplicity) {
  auto it = find_by_id(arrows_, id);
  if (it == arrows_.end() || it->id != id) throw Error("unknown_arrow", "no arrow " + std::to_string(id));
  it->multiplicity = std::move(multiplicity);
  return *this;
}

bool WeightedQuiver::has_vertex(int id) const noexcept {
  auto it = find_by_id(vertices_, id);
  return it != vertices_.end() && it->id == id;
}

const Vertex& WeightedQuiver::vertex(int id) const {
  auto it = find_by_id(vertices_, id);
  if (it == vertices_.end() || it->id != id) throw Error("unknown_vertex", "no vertex " + std::to_string(id));
  return *it;
}

const Arrow* WeightedQuiver::find_arrow(int id) const noexcept {
  auto it = find_by_id(arrows_, id);
  return (it != arrows_.end() && it->id == id) ? &*it : nullptr;
}

const Arrow& WeightedQuiver::arrow(int id) const {
  const Arrow* a = find_arrow(id);
  if (a == nullptr) throw Error("unknown_arrow", "no arrow " + std::to_string(id));
  return *a;
}

std::vector<int> WeightedQuiver::vertex_ids() const {
  std::vector<int> ids;
  ids.reserve(vertices_.size());
  for (const auto& v : vertices_) ids.push_back(v.id);
  return ids;
}

std::vector<int> WeightedQuiver::mutable_ids() const {
  std::vector<int> ids;
  for (const auto& v : vertices_) {
    if (!v.frozen) ids.push_back(v.id);
  }
  return ids;
}

std::vector<int> WeightedQuiver::frozen_ids() const {
  std::vector<int> ids;
  for (const auto& v : vertices_) {
    if (v.frozen) ids.push_back(v.id);
  }
  return ids;
}

Count WeightedQuiver::arrow_count() const {
  Count total = 0;
  for (const auto& a : arrows_) total += a.multiplicity;
  return total;
}

bool WeightedQuiver::has_unit_multiplicities() const noexcept {
  return std::all_of(arrows_.begin(), arrows_.end(), [](const Arrow& a) { return a.multiplicity == 1; });
}

std::vector<std::string> validate(const WeightedQuiver& q) {
  std::vector<std::string> violations;
  for (const auto& a : q.arrows()) {
    const std::string name = "arrow " + std::to_string(a.id);
    if (!q.has_vertex(a.src)) violations.push_back(name + " has unknown source " + std::to_string(a.src));
    if (!q.has_vertex(a.dst)) violations.push_back(name + " has unknown target " + std::to_string(a.dst));
    if (a.src == a.dst) violations.push_back("loop at " + std::to_string(a.src) + " (" + name + ")");
    if (a.weight.kind() != q.group()) {
      violations.push_back("weight kind mismatch on " + name + ": " + a.weight.kind().describe() + " in a " +
                           q.group().describe() + " quiver");
    }
    if (a.multiplicity < 1) violations.push_back(name + " has multiplicity < 1");
  }
  return violations;
}

void require_valid(const WeightedQuiver& q) {
  const auto violations = validate(q);
  if (violations.empty()) return;
  std::string message = "invalid quiver:";
  for (const auto& v : violations) message += " " + v + ";";
  throw Error("invalid_quiver", message, violations.front());
}

std::vector<TwoCycle> two_cycles(const WeightedQuiver& q) {
  std::vector<TwoCycle> out;
  const auto arrows = q.arrows();
  for (std::size_t x = 0; x < arrows.size(); ++x) {
    for (std::size_t y = x + 1; y < arrows.size(); ++y) {
      const Arrow& a = arrows[x];
      const Arrow& b = arrows[y];
      if (a.src == b.dst && a.dst == b.src && a.src != a.dst) {
        out.push_back({a.id, b.id, (a.weight * b.weight).is_trivial()});
      }
    }
  }
  return out;
}

std::vector<TwoCycle> two_cycles_at(const WeightedQuiver& q, int vertex) {
  std::vector<TwoCycle> out;
  for (const auto& c : two_cycles(q)) {
    const Arrow& a = q.arrow(c.first);
    if (a.src == vertex || a.dst == vertex) out.push_back(c);
  }
  return out;
}

ExchangeMatrix::ExchangeMatrix(std::vector<int> ids) : ids_(std::move(ids)), entries_(ids_.size() * ids_.size()) {}

std::size_t ExchangeMatrix::index_of(int id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) throw Error("unknown_vertex", "no vertex " + std::to_string(id));
  return static_cast<std::size_t>(it - ids_.begin());
}

const Count& ExchangeMatrix::at(int i, int j) const { return (*this)(index_of(i), index_of(j)); }

bool ExchangeMatrix::is_skew_symmetric() const {
  for (std::size_t r = 0; r < size(); ++r) {
    for (std::size_t c = r; c < size(); ++c) {
      if ((*this)(r, c) != -(*this)(c, r)) return false;
    }
  }
  return true;
}

ExchangeMatrix exchange_matrix(const WeightedQuiver& q) {
  require_valid(q);
  if (const auto cycles = two_cycles(q); !cycles.empty()) {
    throw Error("two_cycle", "exchange matrix undefined: quiver has an oriented 2-cycle",
                "arrows " + std::to_string(cycles.front().first) + "," + std::to_string(cycles.front().second));
  }
  ExchangeMatrix b(q.vertex_ids());
  for (const auto& a : q.arrows()) {
    const std::size_t i = b.index_of(a.src);
    const std::size_t j = b.index_of(a.dst);
    b(i, j) += a.multiplicity;
    b(j, i) -= a.multiplicity;
  }
  return b;
}

std::vector<ArrowClass> arrow_classes(const WeightedQuiver& q) {
  std::vector<ArrowClass> classes;
  classes.reserve(q.arrows().size());
  for (const auto& a : q.arrows()) classes.push_back({a.src, a.dst, format_element(a.weight), a.weight, a.multiplicity});
  std::sort(classes.begin(), classes.end(), [](const ArrowClass& x, const ArrowClass& y) {
    return std::tie(x.src, x.dst, x.weight) < std::tie(y.src, y.dst, y.weight);
  });
  std::vector<ArrowClass> merged;
  for (auto& c : classes) {
    if (!merged.empty() && merged.back().src == c.src && merged.back().dst == c.dst &&
        merged.back().weight == c.weight) {
      merged.back().count += c.count;
    } else {
      merged.push_back(std::move(c));
    }
  }
  return merged;
}

WeightedQuiver merge_bundles(const WeightedQuiver& q) {
  WeightedQuiver out(q.group());
  for (const auto& v : q.vertices()) out.add_vertex(v.id, v.frozen);
  for (const auto& c : arrow_classes(q)) out.add_arrow(c.src, c.dst, c.element, c.count);
  return out;
}

bool labeled_equal(const WeightedQuiver& a, const WeightedQuiver& b) {
  if (a.group() != b.group()) return false;
  if (!std::equal(a.vertices().begin(), a.vertices().end(), b.vertices().begin(), b.vertices().end())) return false;
  const auto ca = arrow_classes(a);
  const auto cb = arrow_classes(b);
  return std::equal(ca.begin(), ca.end(), cb.begin(), cb.end(), [](const ArrowClass& x, const ArrowClass& y) {
    return x.src == y.src && x.dst == y.dst && x.weight == y.weight && x.count == y.count;
  });
}

std::string canonical_key(const WeightedQuiver& q) {
  std::string key = q.group().describe();
  key += '|';
  for (const auto& v : q.vertices()) {
    key += std::to_string(v.id);
    if (v.frozen) key += '*';
    key += ',';
  }
  key += '|';
  for (const auto& c : arrow_classes(q)) {
    key += std::to_string(c.src);
    key += '>';
    key += std::to_string(c.dst);
    key += ':';
    key += c.weight;
    key += '#';
    key += count_to_string(c.count);
    key += ';';
  }
  return key;
}

WeightedQuiver split_bundles(const WeightedQuiver& q, std::size_t max_multiplicity) {
  if (q.has_unit_multiplicities()) return q;
  WeightedQuiver out(q.group());
  for (const auto& v : q.vertices()) out.add_vertex(v.id, v.frozen);
  int fresh = q.next_arrow_id();
  for (const auto& a : q.arrows()) {
    if (a.multiplicity > max_multiplicity) {
      throw Error("multiplicity_limit", "arrow " + std::to_string(a.id) + " has multiplicity " +
                                            count_to_string(a.multiplicity) + ", too large to split");
    }
    out.add_arrow_with_id(a.id, a.src, a.dst, a.weight);
  }
  for (const auto& a : q.arrows()) {
    const auto m = static_cast<std::size_t>(a.multiplicity);
    for (std::size_t i = 1; i < m; ++i) out.add_arrow_with_id(fresh++, a.src, a.dst, a.weight);
  }
  return out;
}

std::vector<std::vector<int>> connected_components(const WeightedQuiver& q) {
  const auto ids = q.vertex_ids();
  std::vector<int> parent(ids.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  auto index = [&](int id) {
    return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  for (const auto& a : q.arrows()) {
    const int x = find(index(a.src));
    const int y = find(index(a.dst));
    if (x != y) parent[static_cast<std::size_t>(std::max(x, y))] = std::min(x, y);
  }
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < ids.size(); ++i) groups[find(static_cast<int>(i))].push_back(ids[i]);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

}  // namespace wquiv
