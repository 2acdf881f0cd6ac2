#include "wquiv/potential.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "wquiv/error.hpp"

namespace wquiv {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

std::size_t rank_of(Matrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

Matrix inverse_of(Matrix m) {
  const std::size_t n = m.size();
  Matrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m[pivot][c] == 0) ++pivot;
    if (pivot == n) throw Error("internal", "singular pivot block");
    std::swap(m[pivot], m[c]);
    std::swap(inv[pivot], inv[c]);
    const Rational d = m[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      m[c][k] /= d;
      inv[c][k] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] -= f * m[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

// Indices of a maximal independent subset of the rows, chosen greedily.
std::vector<std::size_t> greedy_rows(const Matrix& m) {
  std::vector<std::size_t> chosen;
  Matrix acc;
  for (std::size_t r = 0; r < m.size(); ++r) {
    acc.push_back(m[r]);
    if (rank_of(acc) == acc.size()) {
      chosen.push_back(r);
    } else {
      acc.pop_back();
    }
  }
  return chosen;
}

Matrix transpose(const Matrix& m) {
  if (m.empty()) return {};
  Matrix t(m.front().size(), std::vector<Rational>(m.size()));
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m[r].size(); ++c) t[c][r] = m[r][c];
  }
  return t;
}

Word rotate_min(const Word& w) {
  Word best = w;
  Word cur = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

Word rotated(const Word& w, std::size_t start) {
  Word out(w.begin() + static_cast<std::ptrdiff_t>(start), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(start));
  return out;
}

const Series& image_or_self(const GradedAutomorphism& phi, int arrow, Series& scratch) {
  auto it = phi.find(arrow);
  if (it != phi.end()) return it->second;
  scratch = Series::monomial({arrow});
  return scratch;
}

void require_unit_multiplicities(const WeightedQuiver& q) {
  if (!q.has_unit_multiplicities()) {
    throw Error("bundled_arrows", "potentials need a quiver with unit multiplicities; split the bundles first");
  }
}

}  // namespace

Series cyclic_normal_form(const WeightedQuiver& q, const Series& s) {
  Series out;
  for (const auto& [w, c] : s.terms) {
    if (!is_path(q, w) || word_source(q, w) != word_target(q, w)) {
      throw Error("not_cycle", "term " + format_series(Series::monomial(w)) + " is not an oriented cycle");
    }
    if (w.size() == 1) throw Error("loop_term", "term " + format_series(Series::monomial(w)) + " is a loop");
    if (!word_weight(q, w).is_trivial()) {
      throw Error("weight", "term " + format_series(Series::monomial(w)) + " has weight " +
                                format_element(word_weight(q, w)));
    }
    out.add(rotate_min(w), c);
  }
  return out;
}

bool weight_compatible(const WeightedQuiver& q, const Series& s) {
  return std::all_of(s.terms.begin(), s.terms.end(),
                     [&](const auto& t) { return is_path(q, t.first) && word_weight(q, t.first).is_trivial(); });
}

std::vector<ForwardBackwardBlock> degree2_forward_backward(const WeightedQuiver& q, const Series& s) {
  std::map<std::tuple<int, int, GroupElement>, ForwardBackwardBlock> blocks;
  std::map<int, std::pair<std::tuple<int, int, GroupElement>, bool>> where;
  for (const auto& a : q.arrows()) {
    const bool forward = a.src < a.dst;
    auto key = forward ? std::make_tuple(a.src, a.dst, a.weight) : std::make_tuple(a.dst, a.src, invert(a.weight));
    auto& b = blocks[key];
    b.i = std::get<0>(key);
    b.j = std::get<1>(key);
    b.g = std::get<2>(key);
    (forward ? b.forward : b.backward).push_back(a.id);
    where[a.id] = {key, forward};
  }
  for (auto& [key, b] : blocks) b.c.assign(b.forward.size(), std::vector<Rational>(b.backward.size(), Rational(0)));
  auto index = [](const std::vector<int>& ids, int id) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  for (const auto& [w, c] : s.terms) {
    if (w.size() != 2) continue;
    const auto& [kx, fx] = where.at(w[0]);
    const int f = fx ? w[0] : w[1];
    const int b = fx ? w[1] : w[0];
    auto& block = blocks.at(kx);
    block.c[index(block.forward, f)][index(block.backward, b)] += c;
  }
  std::vector<ForwardBackwardBlock> out;
  for (auto& [key, b] : blocks) out.push_back(std::move(b));
  return out;
}

bool is_trivial(const WeightedQuiver& q, const Series& s) {
  const Series normal = cyclic_normal_form(q, s);
  if (normal.max_degree() > 2) return false;
  for (const auto& b : degree2_forward_backward(q, normal)) {
    if (b.forward.size() != b.backward.size() || rank_of(b.c) != b.forward.size()) return false;
  }
  return true;
}

void check_automorphism(const WeightedQuiver& q, const GradedAutomorphism& phi) {
  for (const auto& [id, image] : phi) {
    const Arrow* a = q.find_arrow(id);
    if (a == nullptr) throw Error("incompatible_automorphism", "unknown arrow " + std::to_string(id));
    for (const auto& [w, c] : image.terms) {
      if (!is_path(q, w) || word_source(q, w) != a->src || word_target(q, w) != a->dst ||
          word_weight(q, w) != a->weight) {
        throw Error("incompatible_automorphism",
                    "image of arrow " + std::to_string(id) + " contains " + format_series(Series::monomial(w)));
      }
    }
  }
}

bool is_unitriangular(const GradedAutomorphism& phi) {
  for (const auto& [id, image] : phi) {
    for (const auto& [w, c] : image.terms) {
      if (w.size() == 1 && !(w.front() == id && c == 1)) return false;
      if (w.empty()) return false;
    }
    auto it = image.terms.find(Word{id});
    if (it == image.terms.end()) return false;
  }
  return true;
}

Series apply_automorphism(const WeightedQuiver& q, const GradedAutomorphism& phi, const Series& s,
                          std::size_t max_degree) {
  check_automorphism(q, phi);
  Series out;
  Series scratch;
  for (const auto& [w, c] : s.terms) {
    Series product = Series::monomial({}, c);
    for (int letter : w) {
      product = multiply(product, image_or_self(phi, letter, scratch), max_degree);
      if (product.is_zero()) break;
    }
    out += product;
  }
  return out;
}

Series apply_linear_part(const GradedAutomorphism& phi, const Series& degree2) {
  auto linear = [&](int arrow) {
    Series out;
    auto it = phi.find(arrow);
    if (it == phi.end()) return Series::monomial({arrow});
    for (const auto& [w, c] : it->second.terms) {
      if (w.size() == 1) out.add(w, c);
    }
    return out;
  };
  Series out;
  for (const auto& [w, c] : degree2.terms) {
    if (w.size() != 2) continue;
    out += multiply(linear(w[0]), linear(w[1]), 2).scaled(c);
  }
  return out;
}

std::size_t default_truncation(const Series& s) { return 2 * s.max_degree() + 2; }

SplitResult split(const WeightedQuiver& q, const Series& s, std::size_t truncation) {
  require_valid(q);
  require_unit_multiplicities(q);
  Series current = cyclic_normal_form(q, s);
  if (truncation < current.max_degree()) {
    throw Error("truncation_too_small", "truncation degree " + std::to_string(truncation) +
                                            " is below the potential's degree " +
                                            std::to_string(current.max_degree()));
  }
  SplitResult out;
  out.truncation = truncation;

  // Linear change of arrows so that the degree-2 part becomes sum a_p b_p.
  GradedAutomorphism psi;
  for (const auto& block : degree2_forward_backward(q, current)) {
    const auto pivot_rows = greedy_rows(block.c);
    const std::size_t r = pivot_rows.size();
    if (r == 0) continue;
    Matrix p_rows;
    for (std::size_t pr : pivot_rows) p_rows.push_back(block.c[pr]);
    const auto pivot_cols = greedy_rows(transpose(p_rows));
    std::vector<std::size_t> other_cols;
    for (std::size_t c = 0; c < block.backward.size(); ++c) {
      if (std::find(pivot_cols.begin(), pivot_cols.end(), c) == pivot_cols.end()) other_cols.push_back(c);
    }
    Matrix m(r, std::vector<Rational>(r));
    Matrix rest(r, std::vector<Rational>(other_cols.size()));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t k = 0; k < r; ++k) m[i][k] = p_rows[i][pivot_cols[k]];
      for (std::size_t t = 0; t < other_cols.size(); ++t) rest[i][t] = p_rows[i][other_cols[t]];
    }
    const Matrix m_inv = inverse_of(m);

    // Forward: non-pivot rows are combinations of pivot rows; fold them into a'_p.
    for (std::size_t i = 0; i < r; ++i) psi[block.forward[pivot_rows[i]]] = Series::monomial({block.forward[pivot_rows[i]]});
    for (std::size_t f = 0; f < block.forward.size(); ++f) {
      if (std::find(pivot_rows.begin(), pivot_rows.end(), f) != pivot_rows.end()) continue;
      for (std::size_t p = 0; p < r; ++p) {
        Rational lambda = 0;
        for (std::size_t k = 0; k < r; ++k) lambda += block.c[f][pivot_cols[k]] * m_inv[k][p];
        psi[block.forward[pivot_rows[p]]].add({block.forward[f]}, -lambda);
      }
    }
    // Backward: old pivot-column arrows in terms of b'_p and the complement.
    for (std::size_t sidx = 0; sidx < r; ++sidx) {
      Series image;
      for (std::size_t p = 0; p < r; ++p) image.add({block.backward[pivot_cols[p]]}, m_inv[sidx][p]);
      for (std::size_t t = 0; t < other_cols.size(); ++t) {
        Rational x = 0;
        for (std::size_t p = 0; p < r; ++p) x += m_inv[sidx][p] * rest[p][t];
        image.add({block.backward[other_cols[t]]}, -x);
      }
      psi[block.backward[pivot_cols[sidx]]] = std::move(image);
    }
    for (std::size_t p = 0; p < r; ++p) {
      out.pairs.push_back({block.forward[pivot_rows[p]], block.backward[pivot_cols[p]]});
    }
  }
  for (auto it = psi.begin(); it != psi.end();) {
    it = it->second == Series::monomial({it->first}) ? psi.erase(it) : std::next(it);
  }
  out.change_of_arrows = psi;
  current = cyclic_normal_form(q, apply_automorphism(q, psi, current, truncation));

  Series pairing;
  std::map<int, std::size_t> forward_index;
  std::map<int, std::size_t> backward_index;
  for (std::size_t p = 0; p < out.pairs.size(); ++p) {
    pairing.add({out.pairs[p].forward, out.pairs[p].backward}, 1);
    forward_index[out.pairs[p].forward] = p;
    backward_index[out.pairs[p].backward] = p;
  }
  pairing = cyclic_normal_form(q, pairing);
  if (current.part(2) != pairing) throw Error("internal", "change of arrows did not diagonalize the degree-2 part");

  GradedAutomorphism total = psi;
  for (const auto& a : q.arrows()) total.try_emplace(a.id, Series::monomial({a.id}));

  // Unitriangular corrections phi(a_p) = a_p - v_p, phi(b_p) = b_p - u_p.
  for (std::size_t round = 0;; ++round) {
    std::vector<Series> u(out.pairs.size());
    std::vector<Series> v(out.pairs.size());
    bool bad = false;
    for (const auto& [w, c] : current.terms) {
      if (w.size() < 3) continue;
      auto fa = std::find_if(w.begin(), w.end(), [&](int x) { return forward_index.count(x) != 0; });
      if (fa != w.end()) {
        const Word r = rotated(w, static_cast<std::size_t>(fa - w.begin()));
        u[forward_index.at(r.front())].add(Word(r.begin() + 1, r.end()), c);
        bad = true;
        continue;
      }
      auto fb = std::find_if(w.begin(), w.end(), [&](int x) { return backward_index.count(x) != 0; });
      if (fb != w.end()) {
        const Word r = rotated(w, static_cast<std::size_t>(fb - w.begin()) + 1);
        v[backward_index.at(r.back())].add(Word(r.begin(), r.end() - 1), c);
        bad = true;
      }
    }
    if (!bad) break;
    if (round > truncation) {
      throw Error("no_stabilization", "splitting did not stabilize below degree " + std::to_string(truncation));
    }
    GradedAutomorphism phi;
    for (std::size_t p = 0; p < out.pairs.size(); ++p) {
      if (!v[p].is_zero()) phi[out.pairs[p].forward] = Series::monomial({out.pairs[p].forward}) - v[p];
      if (!u[p].is_zero()) phi[out.pairs[p].backward] = Series::monomial({out.pairs[p].backward}) - u[p];
    }
    current = cyclic_normal_form(q, apply_automorphism(q, phi, current, truncation));
    for (auto& [id, image] : total) image = apply_automorphism(q, phi, image, truncation);
    ++out.iterations;
  }
  for (auto it = total.begin(); it != total.end();) {
    it = it->second == Series::monomial({it->first}) ? total.erase(it) : std::next(it);
  }
  out.automorphism = std::move(total);

  std::set<int> trivial_arrows;
  for (const auto& p : out.pairs) {
    trivial_arrows.insert(p.forward);
    trivial_arrows.insert(p.backward);
  }
  out.trivial_potential = pairing;
  for (const auto& [w, c] : current.terms) {
    if (w.size() == 2 && pairing.terms.count(w) != 0) continue;
    if (std::any_of(w.begin(), w.end(), [&](int x) { return trivial_arrows.count(x) != 0; })) {
      throw Error("internal", "trivial arrows left in the reduced potential");
    }
    out.reduced_potential.add(w, c);
  }
  if (!out.reduced_potential.is_zero() && out.reduced_potential.min_degree() < 3) {
    throw Error("internal", "reduced potential has a term of degree below 3");
  }
  out.reduced_quiver = WeightedQuiver(q.group());
  for (const auto& vtx : q.vertices()) out.reduced_quiver.add_vertex(vtx.id, vtx.frozen);
  for (const auto& a : q.arrows()) {
    if (trivial_arrows.count(a.id) == 0) out.reduced_quiver.add_arrow_with_id(a.id, a.src, a.dst, a.weight);
  }
  return out;
}

QpPremutation qp_premutate(const QuiverWithPotential& qp, int k) {
  const WeightedQuiver& q = qp.quiver;
  require_unit_multiplicities(q);
  const Series s = cyclic_normal_form(q, qp.potential);
  // A 2-cycle term through k is the more specific complaint, so report it
  // before the generic quiver check.
  for (const auto& [w, c] : s.terms) {
    if (w.size() == 2 && (q.arrow(w[0]).src == k || q.arrow(w[0]).dst == k)) {
      throw Error("two_cycle_through_k", "potential term " + format_series(Series::monomial(w)) +
                                             " is a 2-cycle through vertex " + std::to_string(k));
    }
  }
  check_mutable_at(q, k, MutationOptions{true});
  QpPremutation out;
  out.premutation = premutate(q, k, MutationOptions{true});

  for (const auto& [w, c] : s.terms) {
    std::size_t start = 0;
    while (start < w.size() && q.arrow(w[start]).src == k) ++start;
    const Word r = rotated(w, start % w.size());
    Word bracketed;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (q.arrow(r[i]).dst == k) {
        bracketed.push_back(out.premutation.composite_id(r[i], r[i + 1]));
        ++i;
      } else {
        bracketed.push_back(r[i]);
      }
    }
    out.bracket.add(bracketed, c);
  }
  for (const auto& [id, origin] : out.premutation.provenance) {
    if (origin.kind != OriginKind::composite) continue;
    const Word term{id, origin.second, origin.first};
    if (!word_weight(out.premutation.quiver, term).is_trivial()) {
      throw Error("internal", "Delta_k term with nontrivial weight");
    }
    out.delta.add(term, 1);
  }
  const WeightedQuiver& qt = out.premutation.quiver;
  out.bracket = cyclic_normal_form(qt, out.bracket);
  out.delta = cyclic_normal_form(qt, out.delta);
  out.potential = out.bracket + out.delta;
  return out;
}

QpMutation qp_mutate(const QuiverWithPotential& qp, int k, std::size_t truncation) {
  QpMutation out;
  out.premutation = qp_premutate(qp, k);
  out.split = split(out.premutation.premutation.quiver, out.premutation.potential, truncation);
  out.result = {out.split.reduced_quiver, out.split.reduced_potential};
  const auto expected = mutate(qp.quiver, k, MutationOptions{true}).result;
  out.matches_weighted_mutation = weight_reduce(out.result.quiver).quiver == expected;
  return out;
}

}  // namespace wquiv
