// Acceptance driver: one PASS/FAIL line per primary criterion. Seeds, case
// counts and time budgets are pinned here; the exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "wquiv/analysis.hpp"
#include "wquiv/corpus.hpp"
#include "wquiv/error.hpp"
#include "wquiv/equivalence.hpp"
#include "wquiv/io.hpp"
#include "wquiv/mutation.hpp"
#include "wquiv/potential.hpp"
#include "wquiv/tame.hpp"

using namespace wquiv;

namespace {

// Time budgets in seconds.
constexpr double kGoldenBudget = 1.0;
constexpr double kOracleBudget = 10.0;
constexpr double kSignCoherenceBudget = 300.0;

constexpr std::size_t kOracleCases = 1000;
constexpr std::size_t kInvolutionCases = 1000;
constexpr int kSignCoherenceDepth = 8;
constexpr std::size_t kOrientedTrivialCases = 100;
constexpr int kOrientedTrivialDepth = 5;
constexpr int kProbeDepth = 6;
constexpr std::size_t kSplitCases = 200;
constexpr std::size_t kSplitTruncation = 8;
constexpr std::size_t kQpCases = 100;
constexpr std::size_t kCnCases = 100;
constexpr std::size_t kGaugeCases = 1000;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

// Records the first failure and counts the rest.
struct Tally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  std::string summary() const {
    std::string s = std::to_string(cases - failures) + "/" + std::to_string(cases) + " cases";
    if (failures) s += "; first failure: " + first;
    return s;
  }
};

bool up_to_inverse_and_conjugacy(const GroupElement& a, const GroupElement& b) {
  return are_conjugate(a, b) || are_conjugate(a, invert(b));
}

WeightedQuiver running_example_left(const GroupElement& wc, const GroupElement& wd) {
  const auto k = wc.kind();
  WeightedQuiver q(k);
  q.add_vertex(1).add_vertex(2).add_vertex(3);
  q.add_arrow_with_id(1, 1, 2, identity(k));
  q.add_arrow_with_id(2, 2, 3, identity(k));
  q.add_arrow_with_id(3, 3, 1, wc);
  q.add_arrow_with_id(4, 3, 1, wd);
  return q;
}

Outcome running_example_golden() {
  Timer t;
  auto q = load_quiver(std::filesystem::path(WQUIV_DATA_DIR) / "running_example.json");
  auto k = q.group();
  auto result = mutate(q, 2).result;
  WeightedQuiver expect(k);
  expect.add_vertex(1).add_vertex(2).add_vertex(3);
  expect.add_arrow(2, 1, identity(k));
  expect.add_arrow(3, 2, identity(k));
  expect.add_arrow(3, 1, parse_element(k, "x1"));
  double s = t.seconds();
  bool ok = q == running_example_left(identity(k), parse_element(k, "x1")) && result == expect;
  return {ok && s < kGoldenBudget, "result " + canonical_key(result) + ", " + fmt(s) + " s (budget " +
                                       fmt(kGoldenBudget) + " s)"};
}

Outcome trivial_group_oracle() {
  Timer t;
  Tally tally;
  gen::Source s(1001);
  gen::ShapeOptions o{.min_vertices = 1, .max_vertices = 6, .max_parallel = 2, .density = 0.5,
                      .random_weights = false};
  for (std::size_t i = 0; i < kOracleCases; ++i) {
    auto q = gen::quiver(s, GroupKind::trivial(), o);
    auto ids = q.vertex_ids();
    auto k = static_cast<std::size_t>(s.range(0, static_cast<int>(ids.size()) - 1));
    auto got = oracle::exchange_matrix(mutate(q, ids[k]).result);
    tally.check(got == oracle::matrix_mutation(oracle::exchange_matrix(q), k),
                "case " + std::to_string(i) + " at " + std::to_string(ids[k]));
  }
  double sec = t.seconds();
  return {tally.failures == 0 && sec < kOracleBudget,
          tally.summary() + ", " + fmt(sec) + " s (budget " + fmt(kOracleBudget) + " s)"};
}

Outcome involution() {
  Tally tally;
  gen::Source s(1002);
  for (std::size_t i = 0; i < kInvolutionCases; ++i) {
    auto kind = gen::kind_for_case(i);
    auto q = gen::quiver(s, kind, {});
    int k = s.pick(q.vertex_ids());
    auto once = mutate(q, k, {.lenient = true}).result;
    auto twice = mutate(once, k, {.lenient = true}).result;
    tally.check(twice == q, kind.describe() + " case " + std::to_string(i));
  }
  return {tally.failures == 0, tally.summary() + " over trivial, cyclic(6), free-abelian(2), free(2)"};
}

Outcome sign_coherence() {
  Timer t;
  Tally tally;
  std::size_t states = 0;
  auto catalog = small_quiver_catalog(4, 2);
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    auto c = sign_coherence_case(catalog[i], kSignCoherenceDepth, "catalog-" + std::to_string(i));
    states += c.states;
    tally.check(c.passed(), c.name + " " + canonical_key(catalog[i]) + ": frozen-arrow states " +
                                std::to_string(c.frozen_arrow_states) + ", incoherent " +
                                std::to_string(c.incoherent_states) + " " + c.detail);
  }
  double sec = t.seconds();
  return {tally.failures == 0 && sec < kSignCoherenceBudget,
          std::to_string(catalog.size()) + " quivers, " + std::to_string(states) + " framed states to length " +
              std::to_string(kSignCoherenceDepth) + ", " + tally.summary() + ", " + fmt(sec) + " s (budget " +
              fmt(kSignCoherenceBudget) + " s)"};
}

// Frames q over free(1), then adds probes j' -> i' (or i' -> j') of weight
// x1 between every pair of frozen vertices. Probes never touch a mutable
// vertex, so a surviving 2-cycle appears exactly when mutation creates an
// arrow between frozen vertices against a probe.
WeightedQuiver probed(const WeightedQuiver& base, bool reverse) {
  auto kind = GroupKind::free(1);
  WeightedQuiver q(kind);
  for (const auto& v : base.vertices()) q.add_vertex(v.id);
  for (const auto& a : base.arrows()) q.add_arrow(a.src, a.dst, identity(kind), a.multiplicity);
  auto f = frame(q);
  auto frozen = f.frozen_ids();
  auto x1 = GroupElement::generator(kind, 1);
  for (std::size_t a = 0; a < frozen.size(); ++a)
    for (std::size_t b = a + 1; b < frozen.size(); ++b)
      f = reverse ? attach_probe_arrow(f, frozen[b], frozen[a], x1) : attach_probe_arrow(f, frozen[a], frozen[b], x1);
  return f;
}

Outcome nondegeneracy() {
  Tally tally;
  // A quarter of the corpus for each vertex count 2..5.
  std::vector<CorpusEntry> corpus;
  for (int n = 2; n <= 5; ++n) {
    auto part = generate_corpus({.count = kOrientedTrivialCases / 4, .n = n, .group = GroupKind::free(2),
                                 .policy = WeightPolicy::oriented_cycle_trivial,
                                 .seed = 1005 + static_cast<std::uint64_t>(n)});
    corpus.insert(corpus.end(), part.begin(), part.end());
  }
  std::size_t states = 0;
  for (const auto& e : corpus) {
    auto v = check_nondegenerate(e.quiver, kOrientedTrivialDepth);
    states += v.states;
    tally.check(oriented_cycles_trivial(e.quiver).all_trivial && v.clean(), e.name);
  }
  Tally probes;
  std::size_t probe_states = 0;
  for (const auto& q : small_quiver_catalog(4, 2)) {
    for (bool reverse : {false, true}) {
      auto v = check_nondegenerate(probed(q, reverse), kProbeDepth);
      probe_states += v.states;
      std::string where = canonical_key(q);
      if (!v.clean()) {
        std::ostringstream seq;
        for (int x : v.counterexample->sequence) seq << x << ' ';
        where += " after " + seq.str();
      }
      probes.check(v.clean(), where);
    }
  }
  return {tally.failures == 0 && probes.failures == 0,
          "oriented-cycle-trivial depth " + std::to_string(kOrientedTrivialDepth) + ": " + tally.summary() + " (" +
              std::to_string(states) + " states); probes depth " + std::to_string(kProbeDepth) + ": " +
              probes.summary() + " (" + std::to_string(probe_states) + " states)"};
}

WeightedQuiver restrict_to(const WeightedQuiver& q, const std::vector<TrivialPair>& pairs) {
  WeightedQuiver out(q.group());
  for (const auto& v : q.vertices()) out.add_vertex(v.id, v.frozen);
  for (const auto& p : pairs)
    for (int id : {p.forward, p.backward}) {
      const auto& a = q.arrow(id);
      out.add_arrow_with_id(a.id, a.src, a.dst, a.weight);
    }
  return out;
}

// A random unitriangular automorphism: each arrow plus small multiples of
// parallel paths of length 2 with the same weight.
GradedAutomorphism random_unitriangular(gen::Source& s, const WeightedQuiver& q) {
  GradedAutomorphism phi;
  std::vector<Arrow> arrows(q.arrows().begin(), q.arrows().end());
  for (const auto& a : arrows) {
    Series img = Series::monomial({a.id});
    for (const auto& b : arrows)
      for (const auto& c : arrows) {
        if (b.src != a.src || b.dst != c.src || c.dst != a.dst || b.weight * c.weight != a.weight) continue;
        if (s.chance(0.3)) img.add({b.id, c.id}, Rational(s.range(-2, 2)));
      }
    phi[a.id] = img;
  }
  return phi;
}

Outcome splitting() {
  Tally tally, lemma;
  gen::Source s(1006);
  std::size_t pairs = 0, nonzero_reduced = 0;
  for (std::size_t i = 0; i < kSplitCases; ++i) {
    auto kind = gen::kind_for_case(i + 1);  // skip trivial: cyclic, free-abelian, free, trivial
    auto q = gen::quiver(s, kind, {.min_vertices = 2, .max_vertices = 4, .max_parallel = 2, .density = 0.7,
                                   .allow_two_cycles = true, .random_weights = i % 3 != 0});
    Series pot;
    for (int tries = 0; tries < 5 && pot.is_zero(); ++tries) pot = gen::potential(s, q, 2, 4, 0.4);
    const std::string name = "case " + std::to_string(i) + " (" + kind.describe() + ")";
    try {
      auto r = split(q, pot, kSplitTruncation);
      pairs += r.pairs.size();
      nonzero_reduced += !r.reduced_potential.is_zero();
      bool ok = r.reduced_potential.is_zero() || r.reduced_potential.min_degree() >= 3;
      if (!r.pairs.empty()) ok = ok && is_trivial(restrict_to(q, r.pairs), r.trivial_potential);
      auto image = cyclic_normal_form(q, apply_automorphism(q, r.automorphism, pot, kSplitTruncation));
      auto expect = cyclic_normal_form(q, r.trivial_potential + r.reduced_potential);
      ok = ok && image == expect;
      tally.check(ok, name);

      // Degree-2 identity for the linear change of arrows and for a random
      // unitriangular map.
      auto deg2 = cyclic_normal_form(q, pot).part(2);
      auto lin = cyclic_normal_form(q, apply_automorphism(q, r.change_of_arrows, pot, kSplitTruncation)).part(2);
      bool l1 = lin == cyclic_normal_form(q, apply_linear_part(r.change_of_arrows, deg2));
      auto phi = random_unitriangular(s, q);
      auto img = cyclic_normal_form(q, apply_automorphism(q, phi, pot, kSplitTruncation)).part(2);
      bool l2 = img == cyclic_normal_form(q, apply_linear_part(phi, deg2)) && img == deg2;
      lemma.check(l1 && l2, name);
    } catch (const Error& e) {
      tally.check(false, name + ": " + e.code() + " " + e.what());
    }
  }
  return {tally.failures == 0 && lemma.failures == 0,
          "split N=" + std::to_string(kSplitTruncation) + ": " + tally.summary() + " (" + std::to_string(pairs) +
              " trivial pairs, " + std::to_string(nonzero_reduced) + " nonzero reduced parts); degree-2 identity: " +
              lemma.summary()};
}

Outcome qp_vs_weight_reduction() {
  Tally family, seeded;
  // The running example with every combination of weights on c and d in
  // {e, x1} and every potential built from its trivial-weight 3-cycles.
  auto k = GroupKind::free(1);
  auto e = identity(k), x1 = GroupElement::generator(k, 1);
  for (const auto& wc : {e, x1})
    for (const auto& wd : {e, x1}) {
      auto q = running_example_left(wc, wd);
      std::vector<Series> pots{Series{}};
      if (wc.is_trivial()) pots.push_back(Series::monomial({1, 2, 3}));
      if (wd.is_trivial()) pots.push_back(Series::monomial({1, 2, 4}));
      if (wc.is_trivial() && wd.is_trivial()) pots.push_back(Series::monomial({1, 2, 3}) - Series::monomial({1, 2, 4}, 2));
      for (const auto& pot : pots)
        for (int v : {1, 2, 3}) {
          auto m = qp_mutate({q, pot}, v, kSplitTruncation);
          family.check(m.matches_weighted_mutation,
                       "wt(c)=" + format_element(wc) + " wt(d)=" + format_element(wd) + " S=" + format_series(pot) +
                           " at " + std::to_string(v));
        }
    }
  gen::Source s(1007);
  for (std::size_t i = 0; i < kQpCases; ++i) {
    auto kind = gen::kind_for_case(i);
    auto q = gen::quiver(s, kind, {.min_vertices = 3, .max_vertices = 5, .max_parallel = 2, .density = 0.7,
                                   .random_weights = i % 2 == 0});
    auto pot = gen::potential(s, q, 3, 4, 0.6);
    int v = s.pick(q.vertex_ids());
    try {
      seeded.check(qp_mutate({q, pot}, v, kSplitTruncation).matches_weighted_mutation,
                   "case " + std::to_string(i));
    } catch (const Error& err) {
      seeded.check(false, "case " + std::to_string(i) + ": " + err.code());
    }
  }
  return {family.failures == 0 && seeded.failures == 0,
          "running-example family " + family.summary() + "; seeded " + seeded.summary()};
}

Outcome cn_suite() {
  Tally member, closure, canon, lemma;
  auto kind = GroupKind::free(1);
  auto t = GroupElement::generator(kind, 1);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < kCnCases; ++i) {
    int n = 3 + static_cast<int>(i % 6);  // 3..8
    auto entry = generate_corpus({.count = 1, .n = n, .group = kind, .policy = WeightPolicy::cn_reverse,
                                  .seed = 1008 + i}).front();
    const auto& q = entry.quiver;
    const std::string name = "n=" + std::to_string(n) + " seed " + std::to_string(1008 + i);
    auto m = cn_membership(q);
    member.check(m.member && up_to_inverse_and_conjugacy(*m.t, t), name);
    if (!m.member) continue;

    bool closed = true;
    for (int v : q.vertex_ids()) {
      auto r = mutate(q, v).result;
      auto mm = cn_membership(r);
      closed = closed && mm.member && up_to_inverse_and_conjugacy(*mm.t, t) && euler_characteristic(r) == 0;
    }
    closure.check(closed, name);

    try {
      auto c = canonicalize_to_cycle(q);
      auto df = delta_free_cycles(c.quiver);
      bool ok = c.sequence.size() <= static_cast<std::size_t>(n - 3) &&
                c.quiver.arrows().size() == static_cast<std::size_t>(n) && df.size() == 1 &&
                df[0].steps.size() == static_cast<std::size_t>(n) && !is_oriented(df[0]) &&
                up_to_inverse_and_conjugacy(cycle_weight(c.quiver, df[0]), t);
      canon.check(ok, name);
    } catch (const Error& e) {
      canon.check(false, name + ": " + e.code());
    }

    // Every trivial-weight simple cycle is a triangle.
    auto tris = oracle::triangle_edge_sets(q);
    bool ok = true;
    for (const auto& edges : oracle::simple_cycle_edge_sets(q)) {
      ++cycles;
      if (!oracle::walk_weight(q, oracle::walk_edge_set(q, edges)).is_trivial()) continue;
      ok = ok && std::find(tris.begin(), tris.end(), edges) != tris.end();
    }
    lemma.check(ok, name);
  }
  bool pass = member.failures + closure.failures + canon.failures + lemma.failures == 0;
  return {pass, "membership " + member.summary() + "; mutation closure " + closure.summary() +
                    "; canonicalization within n-3 steps " + canon.summary() + "; trivial cycles are triangles " +
                    lemma.summary() + " (" + std::to_string(cycles) + " simple cycles)"};
}

Outcome equivalence() {
  Tally round, equi, trees, abelian;
  gen::Source s(1009);
  for (std::size_t i = 0; i < kGaugeCases; ++i) {
    auto kind = gen::kind_for_case(i);
    auto q = gen::quiver(s, kind, {});
    auto g = gen::gauge(s, q, 3);
    auto moved = apply_gauge(q, g);
    auto r = are_equivalent(q, moved);
    round.check(apply_gauge(moved, inverse_gauge(g)) == q && r.outcome == EquivalenceOutcome::equivalent &&
                    apply_gauge(q, *r.witness) == moved,
                "case " + std::to_string(i));
    int v = s.pick(q.vertex_ids());
    equi.check(apply_gauge(mutate(q, v).result, mutate_gauge(g, v)) == mutate(moved, v).result,
               "case " + std::to_string(i) + " at " + std::to_string(v));
  }
  for (std::size_t i = 0; i < 200; ++i) {
    auto kind = gen::kind_for_case(i);
    auto q = gen::tree(s, kind, s.range(1, 9));
    auto v = classify_tame(q);
    trees.check(v.kind == TameKind::gauge_trivial && apply_gauge(q, *v.witness) == trivialize_weights(q),
                "tree " + std::to_string(i));
  }
  for (std::size_t i = 0; i < 200; ++i) {
    auto kind = i % 2 ? GroupKind::free_abelian(2) : GroupKind::cyclic(5);
    auto q = gen::quiver(s, kind, {.min_vertices = 3, .max_vertices = 6, .density = 0.8});
    if (connected_components(q).size() != 1 || q.arrows().size() < q.vertex_ids().size()) {
      --i;
      continue;
    }
    // Perturb one arrow; the result is equivalent iff the arrow is a bridge.
    auto b = q;
    const auto& a = q.arrows()[static_cast<std::size_t>(s.range(0, static_cast<int>(q.arrows().size()) - 1))];
    b.set_weight(a.id, a.weight * GroupElement::generator(kind, 1));
    auto r = are_equivalent(q, b);
    bool ok = false;
    if (r.outcome == EquivalenceOutcome::not_equivalent) {
      auto wa = cycle_weight(q, *r.distinguishing_cycle), wb = cycle_weight(b, *r.distinguishing_cycle);
      ok = wa != wb && wa == *r.weight_a && wb == *r.weight_b;
    } else if (r.outcome == EquivalenceOutcome::equivalent) {
      auto without = q;
      without.remove_arrow(a.id);
      ok = connected_components(without).size() > 1 && apply_gauge(q, *r.witness) == b;
    }
    abelian.check(ok, kind.describe() + " case " + std::to_string(i));
  }
  bool pass = round.failures + equi.failures + trees.failures + abelian.failures == 0;
  return {pass, "gauge round trips " + round.summary() + "; mutation equivariance " + equi.summary() +
                    "; trees gauge-trivial " + trees.summary() + "; abelian invariants " + abelian.summary()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"running-example-golden", running_example_golden},
      {"trivial-group-oracle", trivial_group_oracle},
      {"involution", involution},
      {"sign-coherence", sign_coherence},
      {"nondegeneracy", nondegeneracy},
      {"splitting", splitting},
      {"qp-vs-weight-reduction", qp_vs_weight_reduction},
      {"cn-suite", cn_suite},
      {"equivalence", equivalence},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Timer t;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %s: %s [%s s]\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), fmt(t.seconds()).c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
