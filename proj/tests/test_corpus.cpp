#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "wquiv/analysis.hpp"
#include "wquiv/corpus.hpp"
#include "wquiv/io.hpp"
#include "wquiv/tame.hpp"

using namespace wquiv;
using fixture::error_code;

TEST_CASE("rng bounds") {
  Rng r(1);
  for (int i = 0; i < 10000; ++i) {
    auto x = r.below(7);
    REQUIRE(x < 7);
    auto y = r.between(-3, 3);
    REQUIRE((y >= -3 && y <= 3));
  }
}

TEST_CASE("policies hold their postconditions") {
  for (auto policy : {WeightPolicy::trivial, WeightPolicy::gauge, WeightPolicy::oriented_cycle_trivial,
                      WeightPolicy::free_random}) {
    auto corpus = generate_corpus({.count = 30, .n = 5, .group = GroupKind::free(2), .policy = policy, .seed = 3});
    REQUIRE(corpus.size() == 30);
    for (const auto& e : corpus) {
      REQUIRE(validate(e.quiver).empty());
      REQUIRE(two_cycles(e.quiver).empty());
      if (policy == WeightPolicy::trivial)
        for (const auto& a : e.quiver.arrows()) REQUIRE(a.weight.is_trivial());
      if (policy == WeightPolicy::oriented_cycle_trivial || policy == WeightPolicy::gauge)
        REQUIRE(oriented_cycles_trivial(e.quiver).all_trivial);
    }
    CHECK(corpus.front().name.rfind(policy_name(policy), 0) == 0);
  }
}

TEST_CASE("cn_reverse corpus members pass membership") {
  auto corpus = generate_corpus(
      {.count = 20, .n = 5, .group = GroupKind::free(1), .policy = WeightPolicy::cn_reverse, .seed = 9});
  for (const auto& e : corpus) {
    REQUIRE(cn_membership(e.quiver).member);
    REQUIRE(e.sequence.size() <= 2);
  }
  CHECK(error_code([] {
          generate_corpus({.count = 1, .n = 5, .group = GroupKind::trivial(), .policy = WeightPolicy::cn_reverse});
        }) == "unsatisfiable");
}

TEST_CASE("same seed gives byte-identical output") {
  CorpusSpec spec{.count = 10, .n = 6, .group = GroupKind::cyclic(4), .policy = WeightPolicy::free_random, .seed = 77};
  auto a = generate_corpus(spec), b = generate_corpus(spec);
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(serialize_quiver(a[i].quiver) == serialize_quiver(b[i].quiver));
  spec.seed = 78;
  auto c = generate_corpus(spec);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs = differs || serialize_quiver(a[i].quiver) != serialize_quiver(c[i].quiver);
  CHECK(differs);
}

TEST_CASE("policy names round trip") {
  for (auto p : {WeightPolicy::trivial, WeightPolicy::gauge, WeightPolicy::oriented_cycle_trivial,
                 WeightPolicy::cn_reverse, WeightPolicy::free_random, WeightPolicy::catalog})
    CHECK(parse_policy(policy_name(p)) == p);
  CHECK(error_code([] { parse_policy("nope"); }) == "parse");
}

TEST_CASE("small catalog class counts") {
  auto cat = small_quiver_catalog(4, 2);
  std::size_t by_size[5] = {0, 0, 0, 0, 0};
  std::set<std::string> keys;
  for (const auto& q : cat) {
    by_size[q.vertex_ids().size()]++;
    keys.insert(canonical_key(q));
    REQUIRE(two_cycles(q).empty());
  }
  // Quivers without 2-cycles and at most two parallel arrows: per unordered
  // pair 5 states (none, 1 or 2 arrows either way), up to relabeling.
  CHECK(by_size[1] == 1);
  CHECK(by_size[2] == 3);
  CHECK(by_size[3] == 25);
  CHECK(by_size[4] == 695);
  CHECK(keys.size() == cat.size());
}

TEST_CASE("small catalog matches Burnside counts for three vertices") {
  // Count orbits of 5^3 labelled configurations under S3 directly.
  std::set<std::vector<int>> orbits;
  int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  // b[i][j] in {-2..2} for i < j.
  for (int x = -2; x <= 2; ++x)
    for (int y = -2; y <= 2; ++y)
      for (int z = -2; z <= 2; ++z) {
        int m[3][3] = {{0, x, y}, {-x, 0, z}, {-y, -z, 0}};
        std::vector<int> best;
        for (auto& p : perms) {
          std::vector<int> key{m[p[0]][p[1]], m[p[0]][p[2]], m[p[1]][p[2]]};
          if (best.empty() || key < best) best = key;
        }
        orbits.insert(best);
      }
  CHECK(orbits.size() == 25);
}
