#include <doctest.h>

#include "adq/amalgam.hpp"
#include "adq/coherence.hpp"
#include "adq/errors.hpp"
#include "adq/harness.hpp"
#include "helpers.hpp"

using namespace adq;
using testing::pool_of;
using testing::u0;

namespace {

Element tup(std::vector<int> v) {
  std::vector<Element> items;
  for (int x : v) items.push_back(Element::ord(x));
  return Element::tuple(items);
}

// K moves with the tail: K1 = {0,6} in N1 = {0,1,2,3,6,8,9} and K2 = {0,12}
// in N2 = {0,1,2,3,12,14,15}. U0 has no room for a second copy that
// contains the comparison point 8.
ModelPool moving_pool() {
  std::vector<int> s;
  for (int i = 0; i < 24; ++i)
    if (i != 3 && (i < 8 || i % 3 != 2)) s.push_back(i);
  Universe u(24, 2, {2, 5, 8, 11, 14, 17, 20, 23}, s);
  Template t;
  t.prefix = {0, 1, 2, 3};
  t.tail = {6, 8, 9};
  t.members = {Template::Member{"K", {0, 6}, {}, {}}};
  return gen_template(u, t, {{6, 8, 9}, {12, 14, 15}});
}

}  // namespace

TEST_SUITE("amalgam") {
  TEST_CASE("closing without isomorphic pairs changes nothing") {
    ModelPool p = pool_of({{"M", "0 3 6"}});
    ElementSet x{tup({3})};
    CHECK(close_pair(p, x, p.all()) == x);
  }

  TEST_CASE("a common element is fixed") {
    ModelPool p = pool_of({{"M", "0 3 6"}, {"N", "0 3 9"}});
    ElementSet x{Element::ord(3)};
    CHECK(close_pair(p, x, p.all()) == x);
  }

  TEST_CASE("closing adds the image of a tuple") {
    ModelPool p = pool_of({{"M", "0 3 6"}, {"N", "0 3 9"}});
    ElementSet y = close_pair(p, {tup({6})}, p.all());
    CHECK(y == make_element_set({tup({6}), tup({9})}));
    CHECK(is_closed(p, y, p.all()));
  }

  TEST_CASE("close over a single model") {
    ModelPool p = moving_pool();
    ModelId n1 = p.id("N1"), k1 = p.id("K1");
    ClosedPair z = close_over(p, n1, {}, {n1}, {tup({6})}, {k1});
    CHECK(z.x == ElementSet{tup({6})});
    CHECK(family_subset(Family{k1, n1}, z.a));
    ClosedPair e = close_over(p, n1, {}, {n1}, {}, {});
    CHECK(e.x.empty());
  }

  TEST_CASE("countable amalgamation") {
    ModelPool p = moving_pool();
    ModelId n1 = p.id("N1"), n2 = p.id("N2"), k1 = p.id("K1"), k2 = p.id("K2");
    CHECK(amalgamate_countable(p, {n1}, n1, {k1}) == make_family({n1, k1}));
    Family a = make_family({n1, n2});
    Family c = amalgamate_countable(p, a, n1, {k1});
    CHECK(c == make_family({n1, n2, k1, k2}));
    CHECK(is_coherent(p, c).ok());
    Family full = make_family({n1, n2, k1, k2});
    CHECK(amalgamate_countable(p, full, n1, restrict(p, full, n1)) == full);
  }

  TEST_CASE("equal comparison points after a shared cut") {
    CHECK(check_same_comparison_point(u0(), {0, 3, 6}, {0, 3, 7}, {0, 3}, {0, 3}, 5).ok);
    CHECK(check_same_comparison_point(u0(), {0, 3, 6}, {0, 3, 6}, {0, 4}, {0, 4}, 8).ok);
    CHECK_THROWS_AS(check_same_comparison_point(u0(), {0, 3, 6}, {0, 3, 6}, {0, 3, 6}, {0, 3, 6}, 5),
                    PreconditionError);
  }

  TEST_CASE("transported pairs through identical copies") {
    ModelPool p = moving_pool();
    ModelId n1 = p.id("N1");
    CHECK(check_transported_pair(p, n1, n1, n1, p.id("K1"), p.id("K1")).ok);
  }

  TEST_CASE("uncountable amalgamation with a degenerate prime map") {
    ModelPool p = pool_of({{"M", "0 3"}});
    UncountableInput in;
    in.a = {0};
    in.primed = {{0, 0}};
    in.beta = 5;
    in.beta_star = 8;
    in.inside = {0};
    UncountableResult r = amalgamate_uncountable(p, in);
    CHECK(r.c == Family{0});
  }

  TEST_CASE("uncountable amalgamation of a placed copy") {
    std::mt19937_64 rng(11);
    int done = 0;
    for (int i = 0; i < 200 && done < 5; ++i) {
      auto s = random_uncountable_scenario(rng);
      if (!s || !is_coherent(s->base.pool, s->input.a).ok()) continue;
      ++done;
      UncountableResult r = amalgamate_uncountable(s->base.pool, s->input);
      CHECK(is_coherent(s->base.pool, r.c).ok());
      for (const auto& [m, mp] : s->input.primed) {
        CHECK(family_contains(r.c, m));
        CHECK(family_contains(r.c, mp));
      }
    }
    CHECK(done == 5);
  }

  TEST_CASE("a prime map that breaks membership") {
    ModelPool p = moving_pool();
    UncountableInput in;
    ModelId n1 = p.id("N1"), n2 = p.id("N2"), k1 = p.id("K1"), k2 = p.id("K2");
    in.a = make_family({n2, k2});
    in.primed = {{n2, n1}, {k2, n1}};
    in.beta = 5;
    in.beta_star = 8;
    CHECK_THROWS_AS(amalgamate_uncountable(p, in), PreconditionError);
    (void)k1;
  }
}
