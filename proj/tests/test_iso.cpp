#include <doctest.h>

#include "adq/errors.hpp"
#include "adq/iso.hpp"
#include "adq/reference.hpp"
#include "helpers.hpp"

using namespace adq;
using testing::pool_of;
using testing::toy_u0;
using testing::u0;

TEST_SUITE("iso") {
  TEST_CASE("the SIM pair map") {
    ModelPool p = pool_of({{"M", "0 3 6"}, {"N", "0 3 9"}});
    auto s = iso(p, p.id("M"), p.id("N"));
    REQUIRE(s);
    std::vector<std::pair<int, int>> want{{0, 0}, {3, 3}, {6, 9}};
    CHECK(s->ordinal_map() == want);
    CHECK(is_strong_iso(p, p.id("M"), p.id("N")));
    auto o = oracle::isomorphism(toy_u0(), {{0, 3, 6}, {}}, {{0, 3, 9}, {}});
    REQUIRE(o);
    CHECK(*o == std::map<int, int>{{0, 0}, {3, 3}, {6, 9}});
  }

  TEST_CASE("collapse reindexes by rank") {
    Model m("M", Element::set({Element::ord(0), Element::ord(3), Element::ord(6), Element::ord_set({0, 3})}));
    Collapse c = collapse(u0(), m);
    CHECK(c.image.has_member(Element::ord_set({0, 1})));
    CHECK(c.image.has_member(Element::ord(2)));
    REQUIRE(c.ord_flags.size() == 3);
    CHECK((c.ord_flags[0] & kIsS) != 0);
    CHECK((c.ord_flags[1] & kIsS) == 0);
    CHECK((c.ord_flags[2] & kIsS) != 0);
    CHECK(collapse(u0(), Model("E", Element::set({}))).image == Element::set({}));
  }

  TEST_CASE("identity and flag mismatch") {
    ModelPool p = pool_of({{"M", "0 3 6"}, {"N", "0 3 4"}, {"L", "0 3 7"}});
    auto id = iso(p, p.id("M"), p.id("M"));
    REQUIRE(id);
    CHECK(id->is_identity());
    CHECK(iso(p, p.id("M"), p.id("L")));
    Universe u(12, 2, {2, 5, 8, 11}, {0, 1, 2, 5, 6, 7, 9, 10});
    ModelPool q(u);
    q.add("M", Element::ord_set({0, 3, 6}));
    q.add("N", Element::ord_set({0, 3, 4}));
    CHECK(!iso(q, 0, 1));
  }

  TEST_CASE("an iso that moves a common ordinal is not strong") {
    ModelPool p = pool_of({{"M", "0 4 6"}, {"N", "0 6 7"}});
    auto s = iso(p, p.id("M"), p.id("N"));
    REQUIRE(s);
    CHECK(s->map_ordinal(6) == 7);
    CHECK(!is_strong_iso(p, p.id("M"), p.id("N")));
    CHECK(!reference::strongly_isomorphic(u0(), p[0].elems(), p[1].elems()));
  }

  TEST_CASE("transport lands in the target and back") {
    ModelPool p = pool_of({{"K", "0 6"}, {"M", "0 1 3 6 @K"}, {"N", "0 1 3 9 (set 0 9)"}});
    auto s = iso(p, p.id("M"), p.id("N"));
    REQUIRE(s);
    ModelId l = transport(p, *s, p.id("K"));
    CHECK(p[l].trace() == std::vector<int>{0, 9});
    CHECK(collapse(u0(), p[l]) == collapse(u0(), p[p.id("K")]));
    CHECK(transport(p, s->inverse(), l) == p.id("K"));
    auto id = iso(p, p.id("M"), p.id("M"));
    CHECK(transport(p, *id, p.id("K")) == p.id("K"));
    CHECK_THROWS_AS(transport(p, *s, p.id("N")), PreconditionError);
  }

  TEST_CASE("the isomorphism is unique") {
    // every order-preserving flag-respecting bijection is the map found
    ModelPool p = pool_of({{"M", "0 1 4 (set 0 4)"}, {"N", "0 1 7 (set 0 7)"}});
    auto s = iso(p, 0, 1);
    REQUIRE(s);
    auto o = oracle::isomorphism(toy_u0(), {{0, 1, 4}, {{0, 4}}}, {{0, 1, 7}, {{0, 7}}});
    REQUIRE(o);
    CHECK(std::vector<std::pair<int, int>>(o->begin(), o->end()) == s->ordinal_map());
  }
}
