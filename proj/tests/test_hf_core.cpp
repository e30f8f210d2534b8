#include <doctest.h>

#include <algorithm>

#include "adq/errors.hpp"
#include "adq/model.hpp"
#include "adq/text.hpp"
#include "adq/universe.hpp"
#include "helpers.hpp"

using namespace adq;
using testing::u0;

namespace {

// Every element over ordinals {0,1,2} up to depth 2 with at most two items.
std::vector<Element> small_elements() {
  std::vector<Element> level{Element::ord(0), Element::ord(1), Element::ord(2)};
  std::vector<Element> all = level;
  for (int depth = 0; depth < 2; ++depth) {
    std::vector<Element> next;
    for (std::size_t i = 0; i < level.size(); ++i) {
      next.push_back(Element::set({level[i]}));
      next.push_back(Element::tuple({level[i]}));
      for (std::size_t j = 0; j < level.size(); ++j) {
        next.push_back(Element::tuple({level[i], level[j]}));
        if (i < j) next.push_back(Element::set({level[i], level[j]}));
      }
    }
    next.push_back(Element::set({}));
    canonicalize(next);
    all.insert(all.end(), next.begin(), next.end());
    level = next;
  }
  canonicalize(all);
  return all;
}

}  // namespace

TEST_SUITE("hf-core") {
  TEST_CASE("universe text reads back as U0") {
    Universe u = parse_universe("(universe :theta 12 :omega1 2 :lambda (2 5 8 11) :s (0 1 2 4 5 6 7 9 10))");
    CHECK(u == u0());
    CHECK(serialize(u) == "(universe :theta 12 :omega1 2 :lambda (2 5 8 11) :s (0 1 2 4 5 6 7 9 10))");
  }

  TEST_CASE("model text and trace") {
    Model m = parse_model("(model :name Ma :elems (0 3 6))", u0());
    CHECK(m.name() == "Ma");
    CHECK(m.trace() == std::vector<int>{0, 3, 6});
    CHECK(serialize(m) == "(model :name Ma :elems (0 3 6))");
  }

  TEST_CASE("omega1 part must be an initial segment") {
    try {
      parse_model("(model :name Mbad :elems (1 3))", u0());
      FAIL("accepted a model missing 0");
    } catch (const InvariantError& e) {
      CHECK(e.invariant() == "omega1-initial-segment");
    }
    auto v = validate_model(u0(), Model("M", Element::ord_set({1, 4})));
    REQUIRE(v.size() == 1);
    CHECK(v[0].invariant == "omega1-initial-segment");
  }

  TEST_CASE("member closure") {
    Model m("M", Element::set({Element::ord(0), Element::ord_set({0, 3})}));
    auto v = validate_model(u0(), m);
    REQUIRE(!v.empty());
    CHECK(v[0].invariant == "member-closure");
    CHECK(validate_model(u0(), Model("M", Element::ord_set({0, 3, 6}))).empty());
  }

  TEST_CASE("canonical order of sets and tuples") {
    CHECK(serialize(Element::set({Element::ord(3), Element::ord(0)})) == "(set 0 3)");
    CHECK(serialize(Element::tuple({Element::ord(5), Element::ord(3), Element::ord(4)})) == "(tuple 5 3 4)");
    CHECK(Element::ord(7) < Element::tuple({Element::ord(0)}));
    CHECK(Element::tuple({Element::ord(9)}) < Element::set({}));
  }

  TEST_CASE("canonical order is a strict total order") {
    auto all = small_elements();
    auto sorted = all;
    canonicalize(sorted);
    CHECK(sorted == all);
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = 0; j < all.size(); ++j) {
        bool lt = all[i] < all[j], gt = all[j] < all[i], eq = all[i] == all[j];
        CHECK(int(lt) + int(gt) + int(eq) == 1);
        CHECK(eq == (i == j));
      }
  }

  TEST_CASE("parse inverts serialize on elements") {
    for (const Element& e : small_elements()) CHECK(parse_element(serialize(e)) == e);
  }

  TEST_CASE("pool text round trip with model references") {
    ModelPool p = parse_pool(
        "(pool (universe :theta 12 :omega1 2 :lambda (2 5 8 11) :s (0 1 2 4 5 6 7 9 10))"
        " (model :name K :elems (0)) (model :name N :elems (0 1 2 3 6 @K)))");
    REQUIRE(p.size() == 2);
    CHECK(p.member(p.id("K"), p.id("N")));
    ModelPool q = parse_pool(serialize(p));
    CHECK(serialize(q) == serialize(p));
  }

  TEST_CASE("syntax errors carry a position") {
    try {
      parse_universe("(universe :theta 12 :omega1 2 :lambda (2 5 8 11) :s (0 1)");
      FAIL("accepted unbalanced text");
    } catch (const ParseError& e) {
      CHECK(e.position() == 0);
    }
    CHECK_THROWS_AS(parse_element("(set 0 ]"), ParseError);
  }

  TEST_CASE("universe invariants") {
    CHECK_THROWS_AS(Universe(12, 2, {}, {0}), InvariantError);
    CHECK_THROWS_AS(Universe(12, 3, {2, 5}, {0}), InvariantError);
    CHECK_THROWS_AS(Universe(12, 2, {2, 5}, {0, 12}), InvariantError);
  }

  TEST_CASE("lambda must clear every trace") {
    ModelPool p(u0());
    CHECK_THROWS_AS(p.add("M", Element::ord_set({0, 11})), InvariantError);
    ModelPool loose(u0(), false);
    CHECK_NOTHROW(loose.add("M", Element::ord_set({0, 11})));
  }

  TEST_CASE("pool registration is idempotent on content") {
    ModelPool p(u0());
    ModelId a = p.add("A", Element::ord_set({0, 3}));
    CHECK(p.add("B", Element::ord_set({0, 3})) == a);
    CHECK(p.size() == 1);
    CHECK_THROWS_AS(p.add("A", Element::ord_set({0, 4})), InvariantError);
  }

  TEST_CASE("members of members are members") {
    CHECK_THROWS_AS(testing::pool_of({{"K", "0"}, {"L", "0 1 3 @K"}, {"N", "0 1 2 3 6 @L"}}), InvariantError);
    ModelPool p = testing::pool_of({{"K", "0"}, {"L", "0 1 3 @K"}, {"N", "0 1 2 3 6 @K @L"}});
    for (const Model& m : p.models())
      for (const Element& a : m.elems().items())
        for (const Element& b : a.items()) CHECK(m.elems().has_member(b));
  }
}
