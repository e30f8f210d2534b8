#include <doctest.h>

#include "adq/condition.hpp"
#include "adq/errors.hpp"
#include "adq/harness.hpp"
#include "adq/posets.hpp"
#include "adq/reference.hpp"
#include "helpers.hpp"

using namespace adq;
using testing::pool_of;
using testing::u0;

namespace {

ModelPool m_pool() { return single_model_pool(); }  // M = {0,1,4,7}

std::vector<int> clauses(const PosetVerdict& v) { return v.clauses(); }

}  // namespace

TEST_SUITE("posets") {
  TEST_CASE("membership in Y") {
    CHECK(in_Y(u0(), Model("M", Element::ord_set({0, 1, 4, 7}))));
    CHECK(in_Y(u0(), Model("E", Element::set({}))));
    CHECK(!in_Y(u0(), Model("M", Element::ord_set({0, 3, 6}))));
  }

  TEST_CASE("the empty condition is valid in both posets") {
    ModelPool p = m_pool();
    CHECK(sq_validate(p, Condition{}).ok());
    CHECK(club_validate(p, Condition{}).ok());
  }

  TEST_CASE("square clause three") {
    ModelPool p = pool_of({{"M", "0 1 5"}});
    Condition c({make_triple(5, 3, 4)}, {0});
    CHECK(sq_validate(p, c).ok());
    CHECK(reference::square_clauses(u0(), c.x, {p[0].elems()}).empty());
  }

  TEST_CASE("club clause three") {
    ModelPool p = m_pool();
    CHECK(club_validate(p, Condition({make_pair(4, 4)}, {0})).ok());
    PosetVerdict v = club_validate(p, Condition({make_pair(2, 2)}, {0}));
    CHECK(clauses(v) == std::vector<int>{3});
  }

  TEST_CASE("adding a pair") {
    ModelPool p = m_pool();
    Condition q = club_add_pair(p, Condition({make_pair(4, 4)}, {0}), 2, 2);
    CHECK(q.x == std::vector<Element>{make_pair(2, 2), make_pair(4, 4)});
    try {
      club_add_pair(p, Condition({}, {0}), 2, 2);
      FAIL("the pair was added without its model point");
    } catch (const PreconditionError& e) {
      CHECK(e.condition() == "hypothesis-2");
    }
    Condition same = club_add_pair(p, Condition({make_pair(4, 4)}, {0}), 4, 4);
    CHECK(same.x == std::vector<Element>{make_pair(4, 4)});
  }

  TEST_CASE("unbounded extension") {
    ModelPool p = m_pool();
    CHECK(club_extend_unbounded(p, Condition{}, 3).x == std::vector<Element>{make_pair(4, 4)});
    Condition withm = club_extend_unbounded(p, Condition({make_pair(4, 4)}, {0}), 0);
    CHECK(withm.has(make_pair(9, 9)));
    CHECK_THROWS_AS(club_extend_unbounded(p, Condition{}, 10), PreconditionError);
  }

  TEST_CASE("classification around alpha") {
    ModelPool p = pool_of({{"K", "0 3 6"}, {"L", "0 3 6 9"}});
    Classification c = classify(p, Condition({}, p.all()), 8);
    CHECK(c.a0 == make_family({p.id("K")}));
    Classification d = classify(p, Condition({}, {p.id("L")}), 6);
    CHECK(d.a1 == Family{p.id("L")});
    Classification e = classify(p, Condition{}, 5);
    CHECK((e.a0.empty() && e.a1.empty() && e.a2.empty()));
  }

  TEST_CASE("restriction to a side model") {
    ModelPool p = m_pool();
    Condition r({make_pair(4, 4), make_pair(9, 9)}, {0});
    Condition s = club_restrict(p, r, 0);
    CHECK(s.x == std::vector<Element>{make_pair(4, 4)});
    CHECK(s.a.empty());
  }

  TEST_CASE("amalgamating with the restriction gives r back") {
    ModelPool p = m_pool();
    Condition r({make_pair(4, 4)}, {0});
    Condition s = club_amalgamate(p, r, club_restrict(p, r, 0), 0);
    CHECK(extends(s, r));
    CHECK(s.x == r.x);
    Condition t = club_amalgamate(p, Condition({}, {0}), Condition{}, 0);
    CHECK(t == Condition({}, {0}));
  }

  TEST_CASE("adding models") {
    ModelPool p = m_pool();
    Condition q = club_add_models(p, Condition{}, {0});
    CHECK(q.a == Family{0});
    CHECK(club_validate(p, q).ok());
    Condition sq = sq_add_models(p, Condition{}, {0});
    CHECK(sq.a == Family{0});
  }

  TEST_CASE("order laws on an enumerated instance") {
    ModelPool p = m_pool();
    PosetInstance inst = enumerate_instance(PosetKind::Club, p, 1);
    REQUIRE(!inst.conditions.empty());
    for (const Condition& a : inst.conditions) {
      CHECK(extends(a, a));
      for (const Condition& b : inst.conditions)
        if (extends(a, b) && extends(b, a)) CHECK(a == b);
    }
  }

  TEST_CASE("strong genericity in both modes") {
    Condition q({}, {0});
    ModelPool p = m_pool();
    PosetInstance big = enumerate_instance(PosetKind::Club, p, 1);
    CHECK_THROWS_AS(strong_generic_check(big, q, 0, GenericMode::Exact), PreconditionError);
    ModelPool small = pool_of({{"M", "0 1"}});
    PosetInstance inst = enumerate_instance(PosetKind::Club, small, 2);
    GenericVerdict fast = strong_generic_check(inst, q, 0, GenericMode::Fast);
    GenericVerdict exact = strong_generic_check(inst, q, 0, GenericMode::Exact);
    CHECK(fast.ok);
    CHECK(exact.ok == fast.ok);
    CHECK(fast.restriction_is_reduction);
  }

  TEST_CASE("generic runs") {
    ModelPool p = m_pool();
    GenericRequirements none;
    GenericRun idle = generic_run(p, Condition{}, none, 7);
    CHECK(idle.filter.size() == 1);
    GenericRequirements req;
    req.targets = {0, 3, 8};
    req.model_sets = {{0}};
    GenericRun run = generic_run(p, Condition{}, req, 7);
    CHECK(!run.stuck);
    for (int g : req.targets) {
      bool over = false;
      for (int a : run.c_s) over = over || a > g;
      CHECK(over);
    }
    for (int a : run.c_s) CHECK(u0().in_s(a));
    for (const auto& s : run.filter) CHECK(club_validate(p, s.condition).ok());
    GenericRun again = generic_run(p, Condition{}, req, 7);
    CHECK(again.c_s == run.c_s);
  }
}
