#include <doctest.h>

#include "adq/calculus.hpp"
#include "adq/errors.hpp"
#include "adq/reference.hpp"
#include "helpers.hpp"

using namespace adq;
using testing::pool_of;
using testing::toy_u0;
using testing::u0;

namespace {

oracle::ToyModel toy(const Model& m) {
  oracle::ToyModel t;
  t.trace.insert(m.trace().begin(), m.trace().end());
  for (const Element& e : m.elems().items())
    if (e.is_set()) {
      oracle::Ords s;
      for (const Element& x : e.items())
        if (x.is_ord()) s.insert(x.value());
      if (s.size() == e.size()) t.sets.insert(s);
    }
  return t;
}

std::vector<int> v(const oracle::Ords& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_SUITE("model-calculus") {
  TEST_CASE("oracle agrees with the frozen lambda sets") {
    CHECK(v(oracle::lambda_points(toy_u0(), {0, 3, 6})) == std::vector<int>{2, 5, 8});
    CHECK(v(oracle::lambda_points(toy_u0(), {})) == std::vector<int>{2});
    CHECK(v(oracle::lambda_points(toy_u0(), {0, 3, 9})) == std::vector<int>{2, 5, 11});
  }

  TEST_CASE("lambda sets") {
    CHECK(lambda_set(u0(), std::vector<int>{0, 3, 6}) == std::vector<int>{2, 5, 8});
    CHECK(lambda_set(u0(), std::vector<int>{}) == std::vector<int>{2});
    CHECK(lambda_set(u0(), std::vector<int>{0, 3, 9}) == std::vector<int>{2, 5, 11});
  }

  TEST_CASE("comparison points") {
    CHECK(*oracle::comparison_point(toy_u0(), {0, 3, 6}, {0, 3, 9}) == 5);
    CHECK(comparison_point(u0(), {0, 3, 6}, {0, 3, 9}) == 5);
    CHECK(comparison_point(u0(), {0, 3, 6}, {0, 3, 4}) == 5);
    CHECK(comparison_point(u0(), {0, 3, 6}, {0, 3, 6}) == 8);
  }

  TEST_CASE("the SIM pair and its remainders") {
    ModelPool p = pool_of({{"M", "0 3 6"}, {"N", "0 3 9"}});
    ModelId m = p.id("M"), n = p.id("N");
    auto tm = toy(p[m]), tn = toy(p[n]);
    REQUIRE(oracle::relation(toy_u0(), tm, tn) == oracle::Rel::Sim);
    CHECK(v(oracle::remainder(toy_u0(), tm, tn)) == std::vector<int>{9});
    CHECK(v(oracle::remainder(toy_u0(), tn, tm)) == std::vector<int>{6});
    PairData d = compare(p, m, n);
    CHECK(d.beta == 5);
    CHECK(d.relation == Relation::SIM);
    CHECK(d.r_mn == std::vector<int>{9});
    CHECK(d.r_nm == std::vector<int>{6});
  }

  TEST_CASE("membership witness gives LT") {
    ModelPool p = pool_of({{"Ma", "0 3 6"}, {"Mb", "0 3 4 (set 0 3)"}});
    ModelId a = p.id("Ma"), b = p.id("Mb");
    CHECK(relate(p, a, b) == Relation::LT);
    CHECK(relate(p, b, a) == Relation::GT);
    CHECK(oracle::relation(toy_u0(), toy(p[a]), toy(p[b])) == oracle::Rel::Lt);
    CHECK(is_adequate(p, p.all()));
  }

  TEST_CASE("the two readings of the first remainder clause") {
    // Mb lacks the comparison point 5, so the first clause fires only in
    // the literal reading.
    ModelPool p = pool_of({{"Ma", "0 3 6"}, {"Mb", "0 3 4 (set 0 3)"}});
    ModelId a = p.id("Ma"), b = p.id("Mb");
    auto ta = toy(p[a]), tb = toy(p[b]);
    CHECK(remainder(p, b, a) == std::vector<int>{6});
    CHECK(v(oracle::remainder(toy_u0(), tb, ta, true)) == std::vector<int>{6});
    CHECK(oracle::remainder(toy_u0(), tb, ta, false).empty());
    CHECK(remainder(p, a, b).empty());
    CHECK(oracle::remainder(toy_u0(), ta, tb).empty());
  }

  TEST_CASE("no witness means incomparable") {
    ModelPool p = pool_of({{"M", "0 3 6"}, {"N", "0 4"}});
    CHECK(relate(p, p.id("M"), p.id("N")) == Relation::NONE);
    auto bad = first_incomparable(p, p.all());
    REQUIRE(bad);
    CHECK_THROWS_AS(remainder(p, p.id("M"), p.id("N")), PreconditionError);
  }

  TEST_CASE("a model against itself") {
    ModelPool p = pool_of({{"M", "0 3 6"}});
    ModelId m = p.id("M");
    CHECK(relate(p, m, m) == Relation::SIM);
    CHECK(remainder(p, m, m).empty());
    ModelPool q = pool_of({{"M", "0 3 9"}});
    CHECK(remainder(q, 0, 0).empty());
  }

  TEST_CASE("S-adequacy") {
    ModelPool p = pool_of({{"M", "0 3 6"}, {"N", "0 3 9"}});
    CHECK(check_s_adequate(p, p.all()).ok);
    Universe u(12, 2, {2, 5, 8, 11}, {0, 1, 2, 4, 5, 6, 7, 10});
    ModelPool q(u);
    q.add("M", Element::ord_set({0, 3, 6}));
    q.add("N", Element::ord_set({0, 3, 9}));
    SAdequacy s = check_s_adequate(q, q.all());
    CHECK(!s.ok);
    REQUIRE(s.offender);
    CHECK(s.offender->zeta == 9);
    ModelPool lone = pool_of({{"M", "0 3"}});
    CHECK(check_s_adequate(lone, lone.all()).ok);
  }

  TEST_CASE("library reference matches the oracle on all small trace pairs") {
    std::vector<oracle::Ords> traces{{}};
    for (int a = 0; a < 11; ++a) {
      std::size_t n = traces.size();
      for (std::size_t i = 0; i < n; ++i)
        if (traces[i].size() < 3) {
          auto t = traces[i];
          t.insert(a);
          traces.push_back(t);
        }
    }
    for (const auto& t : traces) {
      std::set<int> s(t.begin(), t.end());
      CHECK(reference::lambda_points(u0(), s) == oracle::lambda_points(toy_u0(), t));
      CHECK(lambda_set(u0(), v(t)) == v(oracle::lambda_points(toy_u0(), t)));
    }
  }
}
