#include <doctest.h>

#include <algorithm>

#include "adq/axioms.hpp"
#include "adq/calculus.hpp"
#include "adq/errors.hpp"
#include "adq/harness.hpp"
#include "adq/sexpr.hpp"
#include "helpers.hpp"

using namespace adq;
using testing::pool_of;
using testing::u0;

namespace {

// {0,9} and {0,3,9} with lambda stopping at 8: both share 9 above their
// comparison point 2.
ModelPool e1_fixture() {
  Universe u(12, 2, {2, 5, 8}, {0, 1, 2, 4, 5, 6, 7, 9, 10});
  ModelPool p(u, false);
  p.add("M", Element::ord_set({0, 9}));
  p.add("N", Element::ord_set({0, 3, 9}));
  return p;
}

const PropertyReport& find_report(const std::vector<PropertyReport>& rs, const std::string& id) {
  auto it = std::find_if(rs.begin(), rs.end(), [&](const PropertyReport& r) { return r.id == id; });
  REQUIRE(it != rs.end());
  return *it;
}

Bounds quick() {
  Bounds b;
  b.exhaustive = false;
  b.samples = 10;
  return b;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("closed-form counts") {
    CHECK(trace_count(u0(), 4) == 432);
    CHECK(shape_count(u0(), 4) == 5605);
    auto traces = enumerate_traces(u0(), 4);
    CHECK(traces.size() == trace_count(u0(), 4));
    std::size_t pairs = 0;
    for (const auto& t : traces)
      for (std::size_t mask = 0; mask < (std::size_t{1} << t.size()); ++mask) {
        std::vector<int> sub;
        for (std::size_t i = 0; i < t.size(); ++i)
          if (mask >> i & 1) sub.push_back(t[i]);
        int low = 0;
        bool initial = true;
        for (int x : sub)
          if (x < u0().omega1()) initial = initial && x == low++;
        if (initial) ++pairs;
      }
    CHECK(subtrace_pair_count(u0(), 4) == pairs);
  }

  TEST_CASE("a template with two placements gives a SIM pair") {
    ModelPool p = sim_pair_pool();
    CHECK(p.size() == 3);
    CHECK(p.well_formed());
    CHECK(relate(p, p.id("N1"), p.id("N2")) == Relation::SIM);
    CHECK(check_axioms(p).empty());
  }

  TEST_CASE("a single placement of a bare template") {
    Template t;
    t.prefix = {0, 1};
    t.tail = {4};
    ModelPool p = gen_template(u0(), t, {{4}});
    CHECK(p.size() == 1);
    CHECK(p[0].trace() == std::vector<int>{0, 1, 4});
  }

  TEST_CASE("placements must keep the flag pattern") {
    Template t;
    t.prefix = {0, 1, 2, 4};
    t.tail = {7};
    CHECK_THROWS_AS(gen_template(u0(), t, {{7}, {8}}), PreconditionError);
  }

  TEST_CASE("saturation") {
    ModelPool done = sim_pair_pool();
    Saturation s = saturate(u0(), done, 3);
    REQUIRE(s.ok());
    CHECK(s.pool->size() == done.size());
    CHECK(s.added.empty());

    ModelPool bare = pool_of({{"K", "0 6"}, {"N", "0 1 2 3 6 9 @K"}});
    REQUIRE(!check_axioms(bare).empty());
    Saturation t = saturate(u0(), bare, 4);
    INFO(t.failure);
    REQUIRE(t.ok());
    CHECK(!t.added.empty());
    CHECK(t.pool->well_formed());
    CHECK(t.pool->id("N") != t.pool->id("K"));
    CHECK(is_adequate(*t.pool, t.pool->all()));
    CHECK(relate(*t.pool, t.pool->id("K"), t.pool->id("N")) == Relation::LT);
    CHECK(!saturate(u0(), bare, 0).ok());
  }

  TEST_CASE("reports are deterministic") {
    auto a = run_suite("core-lemmas", quick(), 5);
    auto b = run_suite("core-lemmas", quick(), 5);
    CHECK(report_text(a) == report_text(b));
    auto c = run_suite("amalgam", quick(), 9);
    auto d = run_suite("amalgam", quick(), 9);
    CHECK(report_text(c) == report_text(d));
  }

  TEST_CASE("unknown names") {
    CHECK_THROWS_AS(run_suite("nonsense", quick(), 1), PreconditionError);
    Witness w{"nonsense", sim_pair_pool(), {}};
    CHECK_THROWS_AS(replay(w), PreconditionError);
  }

  TEST_CASE("the E1 fixture is flagged by the axiom check") {
    ModelPool p = e1_fixture();
    auto v = check_e1(p);
    REQUIRE(!v.empty());
    CHECK(v[0].axiom == "E1");
    CHECK(comparison_point(p.universe(), p[0], p[1]) == 2);
  }

  TEST_CASE("the E1 fixture fails the overlap property and replays") {
    ModelPool p = e1_fixture();
    auto reports = run_suite("core-lemmas", quick(), 1, &p);
    const PropertyReport& r = find_report(reports, "trace-overlap");
    REQUIRE(r.failure_count > 0);
    bool pair_seen = false;
    for (const Failure& f : r.failures) {
      Witness w = witness_from(read_sexpr(f.witness));
      CHECK(replay(w).failed);
      if (w.args == std::vector<std::string>{"M", "N"}) pair_seen = true;
    }
    CHECK(pair_seen);
  }

  TEST_CASE("a passing witness does not replay to failure") {
    Witness w{"trace-overlap", sim_pair_pool(), {"N1", "N2"}};
    CHECK(!replay(w).failed);
    Witness round = witness_from(read_sexpr(serialize(w)));
    CHECK(serialize(round) == serialize(w));
  }

  TEST_CASE("generated scenarios are well-formed") {
    std::mt19937_64 rng(3);
    int made = 0;
    for (int i = 0; i < 20; ++i) {
      auto s = random_scenario(rng);
      if (!s) continue;
      ++made;
      CHECK(s->pool.well_formed());
      CHECK(check_axioms(s->pool, 1).empty());
    }
    CHECK(made > 10);
  }
}
