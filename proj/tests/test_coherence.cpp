#include <doctest.h>

#include "adq/calculus.hpp"
#include "adq/coherence.hpp"
#include "adq/errors.hpp"
#include "adq/harness.hpp"
#include "helpers.hpp"

using namespace adq;
using testing::pool_of;

TEST_SUITE("coherence") {
  TEST_CASE("empty and singleton families") {
    ModelPool p = pool_of({{"M", "0 3 6"}});
    CHECK(is_coherent(p, {}).ok());
    CHECK(is_coherent(p, p.all()).ok());
  }

  TEST_CASE("a strongly isomorphic SIM pair") {
    ModelPool p = pool_of({{"M", "0 3 6"}, {"N", "0 3 9"}});
    CHECK(is_coherent(p, p.all()).ok());
  }

  TEST_CASE("LT without a copy containing the smaller model") {
    ModelPool p = pool_of({{"K", "0 4 7"}, {"N", "0 1 2 3 4 (set 0 4)"}});
    REQUIRE(relate(p, p.id("K"), p.id("N")) == Relation::LT);
    CoherenceVerdict v = is_coherent(p, p.all());
    CHECK(v.clause == CoherenceClause::LowerCopy);
  }

  TEST_CASE("SIM without strong isomorphism") {
    // only possible when lambda stops below the traces
    Universe u(12, 2, {2, 5, 8}, {0, 1, 2, 4, 5, 6, 7, 9, 10});
    ModelPool p(u, false);
    p.add("M", Element::ord_set({0, 9}));
    p.add("N", Element::ord_set({0, 3, 9}));
    REQUIRE(relate(p, 0, 1) == Relation::SIM);
    CHECK(is_coherent(p, p.all()).clause == CoherenceClause::StrongIso);
  }

  TEST_CASE("restriction") {
    ModelPool p = sim_pair_pool();
    ModelId k = p.id("K"), n1 = p.id("N1"), n2 = p.id("N2");
    CHECK(restrict(p, {k}, n1) == Family{k});
    CHECK(restrict(p, {n2}, n1).empty());
    CHECK(restrict(p, make_family({k, n1, n2}), n1) == Family{k});
  }

  TEST_CASE("adding a containing model") {
    ModelPool p = sim_pair_pool();
    ModelId k = p.id("K"), n1 = p.id("N1"), n2 = p.id("N2");
    CHECK(extend_with_model(p, {}, n1) == Family{n1});
    Family a = extend_with_model(p, {k}, n1);
    CHECK(a == make_family({k, n1}));
    CHECK(relate(p, n1, k) == Relation::GT);
    CHECK_THROWS_AS(extend_with_model(p, {n2}, n1), PreconditionError);
  }

  TEST_CASE("adding a strongly isomorphic family") {
    ModelPool p = sim_pair_pool();
    ModelId k = p.id("K"), n1 = p.id("N1"), n2 = p.id("N2");
    Family c = extend_with_family(p, {k}, make_family({n1, n2}));
    CHECK(c.size() == 3);
    CHECK(is_coherent(p, c).ok());
    CHECK(extend_with_family(p, {k}, {n1}) == extend_with_model(p, {k}, n1));
    ModelPool q = pool_of({{"M", "0 4 6"}, {"N", "0 6 7"}});
    CHECK_THROWS_AS(extend_with_family(q, {}, q.all()), PreconditionError);
  }

  TEST_CASE("equivalences inside a coherent set") {
    ModelPool p = sim_pair_pool();
    CHECK(!check_equivalences(p, p.all()));
    CHECK(!check_low_sets(p, p.all()));
  }
}
