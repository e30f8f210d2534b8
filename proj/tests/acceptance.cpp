// One PASS/FAIL line per acceptance criterion. Exit status 1 when any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "adq/axioms.hpp"
#include "adq/calculus.hpp"
#include "adq/errors.hpp"
#include "adq/harness.hpp"
#include "adq/iso.hpp"
#include "adq/posets.hpp"
#include "adq/sexpr.hpp"
#include "helpers.hpp"

using namespace adq;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (ok) note = what;
    ok = false;
  }
};

const PropertyReport* find(const std::vector<PropertyReport>& rs, const std::string& id) {
  for (const PropertyReport& r : rs)
    if (r.id == id) return &r;
  return nullptr;
}

void require_clean(Outcome& o, const std::vector<PropertyReport>& rs, const std::string& id, std::size_t min_count) {
  const PropertyReport* r = find(rs, id);
  if (!r) {
    o.require(false, id + " did not run");
    return;
  }
  o.require(r->failure_count == 0, id + ": " + std::to_string(r->failure_count) + " failures");
  o.require(r->count >= min_count, id + ": only " + std::to_string(r->count) + " instances");
  o.require(!r->expected || *r->expected == r->count, id + ": count differs from the closed form");
}

std::string counts(const std::vector<PropertyReport>& rs, const std::vector<std::string>& ids) {
  std::string out;
  for (const std::string& id : ids)
    if (const PropertyReport* r = find(rs, id))
      out += (out.empty() ? "" : ", ") + id + " " + std::to_string(r->count);
  return out;
}

Outcome theorem_suite() {
  Outcome o;
  Bounds b;
  auto t0 = Clock::now();
  auto rs = run_suite("core-lemmas", b, 1);
  auto iso = run_suite("iso-lemmas", b, 1);
  rs.insert(rs.end(), iso.begin(), iso.end());
  double took = seconds_since(t0);
  const std::vector<std::string> ids{"lambda-points-dense",   "lambda-common-max",  "comparison-bound",
                                     "comparison-common-point", "remainder-size",    "lambda-monotone",
                                     "comparison-point-stable", "copy-agreement",    "strong-iso-small-sets"};
  std::size_t n = 0, instances = 0;
  for (const std::string& id : ids) {
    require_clean(o, rs, id, 1);
    const PropertyReport* r = find(rs, id);
    if (!r) continue;
    o.require(r->exhaustive && r->expected, id + " is not exhaustive");
    ++n;
    instances += r->count;
  }
  // the sampled theorem properties of these suites must be clean too
  for (const PropertyReport& r : rs)
    if (r.tier == Tier::Theorem) require_clean(o, rs, r.id, 1);
  o.require(took <= 60, "took " + std::to_string(took) + " s");
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu exhaustive theorem properties, %zu instances, %.1f s", n, instances, took);
  if (o.ok) o.note = buf;
  return o;
}

Outcome worked_fixtures() {
  Outcome o;
  const Universe u = testing::u0();
  const oracle::Toy toy = testing::toy_u0();
  auto as_vec = [](const oracle::Ords& s) { return std::vector<int>(s.begin(), s.end()); };

  o.require(lambda_set(u, std::vector<int>{0, 3, 6}) == std::vector<int>{2, 5, 8}, "lambda_set");
  o.require(as_vec(oracle::lambda_points(toy, {0, 3, 6})) == std::vector<int>{2, 5, 8}, "oracle lambda");

  ModelPool p = testing::pool_of({{"M", "0 3 6"}, {"N", "0 3 9"}});
  ModelId m = p.id("M"), n = p.id("N");
  PairData d = compare(p, m, n);
  oracle::ToyModel tm{{0, 3, 6}, {}}, tn{{0, 3, 9}, {}};
  o.require(d.beta == 5 && oracle::comparison_point(toy, tm.trace, tn.trace) == 5, "comparison point");
  o.require(d.relation == Relation::SIM && oracle::relation(toy, tm, tn) == oracle::Rel::Sim, "relation");
  o.require(d.r_mn == std::vector<int>{9} && as_vec(oracle::remainder(toy, tm, tn)) == std::vector<int>{9},
            "R_M(N)");
  o.require(d.r_nm == std::vector<int>{6} && as_vec(oracle::remainder(toy, tn, tm)) == std::vector<int>{6},
            "R_N(M)");

  auto s = adq::iso(p, m, n);
  auto os = oracle::isomorphism(toy, tm, tn);
  std::vector<std::pair<int, int>> want{{0, 0}, {3, 3}, {6, 9}};
  o.require(s && s->ordinal_map() == want, "library iso map");
  o.require(os && std::vector<std::pair<int, int>>(os->begin(), os->end()) == want, "oracle iso map");
  o.require(is_strong_iso(p, m, n), "strong iso");
  if (o.ok) o.note = "lambda {2,5,8}, beta 5 SIM, R {9} and {6}, map 0>0 3>3 6>9; oracle agrees";
  return o;
}

Outcome constructions() {
  Outcome o;
  Bounds b;
  b.samples = 400;
  auto rs = run_suite("amalgam", b, 1);
  std::vector<std::string> ids{"close-pair", "close-over", "amalgamate-countable", "amalgamate-uncountable"};
  for (const std::string& id : ids) require_clean(o, rs, id, 500);
  if (o.ok) o.note = counts(rs, ids) + " instances, 0 failures";
  return o;
}

struct PosetRuns {
  std::vector<PropertyReport> square;
  std::vector<PropertyReport> club;
};

Outcome validators(const PosetRuns& runs) {
  Outcome o;
  require_clean(o, runs.square, "square-validator-agreement", 1);
  require_clean(o, runs.club, "club-validator-agreement", 1);
  if (o.ok)
    o.note = counts(runs.square, {"square-validator-agreement"}) + ", " +
             counts(runs.club, {"club-validator-agreement"}) + " conditions, 0 disagreements";
  return o;
}

Outcome genericity(const PosetRuns& runs) {
  Outcome o;
  for (const char* id : {"strong-generic", "club-amalgamate"}) {
    require_clean(o, runs.club, id, 1);
    if (const PropertyReport* r = find(runs.club, id))
      o.require(r->elapsed <= 300, std::string(id) + " took " + std::to_string(r->elapsed) + " s");
  }
  if (o.ok) o.note = counts(runs.club, {"strong-generic", "club-amalgamate"}) + " instances, 0 failures";
  return o;
}

Outcome adding_a_pair(const PosetRuns& runs) {
  Outcome o;
  require_clean(o, runs.club, "club-add-pair", 1);
  ModelPool p = single_model_pool();
  std::string raised;
  try {
    club_add_pair(p, Condition({}, {0}), 2, 2);
  } catch (const PreconditionError& e) {
    raised = e.condition();
  }
  o.require(raised == "hypothesis-2", "negative fixture raised '" + raised + "'");
  if (o.ok) o.note = counts(runs.club, {"club-add-pair"}) + " instances, negative fixture raises hypothesis-2";
  return o;
}

Outcome generic_runs() {
  Outcome o;
  ModelPool p = single_model_pool();
  const Universe& u = p.universe();
  GenericRequirements req;
  req.targets = {0, 3, 8};
  req.model_sets = {{p.id("M")}};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenericRun run = generic_run(p, Condition{}, req, seed);
    std::string tag = "seed " + std::to_string(seed);
    o.require(!run.stuck, tag + " got stuck");
    for (const GenericStep& s : run.filter) o.require(club_validate(p, s.condition).ok(), tag + ": invalid step");
    for (int a : run.c_s) o.require(u.in_s(a), tag + ": C_S leaves S");
    for (int g : req.targets)
      o.require(std::any_of(run.c_s.begin(), run.c_s.end(), [g](int a) { return a > g; }),
                tag + ": target " + std::to_string(g) + " not exceeded");
    for (const Family& f : req.model_sets)
      o.require(!run.filter.empty() && family_subset(f, run.filter.back().condition.a),
                tag + ": model requirement unmet");
  }
  if (o.ok) o.note = "seeds 1-20 terminate with valid conditions, C_S in S, targets 0,3,8 exceeded";
  return o;
}

Outcome negative_controls() {
  Outcome o;
  Universe bad(12, 2, {2, 5, 8}, {0, 1, 2, 4, 5, 6, 7, 9, 10});
  ModelPool fixture(bad, false);
  fixture.add("M", Element::ord_set({0, 9}));
  fixture.add("N", Element::ord_set({0, 3, 9}));
  auto v = check_e1(fixture, 10);
  o.require(std::any_of(v.begin(), v.end(),
                        [](const AxiomViolation& a) { return a.axiom == "E1" && a.m != a.n; }),
            "check_e1 misses the pair");
  Bounds quick;
  quick.exhaustive = false;
  quick.samples = 10;
  auto rs = run_suite("core-lemmas", quick, 1, &fixture);
  const PropertyReport* r = find(rs, "trace-overlap");
  bool pair = false;
  if (r)
    for (const Failure& f : r->failures) {
      Witness w = witness_from(read_sexpr(f.witness));
      if (w.args == std::vector<std::string>{"M", "N"} && replay(w).failed) pair = true;
    }
  o.require(pair, "trace-overlap does not report the pair {0,9}/{0,3,9}");

  std::size_t pools = 0, violations = 0;
  for (std::uint64_t seed = 1; seed <= 10000; ++seed) {
    std::mt19937_64 rng(seed);
    Universe u = random_universe(rng);
    Template t = random_template(u, rng);
    std::vector<std::vector<int>> placements{t.tail};
    for (int i = 0; i < 6 && placements.size() < 3; ++i)
      if (auto q = sample_placement(u, t, placements, rng)) placements.push_back(*q);
    ModelPool pool = instantiate(u, t, placements);
    ++pools;
    if (!check_e1(pool).empty()) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " generated pools violate E1");
  if (o.ok)
    o.note = "fixture pair reported and replayed; " + std::to_string(pools) + " template pools, 0 E1 violations";
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<int, std::function<Outcome()>>> criteria;
  PosetRuns runs;
  bool posets_done = false;
  auto poset_runs = [&]() -> const PosetRuns& {
    if (!posets_done) {
      Bounds b;
      runs.square = run_suite("square", b, 1);
      runs.club = run_suite("club", b, 1);
      posets_done = true;
    }
    return runs;
  };
  criteria.emplace_back(1, theorem_suite);
  criteria.emplace_back(2, worked_fixtures);
  criteria.emplace_back(3, constructions);
  criteria.emplace_back(4, [&] { return validators(poset_runs()); });
  criteria.emplace_back(5, [&] { return genericity(poset_runs()); });
  criteria.emplace_back(6, [&] { return adding_a_pair(poset_runs()); });
  criteria.emplace_back(7, generic_runs);
  criteria.emplace_back(8, negative_controls);

  int failed = 0;
  for (auto& [id, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("threw: ") + e.what();
    }
    if (!o.ok) ++failed;
    std::printf("criterion %d: %s  %s\n", id, o.ok ? "PASS" : "FAIL", o.note.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
