#include <algorithm>
#include <set>

#include "adq/amalgam.hpp"
#include "adq/axioms.hpp"
#include "adq/condition.hpp"
#include "adq/errors.hpp"
#include "adq/iso.hpp"
#include "adq/posets.hpp"
#include "adq/reference.hpp"
#include "adq/text.hpp"
#include "harness_detail.hpp"

namespace adq {

ModelPool sim_pair_pool() {
  Universe u = standard_universe(12);
  Template t;
  t.prefix = {0, 1, 2, 3};
  t.tail = {6};
  t.members = {Template::Member{"K", {0}, {}, {}}};
  return gen_template(u, t, {{6}, {9}});
}

ModelPool generic_pool() {
  ModelPool pool(standard_universe(12));
  Element k = Element::ord_set({0});
  pool.add("K", k);
  auto top = [&](std::vector<int> ords) {
    std::vector<Element> items{k};
    for (int x : ords) items.push_back(Element::ord(x));
    return Element::set(items);
  };
  pool.add("N1", top({0, 1, 2, 4, 7}));
  pool.add("N2", top({0, 1, 2, 4, 10}));
  mark_well_formed(pool);
  return pool;
}

ModelPool single_model_pool() {
  ModelPool pool(standard_universe(12));
  pool.add("M", Element::ord_set({0, 1, 4, 7}));
  mark_well_formed(pool);
  return pool;
}

namespace detail {

namespace {

std::vector<ModelPool> poset_pools(Context& ctx) {
  if (ctx.fixture) return {*ctx.fixture};
  return {sim_pair_pool(), generic_pool()};
}

const char* kind_name(PosetKind k) { return k == PosetKind::Club ? "club" : "square"; }

std::string clause_text(const std::set<int>& c) {
  std::string out = "(";
  for (int x : c) out += (out.size() > 1 ? " " : "") + std::to_string(x);
  return out + ")";
}

std::vector<Element> agreement_candidates(PosetKind kind, const Universe& u) {
  std::vector<Element> c = candidate_elements(kind, u);
  // a few malformed elements so shape errors are compared too
  if (kind == PosetKind::Club) {
    c.push_back(make_pair(3, 3));
    c.push_back(make_pair(5, 4));
  } else {
    c.push_back(make_triple(4, 1, 2));
    c.push_back(make_triple(5, 3, 2));
  }
  canonicalize(c);
  return c;
}

std::optional<std::string> agreement_failure(PosetKind kind, const ModelPool& pool, const Condition& c) {
  std::vector<Element> side;
  for (ModelId m : c.a) side.push_back(pool[m].elems());
  const Universe& u = pool.universe();
  std::set<int> ref = kind == PosetKind::Club ? reference::club_clauses(u, c.x, side)
                                              : reference::square_clauses(u, c.x, side);
  auto got = validate(kind, pool, c).clauses();
  std::set<int> mine(got.begin(), got.end());
  if (mine != ref) return "validator fails clauses " + clause_text(mine) + ", the definition " + clause_text(ref);
  return std::nullopt;
}

std::size_t choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Property agreement(PosetKind kind) {
  Property p;
  std::string id = std::string(kind_name(kind)) + "-validator-agreement";
  p.info = {id, kind_name(kind), Tier::Theorem,
            "the validator reports exactly the clauses the definition rejects, for every working part of at most "
            "three elements and every side set"};
  p.exhaustive = true;
  p.run = [kind, id](Context& ctx) {
    std::size_t expected = 0;
    for (const ModelPool& pool : poset_pools(ctx)) {
      auto cand = agreement_candidates(kind, pool.universe());
      expected += (1 + cand.size() + choose(cand.size(), 2) + choose(cand.size(), 3)) << pool.size();
      for (std::uint32_t mask = 0; mask < (1u << pool.size()); ++mask) {
        Family a;
        for (ModelId m = 0; m < pool.size(); ++m)
          if (mask >> m & 1u) a.push_back(m);
        auto test = [&](std::vector<Element> x) {
          Condition c(std::move(x), a);
          if (agreement_failure(kind, pool, c))
            ctx.fail({id, pool, {serialize(c, pool)}});
          else
            ctx.pass();
        };
        test({});
        for (std::size_t i = 0; i < cand.size(); ++i) {
          test({cand[i]});
          for (std::size_t j = i + 1; j < cand.size(); ++j) {
            test({cand[i], cand[j]});
            for (std::size_t k = j + 1; k < cand.size(); ++k) test({cand[i], cand[j], cand[k]});
          }
        }
      }
    }
    ctx.set_expected(expected);
  };
  p.check = [kind](const Witness& w) {
    return agreement_failure(kind, w.pool, condition_from(read_sexpr(w.args.at(0)), w.pool));
  };
  return p;
}

Condition condition_arg(const Witness& w, std::size_t i) { return condition_from(read_sexpr(w.args.at(i)), w.pool); }

std::optional<std::string> transport_failure(PosetKind kind, const ModelPool& pool, ModelId m, ModelId n,
                                             const Condition& p) {
  auto s = iso(pool, m, n);
  if (!s || !validate(kind, pool, p).ok() || !condition_inside(pool, p, m)) throw Vacuous{};
  auto q = transport_condition(pool, *s, p);
  if (!q) throw Vacuous{};
  PosetVerdict v = validate(kind, pool, *q);
  if (!v.ok()) return "the image " + serialize(*q, pool) + " fails clause " + std::to_string(v.failures.front().clause);
  if (!condition_inside(pool, *q, n)) return "the image is not inside " + pool[n].name();
  return std::nullopt;
}

Property transport(PosetKind kind) {
  Property p;
  std::string id = std::string(kind_name(kind)) + "-transport";
  p.info = {id, kind_name(kind), Tier::Theorem,
            "an isomorphism between side models carries valid conditions inside the first to valid conditions inside "
            "the second"};
  p.run = [kind, id](Context& ctx) {
    for (const ModelPool& pool : poset_pools(ctx))
      for (ModelId m = 0; m < pool.size(); ++m)
        for (ModelId n = 0; n < pool.size(); ++n) {
          if (m == n || !isomorphic(pool, m, n)) continue;
          for (const Condition& c : enumerate_inside(kind, pool, m).conditions)
            ctx.run({id, pool, {pool[m].name(), pool[n].name(), serialize(c, pool)}});
        }
  };
  p.check = [kind](const Witness& w) {
    return transport_failure(kind, w.pool, model_arg(w, 0), model_arg(w, 1), condition_arg(w, 2));
  };
  return p;
}

std::optional<std::string> add_models_failure(PosetKind kind, const ModelPool& pool, const Condition& p,
                                              const Family& ms) {
  Condition q;
  try {
    q = kind == PosetKind::Club ? club_add_models(pool, p, ms) : sq_add_models(pool, p, ms);
  } catch (const PreconditionError&) {
    throw Vacuous{};
  } catch (const PostconditionError& e) {
    return std::string(e.what());
  }
  PosetVerdict v = validate(kind, pool, q);
  if (!v.ok()) return "result fails clause " + std::to_string(v.failures.front().clause);
  if (!extends(q, p)) return "result does not extend the input";
  if (!family_subset(ms, q.a)) return "result misses an added model";
  return std::nullopt;
}

Property add_models(PosetKind kind) {
  Property p;
  std::string id = std::string(kind_name(kind)) + "-add-models";
  p.info = {id, kind_name(kind), Tier::Theorem,
            "adding a strongly isomorphic family to the side set gives a valid stronger condition"};
  p.run = [kind, id](Context& ctx) {
    std::mt19937_64 rng = ctx.rng(0x70);
    for (const ModelPool& pool : poset_pools(ctx)) {
      auto fams = small_subsets(pool.all(), 3, 0, rng);
      for (const Condition& c : enumerate_instance(kind, pool, 1).conditions)
        for (const Family& ms : fams) ctx.run({id, pool, {serialize(c, pool), names_arg(pool, ms)}});
    }
  };
  p.check = [kind](const Witness& w) { return add_models_failure(kind, w.pool, condition_arg(w, 0), family_arg(w, 1)); };
  return p;
}

std::optional<std::string> add_pair_failure(const ModelPool& pool, const Condition& p, int a, int a2) {
  if (!club_validate(pool, p).ok() || club_add_pair_blocker(pool, p, a, a2)) throw Vacuous{};
  Condition q;
  try {
    q = club_add_pair(pool, p, a, a2);
  } catch (const PostconditionError& e) {
    return std::string(e.what());
  }
  PosetVerdict v = club_validate(pool, q);
  if (!v.ok()) return "result fails clause " + std::to_string(v.failures.front().clause);
  if (!extends(q, p)) return "result does not extend the input";
  if (!q.has(make_pair(a, a2))) return "result misses the pair";
  return std::nullopt;
}

Property add_pair() {
  Property p;
  p.info = {"club-add-pair", "club", Tier::Theorem,
            "a pair meeting both hypotheses can be added to a condition together with its images"};
  p.run = [](Context& ctx) {
    for (const ModelPool& pool : poset_pools(ctx)) {
      auto cand = candidate_elements(PosetKind::Club, pool.universe());
      for (const Condition& c : enumerate_instance(PosetKind::Club, pool, 2).conditions)
        for (const Element& e : cand) {
          int a = e.items()[0].value(), a2 = e.items()[1].value();
          if (club_add_pair_blocker(pool, c, a, a2)) continue;
          if (add_pair_failure(pool, c, a, a2))
            ctx.fail({"club-add-pair", pool, {serialize(c, pool), arg(a), arg(a2)}});
          else
            ctx.pass();
        }
    }
  };
  p.check = [](const Witness& w) { return add_pair_failure(w.pool, condition_arg(w, 0), int_arg(w, 1), int_arg(w, 2)); };
  return p;
}

std::optional<std::string> unbounded_failure(const ModelPool& pool, const Condition& p, int gamma) {
  Condition q;
  try {
    q = club_extend_unbounded(pool, p, gamma);
  } catch (const PreconditionError&) {
    throw Vacuous{};
  } catch (const PostconditionError& e) {
    return std::string(e.what());
  }
  if (!club_validate(pool, q).ok()) return "result is not valid";
  if (!extends(q, p)) return "result does not extend the input";
  for (const Element& e : q.x) {
    int b = e.items()[0].value();
    if (e.items()[1].value() == b && b > gamma && pool.universe().in_s(b) && !p.has(e)) return std::nullopt;
  }
  return "result has no new pair <b, b> with b in s above " + std::to_string(gamma);
}

Property extend_unbounded() {
  Property p;
  p.info = {"club-extend-unbounded", "club", Tier::Theorem,
            "every condition has an extension with a point of s above any given ordinal"};
  p.run = [](Context& ctx) {
    for (const ModelPool& pool : poset_pools(ctx))
      for (const Condition& c : enumerate_instance(PosetKind::Club, pool, 2).conditions)
        for (int gamma = 0; gamma < pool.universe().theta(); ++gamma)
          ctx.run({"club-extend-unbounded", pool, {serialize(c, pool), arg(gamma)}});
  };
  p.check = [](const Witness& w) { return unbounded_failure(w.pool, condition_arg(w, 0), int_arg(w, 1)); };
  return p;
}

constexpr std::size_t kGenericMaxX = 2;

std::optional<std::string> generic_failure(const GenericTable& fast, const GenericTable& exact, const Condition& q) {
  GenericVerdict vf = fast.check(q), ve = exact.check(q);
  if (vf.ok != ve.ok) return std::string("fast mode says ") + (vf.ok ? "generic" : "not generic") + ", exact mode disagrees";
  if (!vf.ok) return "no reduction for " + std::to_string(vf.checked) + " checked extensions";
  if (!vf.restriction_is_reduction) return "the restriction is not always a reduction";
  return std::nullopt;
}

Property strong_generic() {
  Property p;
  p.info = {"strong-generic", "club", Tier::Theorem,
            "every condition is strongly generic for its side models, fast and exact checks agree and the "
            "restriction is a reduction"};
  p.run = [](Context& ctx) {
    for (const ModelPool& pool : poset_pools(ctx)) {
      PosetInstance inst = enumerate_instance(PosetKind::Club, pool, kGenericMaxX);
      for (ModelId n = 0; n < pool.size(); ++n) {
        std::optional<GenericTable> exact;
        try {
          exact.emplace(inst, n, GenericMode::Exact);
        } catch (const PreconditionError&) {
          continue;  // subposet above the exact-mode cap
        }
        GenericTable fast(inst, n, GenericMode::Fast);
        for (const Condition& q : inst.conditions) {
          if (!family_contains(q.a, n)) continue;
          if (generic_failure(fast, *exact, q))
            ctx.fail({"strong-generic", pool, {pool[n].name(), serialize(q, pool)}});
          else
            ctx.pass();
        }
      }
    }
  };
  p.check = [](const Witness& w) -> std::optional<std::string> {
    PosetInstance inst = enumerate_instance(PosetKind::Club, w.pool, kGenericMaxX);
    ModelId n = model_arg(w, 0);
    Condition q = condition_arg(w, 1);
    if (!family_contains(q.a, n) || !club_validate(w.pool, q).ok()) throw Vacuous{};
    try {
      return generic_failure(GenericTable(inst, n, GenericMode::Fast), GenericTable(inst, n, GenericMode::Exact), q);
    } catch (const PreconditionError&) {
      throw Vacuous{};
    }
  };
  return p;
}

std::optional<std::string> amalgamate_failure(const ModelPool& input, const Condition& r, const Condition& w,
                                              ModelId n) {
  ModelPool pool = input;
  Condition out;
  try {
    out = club_amalgamate(pool, r, w, n);
  } catch (const PreconditionError&) {
    throw Vacuous{};
  } catch (const PostconditionError& e) {
    return std::string(e.what());
  }
  if (!club_validate(pool, out).ok()) return "amalgam is not valid";
  if (!extends(out, r) || !extends(out, w)) return "amalgam does not extend both conditions";
  return std::nullopt;
}

Property club_amalgamate_property() {
  Property p;
  p.info = {"club-amalgamate", "club", Tier::AxiomConditional,
            "a condition and an extension of its restriction to a side model have a common extension"};
  p.run = [](Context& ctx) {
    for (const ModelPool& pool : poset_pools(ctx)) {
      PosetInstance inst = enumerate_instance(PosetKind::Club, pool, kGenericMaxX);
      for (ModelId n = 0; n < pool.size(); ++n) {
        PosetInstance inside = enumerate_inside(PosetKind::Club, pool, n);
        for (const Condition& r : inst.conditions) {
          if (!family_contains(r.a, n)) continue;
          Condition res = restrict_to(pool, r, n);
          for (const Condition& w : inside.conditions)
            if (extends(w, res))
              ctx.run({"club-amalgamate", pool, {serialize(r, pool), serialize(w, pool), pool[n].name()}});
        }
      }
    }
  };
  p.check = [](const Witness& w) {
    return amalgamate_failure(w.pool, condition_arg(w, 0), condition_arg(w, 1), model_arg(w, 2));
  };
  return p;
}

const std::vector<int> kRunTargets{0, 3, 8};

std::optional<std::string> generic_run_failure(const ModelPool& pool, std::uint64_t seed) {
  GenericRequirements req;
  req.targets = kRunTargets;
  req.model_sets = {pool.all()};
  GenericRun run;
  try {
    run = generic_run(pool, Condition{}, req, seed);
  } catch (const Error& e) {
    return std::string(e.what());
  }
  if (run.stuck) return "stuck at " + *run.stuck;
  for (std::size_t i = 0; i < run.filter.size(); ++i) {
    const Condition& c = run.filter[i].condition;
    if (!club_validate(pool, c).ok()) return "step " + run.filter[i].action + " is not valid";
    if (i > 0 && !extends(c, run.filter[i - 1].condition)) return "step " + run.filter[i].action + " does not descend";
  }
  for (int a : run.c_s)
    if (!pool.universe().in_s(a)) return std::to_string(a) + " is in C_S but not in s";
  for (int t : kRunTargets)
    if (std::none_of(run.c_s.begin(), run.c_s.end(), [&](int a) { return a > t; }))
      return "no point of C_S above " + std::to_string(t);
  return std::nullopt;
}

Property generic_run_property() {
  Property p;
  p.info = {"generic-run", "club", Tier::Theorem,
            "seeded descending runs meet every target and every requirement with valid conditions"};
  p.run = [](Context& ctx) {
    ModelPool pool = ctx.fixture ? *ctx.fixture : single_model_pool();
    for (int seed = 1; seed <= 20; ++seed) ctx.run({"generic-run", pool, {arg(seed)}});
  };
  p.check = [](const Witness& w) { return generic_run_failure(w.pool, static_cast<std::uint64_t>(int_arg(w, 0))); };
  return p;
}

}  // namespace

void add_poset_properties(std::vector<Property>& out) {
  out.push_back(agreement(PosetKind::Square));
  out.push_back(transport(PosetKind::Square));
  out.push_back(add_models(PosetKind::Square));
  out.push_back(agreement(PosetKind::Club));
  out.push_back(transport(PosetKind::Club));
  out.push_back(add_models(PosetKind::Club));
  out.push_back(add_pair());
  out.push_back(extend_unbounded());
  out.push_back(strong_generic());
  out.push_back(club_amalgamate_property());
  out.push_back(generic_run_property());
}

}  // namespace detail

}  // namespace adq
