// adq: command line front end for the model calculus, the amalgamation
// engines, the two posets and the property harness.
//
// Exit codes: 0 ok, 1 verdict false, 2 parse or invariant error,
// 3 precondition failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "adq/amalgam.hpp"
#include "adq/axioms.hpp"
#include "adq/calculus.hpp"
#include "adq/coherence.hpp"
#include "adq/errors.hpp"
#include "adq/harness.hpp"
#include "adq/iso.hpp"
#include "adq/posets.hpp"
#include "adq/scenario.hpp"
#include "adq/sexpr.hpp"
#include "adq/text.hpp"

namespace {

using namespace adq;

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kParse = 2;
constexpr int kPrecondition = 3;

struct InputError : Error {
  using Error::Error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ModelPool load_pool(const std::string& path) { return parse_pool(slurp(path)); }

Family family_text(const ModelPool& pool, const std::string& text) {
  Family f;
  for (const std::string& n : names_from(read_sexpr(text))) f.push_back(pool.id(n));
  return make_family(std::move(f));
}

std::string family_out(const ModelPool& pool, const Family& f) { return serialize_names(pool.names(f)); }

/// A condition file holds an optional (pool ...) form followed by a (cond ...) form.
Condition load_condition(const std::string& path, std::optional<ModelPool>& pool) {
  std::vector<SExpr> forms = read_all(slurp(path));
  const SExpr* cond = nullptr;
  for (const SExpr& f : forms) {
    if (f.is_form("pool") && !pool) pool = pool_from(f);
    if (f.is_form("cond")) cond = &f;
  }
  if (!pool) throw InputError("'" + path + "' has no pool and none was given with --pool");
  if (!cond) throw InputError("'" + path + "' has no (cond ...) form");
  return condition_from(*cond, *pool);
}

std::string verdict_text(const PosetVerdict& v) {
  std::string out = v.ok() ? "(verdict :ok true)" : "(verdict :ok false :clauses " + serialize_ordinals(v.clauses()) + ")";
  for (const auto& f : v.failures) out += "\n; clause " + std::to_string(f.clause) + ": " + f.detail;
  return out;
}

PosetKind kind_of(const std::string& s) { return s == "square" ? PosetKind::Square : PosetKind::Club; }

std::vector<int> int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite side-condition workbench"};
  app.require_subcommand(1);
  int code = kOk;

  // compare
  std::string pool_file, m_name, n_name;
  auto* compare_cmd = app.add_subcommand("compare", "comparison point, relation and remainders of two models");
  compare_cmd->add_option("--pool", pool_file, "pool file")->required();
  compare_cmd->add_option("--m", m_name)->required();
  compare_cmd->add_option("--n", n_name)->required();
  compare_cmd->callback([&] {
    ModelPool pool = load_pool(pool_file);
    ModelId m = pool.id(m_name), n = pool.id(n_name);
    PairData d = compare(pool, m, n);
    std::cout << "(compare :m " << m_name << " :n " << n_name << " :beta " << d.beta << " :relation "
              << to_string(d.relation);
    if (d.relation != Relation::NONE)
      std::cout << " :r-mn " << serialize_ordinals(d.r_mn) << " :r-nm " << serialize_ordinals(d.r_nm);
    std::cout << ")\n";
    if (d.relation == Relation::NONE) code = kFalse;
  });

  // iso
  bool strong = false;
  auto* iso_cmd = app.add_subcommand("iso", "the structure isomorphism between two models");
  iso_cmd->add_option("--pool", pool_file)->required();
  iso_cmd->add_option("--m", m_name)->required();
  iso_cmd->add_option("--n", n_name)->required();
  iso_cmd->add_flag("--strong", strong, "require the map to fix common members");
  iso_cmd->callback([&] {
    ModelPool pool = load_pool(pool_file);
    ModelId m = pool.id(m_name), n = pool.id(n_name);
    auto s = iso(pool, m, n);
    if (!s || (strong && !is_strong_iso(pool, m, n))) {
      std::cout << "none\n";
      code = kFalse;
      return;
    }
    std::cout << "(iso :from " << m_name << " :to " << n_name << " :map (";
    bool first = true;
    for (const auto& [a, b] : s->ordinal_map()) {
      std::cout << (first ? "" : " ") << "(" << a << " " << b << ")";
      first = false;
    }
    std::cout << "))\n";
  });

  // validate
  std::string kind = "coherent", set_text;
  auto* validate_cmd = app.add_subcommand("validate", "check a family or a whole pool");
  validate_cmd->add_option("--kind", kind)->check(CLI::IsMember({"coherent", "adequate", "s-adequate", "well-formed"}));
  validate_cmd->add_option("--pool", pool_file)->required();
  validate_cmd->add_option("--set", set_text, "family such as \"(K N1 N2)\"; defaults to the whole pool");
  validate_cmd->callback([&] {
    ModelPool pool = load_pool(pool_file);
    Family a = set_text.empty() ? pool.all() : family_text(pool, set_text);
    bool ok = true;
    std::string detail;
    if (kind == "coherent") {
      CoherenceVerdict v = is_coherent(pool, a);
      ok = v.ok();
      if (!ok) detail = std::string(to_string(v.clause)) + ": " + v.detail;
    } else if (kind == "adequate") {
      if (auto bad = first_incomparable(pool, a)) {
        ok = false;
        detail = "'" + pool[bad->first].name() + "' and '" + pool[bad->second].name() + "' are incomparable";
      }
    } else if (kind == "s-adequate") {
      SAdequacy v = check_s_adequate(pool, a);
      ok = v.ok;
      if (!ok && v.incomparable)
        detail = "'" + pool[v.incomparable->first].name() + "' and '" + pool[v.incomparable->second].name() +
                 "' are incomparable";
      else if (!ok && v.offender)
        detail = "remainder point " + std::to_string(v.offender->zeta) + " of '" + pool[v.offender->n].name() +
                 "' over '" + pool[v.offender->m].name() + "' lies outside S";
    } else {
      auto v = check_axioms(pool, 1);
      ok = v.empty();
      if (!ok) detail = describe(pool, v.front());
    }
    std::cout << "(verdict :kind " << kind << " :ok " << (ok ? "true" : "false") << ")\n";
    if (!ok) std::cout << "; " << detail << "\n";
    if (!ok) code = kFalse;
  });

  // amalgamate
  std::string a_text, b_text, primed_text, inside_text;
  int beta = 0, beta_star = 0;
  auto* amalgamate = app.add_subcommand("amalgamate", "countable and uncountable amalgamation");
  amalgamate->require_subcommand(1);
  auto* countable = amalgamate->add_subcommand("countable", "amalgamate A with B over N");
  countable->add_option("--pool", pool_file)->required();
  countable->add_option("--a", a_text)->required();
  countable->add_option("--n", n_name)->required();
  countable->add_option("--b", b_text)->required();
  countable->callback([&] {
    ModelPool pool = load_pool(pool_file);
    Family a = family_text(pool, a_text), b = family_text(pool, b_text);
    Family c = amalgamate_countable(pool, a, pool.id(n_name), b);
    std::cout << serialize(pool) << "\n(family " << family_out(pool, c) << ")\n";
  });
  auto* uncountable = amalgamate->add_subcommand("uncountable", "amalgamate A with its primed copy");
  uncountable->add_option("--pool", pool_file)->required();
  uncountable->add_option("--a", a_text)->required();
  uncountable->add_option("--primed", primed_text, "pairs such as \"((K2 K1) (N2 N1))\"")->required();
  uncountable->add_option("--beta", beta)->required();
  uncountable->add_option("--beta-star", beta_star)->required();
  uncountable->add_option("--inside", inside_text);
  uncountable->callback([&] {
    ModelPool pool = load_pool(pool_file);
    UncountableInput in;
    in.a = family_text(pool, a_text);
    for (const SExpr& p : read_sexpr(primed_text).list) {
      if (p.list.size() != 2) throw InputError("each primed entry is a pair of names");
      in.primed[pool.id(p.list[0].text)] = pool.id(p.list[1].text);
    }
    in.beta = beta;
    in.beta_star = beta_star;
    if (!inside_text.empty()) in.inside = family_text(pool, inside_text);
    UncountableResult r = amalgamate_uncountable(pool, in);
    std::cout << "(family " << family_out(pool, r.c) << ")\n(bound " << serialize_ordinals(r.bound) << ")\n";
  });

  // poset
  std::string poset_kind, cond_file, r_file, w_file, universe_file, targets = "0,3,8", models_text;
  std::uint64_t seed = 1;
  bool exact = false;
  std::size_t max_x = 1;
  auto* poset = app.add_subcommand("poset", "square and club conditions");
  poset->add_option("kind", poset_kind)->required()->check(CLI::IsMember({"square", "club"}));
  poset->require_subcommand(1);
  auto* pvalidate = poset->add_subcommand("validate", "check a condition clause by clause");
  pvalidate->add_option("file", cond_file)->required();
  pvalidate->add_option("--pool", pool_file);
  pvalidate->callback([&] {
    std::optional<ModelPool> pool;
    if (!pool_file.empty()) pool = load_pool(pool_file);
    Condition c = load_condition(cond_file, pool);
    PosetVerdict v = validate(kind_of(poset_kind), *pool, c);
    std::cout << verdict_text(v) << "\n";
    if (!v.ok()) code = kFalse;
  });
  auto* pamalgamate = poset->add_subcommand("amalgamate", "amalgamate r with a condition w inside N (club)");
  pamalgamate->add_option("--r", r_file)->required();
  pamalgamate->add_option("--w", w_file)->required();
  pamalgamate->add_option("--n", n_name)->required();
  pamalgamate->add_option("--pool", pool_file);
  pamalgamate->callback([&] {
    if (kind_of(poset_kind) != PosetKind::Club) throw PreconditionError("poset", "amalgamation is for the club poset");
    std::optional<ModelPool> pool;
    if (!pool_file.empty()) pool = load_pool(pool_file);
    Condition r = load_condition(r_file, pool);
    Condition w = load_condition(w_file, pool);
    Condition s = club_amalgamate(*pool, r, w, pool->id(n_name));
    std::cout << serialize(*pool) << "\n" << serialize(s, *pool) << "\n";
  });
  auto* prun = poset->add_subcommand("run", "simulate a generic filter (club)");
  prun->add_option("--universe", universe_file);
  prun->add_option("--pool", pool_file)->required();
  prun->add_option("--targets", targets, "comma separated ordinals");
  prun->add_option("--models", models_text, "model-adding requirement such as \"(M)\"");
  prun->add_option("--seed", seed);
  prun->callback([&] {
    if (kind_of(poset_kind) != PosetKind::Club) throw PreconditionError("poset", "generic runs are for the club poset");
    ModelPool pool = load_pool(pool_file);
    if (!universe_file.empty() && !(parse_universe(slurp(universe_file)) == pool.universe()))
      throw PreconditionError("universe", "the pool lives in a different universe");
    GenericRequirements req;
    req.targets = int_list(targets);
    req.model_sets.push_back(models_text.empty() ? pool.all() : family_text(pool, models_text));
    GenericRun run = generic_run(pool, Condition{}, req, seed);
    for (const auto& s : run.filter) std::cout << "; " << s.action << "\n" << serialize(s.condition, pool) << "\n";
    for (const auto& s : run.skipped) std::cout << "; skipped " << s << "\n";
    std::cout << "(run :c-s " << serialize_ordinals(run.c_s) << " :steps " << run.filter.size() << ")\n";
    if (run.stuck) {
      std::cout << "; stuck: " << *run.stuck << "\n";
      code = kFalse;
    }
  });
  auto* pgeneric = poset->add_subcommand("strong-generic", "is q strongly generic for a model");
  pgeneric->add_option("--q", cond_file)->required();
  pgeneric->add_option("--m", m_name)->required();
  pgeneric->add_option("--pool", pool_file);
  pgeneric->add_option("--max-x", max_x, "working part bound of the enumerated instance");
  pgeneric->add_flag("--exact", exact, "check every dense subset instead of reductions");
  pgeneric->callback([&] {
    std::optional<ModelPool> pool;
    if (!pool_file.empty()) pool = load_pool(pool_file);
    Condition q = load_condition(cond_file, pool);
    PosetInstance inst = enumerate_instance(kind_of(poset_kind), *pool, max_x);
    GenericVerdict v = strong_generic_check(inst, q, pool->id(m_name), exact ? GenericMode::Exact : GenericMode::Fast);
    std::cout << "(strong-generic :ok " << (v.ok ? "true" : "false") << " :subposet " << v.subposet_size
              << " :checked " << v.checked << ")\n";
    if (v.failing_r) std::cout << "; no reduction for " << serialize(*v.failing_r, *pool) << "\n";
    if (!v.ok) code = kFalse;
  });

  // check
  Bounds bounds;
  std::string suite, fixture_file, report_file;
  bool exhaustive = false;
  auto* check_cmd = app.add_subcommand("check", "run a property suite");
  check_cmd->add_option("--suite", suite)->required();
  check_cmd->add_option("--theta", bounds.theta);
  check_cmd->add_option("--max-models", bounds.max_models);
  check_cmd->add_option("--max-trace", bounds.max_trace);
  check_cmd->add_option("--samples", bounds.samples, "seeded instances for sampled properties");
  check_cmd->add_option("--seed", seed);
  check_cmd->add_flag("--exhaustive", exhaustive);
  check_cmd->add_option("--pool", fixture_file, "run on this pool instead of generated ones");
  check_cmd->add_option("--report", report_file, "also write the canonical report here");
  check_cmd->callback([&] {
    bounds.exhaustive = exhaustive;
    std::optional<ModelPool> fixture;
    if (!fixture_file.empty()) fixture = load_pool(fixture_file);
    auto reports = run_suite(suite, bounds, seed, fixture ? &*fixture : nullptr);
    std::string text = report_text(reports);
    std::cout << text << report_summary(reports);
    if (!report_file.empty()) std::ofstream(report_file) << text;
    for (const auto& r : reports)
      if (r.failure_count || (r.expected && *r.expected != r.count)) code = kFalse;
  });

  // gen
  std::string template_file, out_file;
  int depth = -1;
  auto* gen = app.add_subcommand("gen", "instantiate a template into a pool");
  gen->add_option("--universe", universe_file)->required();
  gen->add_option("--template", template_file, "(template ... :placements (...))")->required();
  gen->add_option("--out", out_file);
  gen->add_option("--saturate", depth, "repair rounds instead of requiring the axioms outright");
  gen->callback([&] {
    Universe u = parse_universe(slurp(universe_file));
    std::vector<std::vector<int>> placements;
    Template t = template_from(read_sexpr(slurp(template_file)), &placements);
    check_template(u, t);
    if (placements.empty()) placements.push_back(t.tail);
    ModelPool pool(u);
    if (depth >= 0) {
      Saturation s = saturate(u, instantiate(u, t, placements), depth);
      if (!s.ok()) {
        std::cout << "; " << s.failure << "\n";
        code = kFalse;
        return;
      }
      pool = std::move(*s.pool);
    } else {
      pool = gen_template(u, t, placements);
    }
    std::string text = serialize(pool);
    if (text.back() != '\n') text += "\n";
    if (out_file.empty())
      std::cout << text;
    else
      std::ofstream(out_file) << text;
  });

  // replay
  std::string witness_file;
  auto* replay_cmd = app.add_subcommand("replay", "re-run a failure witness");
  replay_cmd->add_option("--witness", witness_file)->required();
  replay_cmd->callback([&] {
    Witness w = witness_from(read_sexpr(slurp(witness_file)));
    Replay r = replay(w);
    std::cout << "(replay :property " << w.property << " :result " << (r.failed ? "fail" : "pass") << ")\n";
    if (!r.detail.empty()) std::cout << "; " << r.detail << "\n";
    if (r.failed) code = kFalse;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  } catch (const PreconditionError& e) {
    std::cerr << e.what() << "\n";
    return kPrecondition;
  } catch (const PostconditionError& e) {
    std::cerr << e.what() << "\n";
    return kFalse;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kParse;
  }
  return code;
}
