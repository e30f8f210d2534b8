#include <algorithm>
#include <map>
#include <set>

#include "adq/amalgam.hpp"
#include "adq/calculus.hpp"
#include "adq/coherence.hpp"
#include "adq/condition.hpp"
#include "adq/errors.hpp"
#include "adq/iso.hpp"
#include "adq/reference.hpp"
#include "adq/text.hpp"
#include "harness_detail.hpp"

namespace adq::detail {

namespace {

std::vector<Family> coherent_families(const ModelPool& pool, std::mt19937_64& rng, std::size_t min_size = 1) {
  std::vector<Family> out;
  for (Family& f : small_subsets(pool.all(), 3, 4, rng))
    if (f.size() >= min_size && is_coherent(pool, f).ok()) out.push_back(std::move(f));
  return out;
}

std::string who(const ModelPool& pool, const Family& f) { return serialize_names(pool.names(f)); }

template <class T>
std::vector<T> pick(std::vector<T> v, std::size_t n, std::mt19937_64& rng) {
  std::shuffle(v.begin(), v.end(), rng);
  if (v.size() > n) v.resize(n);
  return v;
}

void require(bool hypothesis) {
  if (!hypothesis) throw Vacuous{};
}

std::uint64_t salt_of(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}

bool is_coherent_family(const ModelPool& pool, const Family& a) { return is_coherent(pool, a).ok(); }

// Coherence.

std::optional<std::string> restrict_failure(const ModelPool& pool, const Family& a, ModelId m) {
  require(family_contains(a, m) && is_coherent_family(pool, a));
  Family r;
  try {
    r = restrict(pool, a, m);
  } catch (const PostconditionError& e) {
    return std::string(e.what());
  }
  Family expected;
  for (ModelId k : a)
    if (pool.member(k, m)) expected.push_back(k);
  if (r != make_family(expected)) return "restriction " + who(pool, r) + " is not the members of the set inside M";
  if (!is_coherent_family(pool, r)) return "restriction " + who(pool, r) + " is not coherent";
  return std::nullopt;
}

std::optional<std::string> extend_failure(const ModelPool& pool, const Family& a, ModelId m) {
  require(is_coherent_family(pool, a));
  for (ModelId k : a) require(pool.member(k, m));
  Family r;
  try {
    r = extend_with_model(pool, a, m);
  } catch (const PreconditionError&) {
    throw Vacuous{};
  } catch (const PostconditionError& e) {
    return std::string(e.what());
  }
  if (!family_subset(a, r) || !family_contains(r, m)) return "the extension lost a model";
  if (!is_coherent_family(pool, r)) return "extension " + who(pool, r) + " is not coherent";
  return std::nullopt;
}

std::optional<std::string> family_failure(const ModelPool& pool, const Family& a, const Family& ms) {
  require(is_coherent_family(pool, a));
  Family r;
  try {
    r = extend_with_family(pool, a, ms);
  } catch (const PreconditionError&) {
    throw Vacuous{};
  } catch (const PostconditionError& e) {
    return std::string(e.what());
  }
  if (!family_subset(a, r) || !family_subset(ms, r)) return "the extension lost a model";
  if (!is_coherent_family(pool, r)) return "extension " + who(pool, r) + " is not coherent";
  return std::nullopt;
}

std::optional<std::string> low_sets_failure(const ModelPool& pool, const Family& a) {
  require(is_coherent_family(pool, a));
  if (auto bad = check_low_sets(pool, a))
    return "a low set of " + pool[bad->first].name() + " is missing from " + pool[bad->second].name();
  return std::nullopt;
}

std::optional<std::string> equivalences_failure(const ModelPool& pool, const Family& a) {
  require(is_coherent_family(pool, a));
  if (auto bad = check_equivalences(pool, a))
    return "relations of " + pool[bad->first].name() + " and " + pool[bad->second].name() +
           " disagree with their omega1-traces";
  return std::nullopt;
}

std::optional<std::string> coherence_reference_failure(const ModelPool& pool, const Family& a) {
  std::vector<Element> side;
  for (ModelId m : a) side.push_back(pool[m].elems());
  bool fast = is_coherent_family(pool, a), slow = reference::coherent(pool.universe(), side);
  if (fast != slow)
    return std::string("the checker says ") + (fast ? "coherent" : "not coherent") + " but the definition says " +
           (slow ? "coherent" : "not coherent");
  return std::nullopt;
}

Property family_property(const char* id, Tier tier, const char* summary,
                         std::optional<std::string> (*f)(const ModelPool&, const Family&), bool only_coherent) {
  Property p;
  p.info = {id, "coherence", tier, summary};
  std::string name = id;
  p.run = [name, f, only_coherent](Context& ctx) {
    std::mt19937_64 rng = ctx.rng(salt_of(name));
    for (const ModelPool& pool : ctx.pools()) {
      auto fams = only_coherent ? coherent_families(pool, rng) : small_subsets(pool.all(), 3, 4, rng);
      for (const Family& a : fams) ctx.run({name, pool, {names_arg(pool, a)}});
    }
  };
  p.check = [f](const Witness& w) { return f(w.pool, family_arg(w, 0)); };
  return p;
}

Property restrict_coherent() {
  Property p;
  p.info = {"restrict-coherent", "coherence", Tier::AxiomConditional,
            "the members of a coherent set lying in one of its models form a coherent set"};
  p.run = [](Context& ctx) {
    std::mt19937_64 rng = ctx.rng(0x1162);
    for (const ModelPool& pool : ctx.pools())
      for (const Family& a : coherent_families(pool, rng))
        for (ModelId m : a) ctx.run({"restrict-coherent", pool, {names_arg(pool, a), pool[m].name()}});
  };
  p.check = [](const Witness& w) { return restrict_failure(w.pool, family_arg(w, 0), model_arg(w, 1)); };
  return p;
}

Property extend_coherent() {
  Property p;
  p.info = {"extend-coherent", "coherence", Tier::AxiomConditional,
            "a coherent set inside a model stays coherent with the model added"};
  p.run = [](Context& ctx) {
    std::mt19937_64 rng = ctx.rng(0x1161);
    for (const ModelPool& pool : ctx.pools())
      for (const Family& a : coherent_families(pool, rng))
        for (ModelId m = 0; m < pool.size(); ++m) {
          bool inside = std::all_of(a.begin(), a.end(), [&](ModelId k) { return pool.member(k, m); });
          if (inside) ctx.run({"extend-coherent", pool, {names_arg(pool, a), pool[m].name()}});
        }
  };
  p.check = [](const Witness& w) { return extend_failure(w.pool, family_arg(w, 0), model_arg(w, 1)); };
  return p;
}

Property family_coherent() {
  Property p;
  p.info = {"family-coherent", "coherence", Tier::AxiomConditional,
            "a coherent set stays coherent with a strongly isomorphic family above it added"};
  p.run = [](Context& ctx) {
    std::mt19937_64 rng = ctx.rng(0x1170);
    for (const ModelPool& pool : ctx.pools())
      for (const Family& a : coherent_families(pool, rng)) {
        Family above;
        for (ModelId m = 0; m < pool.size(); ++m)
          if (std::all_of(a.begin(), a.end(), [&](ModelId k) { return pool.member(k, m); })) above.push_back(m);
        std::vector<bool> used(above.size());
        for (std::size_t i = 0; i < above.size(); ++i) {
          if (used[i]) continue;
          Family cls;
          for (std::size_t j = i; j < above.size(); ++j)
            if (!used[j] && strongly_isomorphic(pool, above[i], above[j])) {
              used[j] = true;
              cls.push_back(above[j]);
            }
          for (const Family& ms : small_subsets(cls, 3, 0, rng))
            ctx.run({"family-coherent", pool, {names_arg(pool, a), names_arg(pool, ms)}});
        }
      }
  };
  p.check = [](const Witness& w) { return family_failure(w.pool, family_arg(w, 0), family_arg(w, 1)); };
  return p;
}

// Amalgamation.

Element random_pair(const Model& m, std::mt19937_64& rng) {
  const auto& t = m.trace();
  if (t.empty()) return make_pair(0, 0);
  std::uniform_int_distribution<std::size_t> d(0, t.size() - 1);
  int a = t[d(rng)], b = t[d(rng)];
  return make_pair(std::min(a, b), std::max(a, b));
}

ElementSet random_pairs(const ModelPool& pool, const Family& a, std::mt19937_64& rng) {
  ElementSet x;
  int n = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int i = 0; i < n; ++i) x.push_back(random_pair(pool[a[std::uniform_int_distribution<std::size_t>(0, a.size() - 1)(rng)]], rng));
  return make_element_set(x);
}

std::optional<std::string> close_pair_failure(const ModelPool& pool, const ElementSet& x, const Family& a) {
  require(is_coherent_family(pool, a));
  ElementSet z;
  try {
    z = close_pair(pool, x, a);
  } catch (const PostconditionError& e) {
    return std::string(e.what());
  }
  for (const Element& e : x)
    if (!std::binary_search(z.begin(), z.end(), e)) return "closure lost " + serialize(e);
  if (auto gap = closure_gap(pool, z, a))
    return "closure is not closed: " + serialize(gap->a) + " under " + pool[gap->from].name() + " -> " +
           pool[gap->to].name();
  for (const Element& e : z) {
    if (std::binary_search(x.begin(), x.end(), e)) continue;
    bool image = false;
    for (ModelId m : a)
      for (ModelId m2 : a) {
        auto s = iso(pool, m, m2);
        if (!s) continue;
        for (const Element& d : inside(pool[m], x))
          if (s->apply(d) == e) image = true;
      }
    if (!image) return serialize(e) + " is in the closure but is no image of x";
  }
  return std::nullopt;
}

Property close_pair_property() {
  Property p;
  p.info = {"close-pair", "amalgam", Tier::Theorem,
            "one step of closure under the isomorphisms of a coherent set is closed and minimal"};
  p.run = [](Context& ctx) {
    std::mt19937_64 rng = ctx.rng(0x41);
    for (const ModelPool& pool : ctx.pools())
      for (const Family& a : pick(coherent_families(pool, rng, 2), 3, rng))
        for (int i = 0; i < 2; ++i)
          ctx.run({"close-pair", pool, {elements_text(random_pairs(pool, a, rng)), names_arg(pool, a)}});
  };
  p.check = [](const Witness& w) { return close_pair_failure(w.pool, elements_arg(w, 0), family_arg(w, 1)); };
  return p;
}

// Second sets for the constructions over N: the members of A inside N plus
// a random selection of N's other member models, coherent.
std::optional<Family> second_set(const ModelPool& pool, const Family& a, ModelId n, std::mt19937_64& rng) {
  Family b;
  for (ModelId k : pool.models_in(n))
    if (family_contains(a, k) || std::bernoulli_distribution(0.5)(rng)) b.push_back(k);
  b = make_family(b);
  if (!is_coherent_family(pool, b)) return std::nullopt;
  return b;
}

std::optional<std::string> close_over_failure(const ModelPool& input, ModelId n, const ElementSet& x, const Family& a,
                                              const ElementSet& y, const Family& b) {
  ModelPool pool = input;
  ClosedPair out;
  try {
    out = close_over(pool, n, x, a, y, b);
  } catch (const PreconditionError&) {
    throw Vacuous{};
  } catch (const PostconditionError& e) {
    return std::string(e.what());
  }
  if (auto gap = closure_gap(pool, out.x, out.a)) return "(z, C) is not closed at " + serialize(gap->a);
  for (const ElementSet* part : {&x, &y})
    for (const Element& e : *part)
      if (!std::binary_search(out.x.begin(), out.x.end(), e)) return "z misses " + serialize(e);
  if (inside(pool[n], out.x) != make_element_set(y)) return "z inside N differs from y";
  return std::nullopt;
}

Property close_over_property() {
  Property p;
  p.info = {"close-over", "amalgam", Tier::Theorem,
            "closure over N is closed, contains x and y, and agrees with y inside N"};
  p.run = [](Context& ctx) {
    std::mt19937_64 rng = ctx.rng(0x42);
    for (const ModelPool& pool : ctx.pools())
      for (const Family& a : pick(coherent_families(pool, rng, 2), 4, rng)) {
        ModelId n = a[std::uniform_int_distribution<std::size_t>(0, a.size() - 1)(rng)];
        auto b = second_set(pool, a, n, rng);
        if (!b) continue;
        ElementSet x, y;
        try {
          x = close_pair(pool, random_pairs(pool, a, rng), a);
          ElementSet y0 = inside(pool[n], x);
          y0.push_back(random_pair(pool[n], rng));
          y = b->empty() ? make_element_set(y0) : close_pair(pool, y0, *b);
        } catch (const Error&) {
          continue;
        }
        ctx.run({"close-over", pool,
                 {pool[n].name(), elements_text(x), names_arg(pool, a), elements_text(y), names_arg(pool, *b)}});
      }
  };
  p.check = [](const Witness& w) {
    return close_over_failure(w.pool, model_arg(w, 0), elements_arg(w, 1), family_arg(w, 2), elements_arg(w, 3),
                              family_arg(w, 4));
  };
  return p;
}

std::optional<std::string> countable_failure(const ModelPool& input, const Family& a, ModelId n, const Family& b) {
  ModelPool pool = input;
  Family c;
  try {
    c = amalgamate_countable(pool, a, n, b);
  } catch (const PreconditionError&) {
    throw Vacuous{};
  } catch (const PostconditionError& e) {
    return std::string(e.what());
  }
  if (!is_coherent_family(pool, c)) return "amalgam " + who(pool, c) + " is not coherent";
  if (!family_subset(a, c) || !family_subset(b, c)) return "amalgam misses an input model";
  Family over;
  for (ModelId k : c)
    if (pool.member(k, n)) over.push_back(k);
  if (over != b) return "amalgam inside N is " + who(pool, over) + ", not the second set";
  std::vector<int> bound = countable_remainder_bound(pool, a, n, b, c);
  for (int z : remainder_union(pool, c))
    if (!std::binary_search(bound.begin(), bound.end(), z))
      return "remainder point " + std::to_string(z) + " is outside " + serialize_ordinals(bound);
  return std::nullopt;
}

Property countable_property() {
  Property p;
  p.info = {"amalgamate-countable", "amalgam", Tier::AxiomConditional,
            "amalgamation over a countable model is coherent, contains both sets, restricts to the second and "
            "bounds its remainder points"};
  p.run = [](Context& ctx) {
    std::mt19937_64 rng = ctx.rng(0x52);
    for (const ModelPool& pool : ctx.pools())
      for (const Family& a : pick(coherent_families(pool, rng, 2), 4, rng)) {
        ModelId n = a[std::uniform_int_distribution<std::size_t>(0, a.size() - 1)(rng)];
        if (auto b = second_set(pool, a, n, rng))
          ctx.run({"amalgamate-countable", pool, {names_arg(pool, a), pool[n].name(), names_arg(pool, *b)}});
      }
  };
  p.check = [](const Witness& w) {
    return countable_failure(w.pool, family_arg(w, 0), model_arg(w, 1), family_arg(w, 2));
  };
  return p;
}

std::optional<std::string> transported_failure(const ModelPool& pool, ModelId n, ModelId n1, ModelId n2, ModelId k,
                                               ModelId l) {
  Verdict v;
  try {
    v = check_transported_pair(pool, n, n1, n2, k, l);
  } catch (const PreconditionError&) {
    throw Vacuous{};
  }
  if (!v.ok) return v.detail;
  return std::nullopt;
}

Property transported_property() {
  Property p;
  p.info = {"transported-pair", "amalgam", Tier::AxiomConditional,
            "copies of an adequate pair in isomorphic models stay adequate with matching remainder points"};
  p.run = [](Context& ctx) {
    for (const ModelPool& pool : ctx.pools())
      for (ModelId n = 0; n < pool.size(); ++n) {
        Family in = pool.models_in(n);
        if (in.empty()) continue;
        for (ModelId n1 = 0; n1 < pool.size(); ++n1)
          for (ModelId n2 = 0; n2 < pool.size(); ++n2) {
            if (n1 == n || n2 == n || n1 == n2 || !isomorphic(pool, n, n1) || !isomorphic(pool, n, n2)) continue;
            if (!is_coherent_family(pool, make_family({n, n1, n2}))) continue;
            for (ModelId k : in)
              for (ModelId l : in)
                ctx.run({"transported-pair", pool,
                         {pool[n].name(), pool[n1].name(), pool[n2].name(), pool[k].name(), pool[l].name()}});
          }
      }
  };
  p.check = [](const Witness& w) {
    return transported_failure(w.pool, model_arg(w, 0), model_arg(w, 1), model_arg(w, 2), model_arg(w, 3),
                               model_arg(w, 4));
  };
  return p;
}

std::string primed_text(const ModelPool& pool, const std::map<ModelId, ModelId>& primed) {
  std::string out = "(";
  bool first = true;
  for (const auto& [m, mp] : primed) {
    out += (first ? "(" : " (") + pool[m].name() + " " + pool[mp].name() + ")";
    first = false;
  }
  return out + ")";
}

std::map<ModelId, ModelId> primed_arg(const Witness& w, std::size_t i) {
  std::map<ModelId, ModelId> out;
  for (const SExpr& e : read_sexpr(w.args.at(i)).list) out[w.pool.id(e.list.at(0).text)] = w.pool.id(e.list.at(1).text);
  return out;
}

std::optional<std::string> uncountable_failure(const ModelPool& pool, const UncountableInput& in) {
  UncountableResult r;
  try {
    r = amalgamate_uncountable(pool, in);
  } catch (const PreconditionError&) {
    throw Vacuous{};
  } catch (const PostconditionError& e) {
    return std::string(e.what());
  }
  if (!is_coherent_family(pool, r.c)) return "amalgam " + who(pool, r.c) + " is not coherent";
  Family ap;
  for (ModelId m : in.a) ap.push_back(in.primed.at(m));
  ap = make_family(ap);
  std::set<int> bound;
  for (int z : remainder_union(pool, in.a)) bound.insert(z);
  for (int z : remainder_union(pool, ap)) bound.insert(z);
  for (ModelId m : in.a) {
    if (auto z = min_from(pool[m].trace(), in.beta_star)) bound.insert(*z);
    if (auto z = min_from(pool[in.primed.at(m)].trace(), in.beta)) bound.insert(*z);
  }
  for (int z : remainder_union(pool, r.c))
    if (!bound.count(z)) return "remainder point " + std::to_string(z) + " of the amalgam is outside the bound";
  if (!family_subset(in.a, r.c) || !family_subset(ap, r.c)) return "amalgam misses an input model";
  return std::nullopt;
}

Property uncountable_property() {
  Property p;
  p.info = {"amalgamate-uncountable", "amalgam", Tier::Theorem,
            "a coherent set and its copy pushed below a lambda point amalgamate with bounded remainder points"};
  p.run = [](Context& ctx) {
    if (ctx.fixture) return;
    std::mt19937_64 rng = ctx.rng(0x82);
    int target = ctx.bounds.samples * 3;
    for (int tries = 0; ctx.count() < static_cast<std::size_t>(target) && tries < target * 20; ++tries) {
      auto s = random_uncountable_scenario(rng);
      if (!s) continue;
      const ModelPool& pool = s->base.pool;
      const UncountableInput& in = s->input;
      ctx.run({"amalgamate-uncountable", pool,
               {arg(in.beta), arg(in.beta_star), names_arg(pool, in.a), primed_text(pool, in.primed),
                names_arg(pool, in.inside)}});
    }
  };
  p.check = [](const Witness& w) {
    UncountableInput in;
    in.beta = int_arg(w, 0);
    in.beta_star = int_arg(w, 1);
    in.a = family_arg(w, 2);
    in.primed = primed_arg(w, 3);
    in.inside = family_arg(w, 4);
    return uncountable_failure(w.pool, in);
  };
  return p;
}

}  // namespace

void add_coherence_properties(std::vector<Property>& out) {
  out.push_back(restrict_coherent());
  out.push_back(extend_coherent());
  out.push_back(family_coherent());
  out.push_back(family_property("low-sets", Tier::AxiomConditional,
                                "in a coherent set, low sets of the smaller model belong to the larger", low_sets_failure,
                                true));
  out.push_back(family_property("coherent-equivalences", Tier::AxiomConditional,
                                "in a coherent set the relations are read off the omega1-traces", equivalences_failure,
                                true));
  out.push_back(family_property("coherence-reference", Tier::Theorem,
                                "the coherence checker agrees with the definition", coherence_reference_failure, false));
}

void add_amalgam_properties(std::vector<Property>& out) {
  out.push_back(close_pair_property());
  out.push_back(close_over_property());
  out.push_back(transported_property());
  out.push_back(countable_property());
  out.push_back(uncountable_property());
}

}  // namespace adq::detail
