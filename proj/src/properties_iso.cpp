#include <algorithm>
#include <map>

#include "adq/calculus.hpp"
#include "adq/iso.hpp"
#include "adq/text.hpp"
#include "harness_detail.hpp"

namespace adq::detail {

namespace {

using Trace = std::vector<int>;

// Every trace as a plain model and with each subset of it as an extra member.
std::vector<Element> enumerate_shapes(const Universe& u, int max_trace) {
  std::vector<Element> out;
  for (const Trace& t : enumerate_traces(u, max_trace)) {
    std::vector<Element> ords;
    for (int x : t) ords.push_back(Element::ord(x));
    out.push_back(Element::set(ords));
    for (std::uint32_t bits = 0; bits < (1u << t.size()); ++bits) {
      Trace sub;
      for (std::size_t i = 0; i < t.size(); ++i)
        if (bits >> i & 1) sub.push_back(t[i]);
      std::vector<Element> items = ords;
      items.push_back(Element::ord_set(sub));
      out.push_back(Element::set(items));
    }
  }
  return out;
}

std::string collapse_key(const Universe& u, const Model& m) {
  Collapse c = collapse(u, m);
  std::string key = serialize(c.image) + "|";
  for (auto f : c.ord_flags) key += std::to_string(f) + ",";
  for (const auto& [e, f] : c.user_flags) key += serialize(e) + ":" + std::to_string(f) + ",";
  return key;
}

// Shapes grouped by collapse, with strong isomorphism inside each group.
struct ShapeClasses {
  std::vector<Model> models;
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> group_of;
  std::map<std::pair<std::size_t, std::size_t>, bool> strong;

  ShapeClasses(const Universe& u, int max_trace) {
    std::map<std::string, std::size_t> index;
    for (const Element& e : enumerate_shapes(u, max_trace)) {
      models.emplace_back("M", e);
      auto [it, fresh] = index.emplace(collapse_key(u, models.back()), groups.size());
      if (fresh) groups.emplace_back();
      groups[it->second].push_back(models.size() - 1);
      group_of.push_back(it->second);
    }
    for (const auto& g : groups)
      for (std::size_t i : g)
        for (std::size_t j : g) strong[{i, j}] = strong_iso(u, models[i], models[j]);
  }
  bool is_strong(std::size_t i, std::size_t j) const {
    if (group_of[i] != group_of[j]) return false;
    return strong.at({i, j});
  }
};

std::optional<std::string> copy_agreement_failure(const Universe& u, const Model& n, const Model& n1,
                                                  const Model& n2) {
  if (!strong_iso(u, n1, n) || !strong_iso(u, n2, n) || !strong_iso(u, n1, n2)) return std::nullopt;
  IsoMap s1 = *iso(u, n1, n), s2 = *iso(u, n2, n);
  for (const Element& a : n1.elems().items())
    if (n2.elems().has_member(a) && s1.apply(a) != s2.apply(a))
      return "the copies move " + serialize(a) + " to " + serialize(s1.apply(a)) + " and " + serialize(s2.apply(a));
  return std::nullopt;
}

Property copy_agreement() {
  Property p;
  p.info = {"copy-agreement", "iso-lemmas", Tier::Theorem,
            "two strongly isomorphic copies of N map their common members to the same point of N"};
  p.exhaustive = true;
  p.run = [](Context& ctx) {
    Universe u = standard_universe(ctx.bounds.theta);
    ShapeClasses sc(u, ctx.bounds.max_trace);
    ctx.set_expected(shape_count(u, ctx.bounds.max_trace));
    for (std::size_t n = 0; n < sc.models.size(); ++n) {
      std::optional<std::pair<std::size_t, std::size_t>> bad;
      for (std::size_t a : sc.groups[sc.group_of[n]])
        for (std::size_t b : sc.groups[sc.group_of[n]]) {
          if (bad || !sc.is_strong(a, n) || !sc.is_strong(b, n) || !sc.is_strong(a, b)) continue;
          if (copy_agreement_failure(u, sc.models[n], sc.models[a], sc.models[b])) bad = {a, b};
        }
      if (bad)
        ctx.fail({"copy-agreement", ModelPool(u),
                  {arg(sc.models[n].elems()), arg(sc.models[bad->first].elems()),
                   arg(sc.models[bad->second].elems())}});
      else
        ctx.pass();
    }
  };
  p.check = [](const Witness& w) {
    const Universe& u = w.pool.universe();
    return copy_agreement_failure(u, Model("N", element_arg(w, 0)), Model("N1", element_arg(w, 1)),
                                  Model("N2", element_arg(w, 2)));
  };
  return p;
}

std::optional<std::string> small_sets_failure(const Universe& u, const Model& m, const Model& n) {
  if (!strong_iso(u, m, n)) return std::nullopt;
  for (const Element& a : m.elems().items()) {
    if (!a.is_set()) continue;
    auto ords = a.ordinals();
    bool inside = std::all_of(ords.begin(), ords.end(), [&](int x) { return n.contains_ordinal(x); });
    if (inside && !n.elems().has_member(a)) return serialize(a) + " is a subset of both traces but not a member of N";
  }
  return std::nullopt;
}

Property strong_iso_small_sets() {
  Property p;
  p.info = {"strong-iso-small-sets", "iso-lemmas", Tier::Theorem,
            "for strongly isomorphic M and N, members of M that are subsets of M and N belong to N"};
  p.exhaustive = true;
  p.run = [](Context& ctx) {
    Universe u = standard_universe(ctx.bounds.theta);
    ShapeClasses sc(u, ctx.bounds.max_trace);
    ctx.set_expected(shape_count(u, ctx.bounds.max_trace));
    for (std::size_t m = 0; m < sc.models.size(); ++m) {
      std::optional<std::size_t> bad;
      for (std::size_t n : sc.groups[sc.group_of[m]])
        if (!bad && sc.is_strong(m, n) && small_sets_failure(u, sc.models[m], sc.models[n])) bad = n;
      if (bad)
        ctx.fail({"strong-iso-small-sets", ModelPool(u), {arg(sc.models[m].elems()), arg(sc.models[*bad].elems())}});
      else
        ctx.pass();
    }
  };
  p.check = [](const Witness& w) {
    return small_sets_failure(w.pool.universe(), Model("M", element_arg(w, 0)), Model("N", element_arg(w, 1)));
  };
  return p;
}

// Raw random traces for the sampled theorem.

Trace random_trace(const Universe& u, std::mt19937_64& rng, int extra_min, int extra_max) {
  Trace t;
  int j = std::uniform_int_distribution<int>(0, u.omega1())(rng);
  for (int x = 0; x < j; ++x) t.push_back(x);
  int want = std::uniform_int_distribution<int>(extra_min, extra_max)(rng);
  std::vector<int> room;
  for (int x = u.omega1(); x < u.max_lambda(); ++x) room.push_back(x);
  std::shuffle(room.begin(), room.end(), rng);
  room.resize(std::min<std::size_t>(room.size(), static_cast<std::size_t>(want)));
  t.insert(t.end(), room.begin(), room.end());
  std::sort(t.begin(), t.end());
  return t;
}

Trace random_subtrace(const Universe& u, const Trace& t, std::mt19937_64& rng) {
  Trace out;
  bool low_open = true;
  for (int x : t) {
    bool take = std::bernoulli_distribution(0.5)(rng);
    if (x < u.omega1()) {
      low_open = low_open && take;
      if (low_open) out.push_back(x);
    } else if (take) {
      out.push_back(x);
    }
  }
  return out;
}

// Moves some ordinals of m to fresh ones with the same flags, keeping the
// order; empty if the result is not strongly isomorphic to m.
std::optional<Element> random_copy(const Universe& u, const Model& m, std::mt19937_64& rng) {
  const Trace& t = m.trace();
  Trace image;
  int lo = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    int hi = i + 1 < t.size() ? t[i + 1] : u.max_lambda();
    std::vector<int> options;
    for (int x = std::max(lo, t[i]); x < hi; ++x)
      if (u.ord_flags(x) == u.ord_flags(t[i])) options.push_back(x);
    if (options.empty() || std::bernoulli_distribution(0.4)(rng))
      image.push_back(t[i]);
    else
      image.push_back(options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
    if (image.back() < lo) return std::nullopt;
    lo = image.back() + 1;
  }
  std::vector<std::pair<int, int>> map;
  for (std::size_t i = 0; i < t.size(); ++i) map.emplace_back(t[i], image[i]);
  Element e = IsoMap(m.name(), "copy", map).apply(m.elems());
  if (!strong_iso(u, m, Model("copy", e))) return std::nullopt;
  return e;
}

std::optional<std::string> copy_strong_failure(const Universe& u, const Model& n, const Model& n1, const Model& n2,
                                               const Element& k, const Element& l) {
  if (!strong_iso(u, n, n1) || !strong_iso(u, n, n2) || !strong_iso(u, n1, n2)) return std::nullopt;
  if (!n.elems().has_member(k) || !n.elems().has_member(l)) return std::nullopt;
  if (!strong_iso(u, Model("K", k), Model("L", l))) return std::nullopt;
  Element m = iso(u, n, n1)->apply(k), q = iso(u, n, n2)->apply(l);
  if (!strong_iso(u, Model("M", m), Model("P", q)))
    return "the copies " + serialize(m) + " and " + serialize(q) + " are not strongly isomorphic";
  return std::nullopt;
}

Property copy_strong() {
  Property p;
  p.info = {"copy-strong", "iso-lemmas", Tier::Theorem,
            "strongly isomorphic members carried into strongly isomorphic copies stay strongly isomorphic"};
  p.run = [](Context& ctx) {
    Universe u = standard_universe(ctx.bounds.theta + 9);
    std::mt19937_64 rng = ctx.rng(0x14);
    int target = ctx.bounds.samples * 5;
    for (int made = 0, tries = 0; made < target && tries < target * 50; ++tries) {
      Trace nt = random_trace(u, rng, 2, 5);
      Trace kt = random_subtrace(u, nt, rng);
      Model k("K", Element::ord_set(kt));
      std::optional<Element> l;
      for (int i = 0; i < 30 && !l; ++i) {
        Trace lt = random_subtrace(u, nt, rng);
        if (lt.size() == kt.size() && (lt != kt || i == 29) && strong_iso(u, k, Model("L", Element::ord_set(lt))))
          l = Element::ord_set(lt);
      }
      if (!l) continue;
      std::vector<Element> items;
      for (int x : nt) items.push_back(Element::ord(x));
      items.push_back(k.elems());
      items.push_back(*l);
      Model n("N", Element::set(items));
      auto c1 = random_copy(u, n, rng), c2 = random_copy(u, n, rng);
      if (!c1 || !c2 || !strong_iso(u, Model("N1", *c1), Model("N2", *c2))) continue;
      ++made;
      ctx.run({"copy-strong", ModelPool(u), {arg(n.elems()), arg(*c1), arg(*c2), arg(k.elems()), arg(*l)}});
    }
  };
  p.check = [](const Witness& w) {
    return copy_strong_failure(w.pool.universe(), Model("N", element_arg(w, 0)), Model("N1", element_arg(w, 1)),
                               Model("N2", element_arg(w, 2)), element_arg(w, 3), element_arg(w, 4));
  };
  return p;
}

// Axiom-conditional properties over generated pools.

std::optional<std::string> transport_iso_failure(const ModelPool& pool, ModelId m, ModelId n, ModelId k) {
  auto s = iso(pool, m, n);
  if (!s || !pool.member(k, m)) return std::nullopt;
  Element img = s->apply(pool[k].elems());
  auto found = pool.find(img);
  if (!found) return "the image of " + pool[k].name() + " is not a model of the pool";
  if (!pool.member(*found, n)) return "the image of " + pool[k].name() + " is not a member of " + pool[n].name();
  auto t = iso(pool, k, *found);
  if (!t) return pool[k].name() + " is not isomorphic to its image " + pool[*found].name();
  for (const auto& [x, y] : t->ordinal_map())
    if (s->map_ordinal(x) != y) return "the isomorphism onto the image is not the restriction";
  return std::nullopt;
}

std::optional<std::string> invariance_failure(const ModelPool& pool, ModelId m, ModelId n, ModelId k, ModelId l) {
  auto s = iso(pool, m, n);
  if (!s || !pool.member(k, m) || !pool.member(l, m)) return std::nullopt;
  auto k2 = pool.find(s->apply(pool[k].elems())), l2 = pool.find(s->apply(pool[l].elems()));
  if (!k2 || !l2) return "an image is not a model of the pool";
  Relation r1 = relate(pool, k, l), r2 = relate(pool, *k2, *l2);
  if (r1 != r2) return std::string("relation ") + to_string(r1) + " becomes " + to_string(r2);
  if (r1 == Relation::NONE) return std::nullopt;
  std::vector<int> moved;
  for (int z : remainder(pool, k, l)) moved.push_back(*s->map_ordinal(z));
  std::sort(moved.begin(), moved.end());
  if (moved != remainder(pool, *k2, *l2))
    return "remainder " + serialize_ordinals(moved) + " is not the image remainder " +
           serialize_ordinals(remainder(pool, *k2, *l2));
  return std::nullopt;
}

std::optional<std::string> transport_strong_failure(const ModelPool& pool, ModelId m, ModelId n, ModelId k) {
  if (!strongly_isomorphic(pool, m, n) || !pool.member(k, m)) return std::nullopt;
  auto img = pool.find(iso(pool, m, n)->apply(pool[k].elems()));
  if (!img) return "the image of " + pool[k].name() + " is not a model of the pool";
  if (!strongly_isomorphic(pool, k, *img))
    return pool[k].name() + " and its image " + pool[*img].name() + " are not strongly isomorphic";
  return std::nullopt;
}

template <class F>
void over_iso_pairs(Context& ctx, bool pairs, F f) {
  for (const ModelPool& pool : ctx.pools())
    for (ModelId m = 0; m < pool.size(); ++m)
      for (ModelId n = 0; n < pool.size(); ++n) {
        if (m == n || !isomorphic(pool, m, n)) continue;
        Family in = pool.models_in(m);
        for (ModelId k : in) {
          if (!pairs) {
            f(pool, m, n, k, k);
            continue;
          }
          for (ModelId l : in) f(pool, m, n, k, l);
        }
      }
}

Property transport_iso() {
  Property p;
  p.info = {"transport-iso", "iso-lemmas", Tier::AxiomConditional,
            "an isomorphism carries a member model onto an isomorphic member model"};
  p.run = [](Context& ctx) {
    over_iso_pairs(ctx, false, [&](const ModelPool& pool, ModelId m, ModelId n, ModelId k, ModelId) {
      ctx.run({"transport-iso", pool, {pool[m].name(), pool[n].name(), pool[k].name()}});
    });
  };
  p.check = [](const Witness& w) {
    return transport_iso_failure(w.pool, model_arg(w, 0), model_arg(w, 1), model_arg(w, 2));
  };
  return p;
}

Property iso_invariance() {
  Property p;
  p.info = {"iso-invariance", "iso-lemmas", Tier::AxiomConditional,
            "an isomorphism preserves the relation and the remainder points of member models"};
  p.run = [](Context& ctx) {
    over_iso_pairs(ctx, true, [&](const ModelPool& pool, ModelId m, ModelId n, ModelId k, ModelId l) {
      ctx.run({"iso-invariance", pool, {pool[m].name(), pool[n].name(), pool[k].name(), pool[l].name()}});
    });
  };
  p.check = [](const Witness& w) {
    return invariance_failure(w.pool, model_arg(w, 0), model_arg(w, 1), model_arg(w, 2), model_arg(w, 3));
  };
  return p;
}

Property transport_strong() {
  Property p;
  p.info = {"transport-strong", "iso-lemmas", Tier::AxiomConditional,
            "a strong isomorphism carries a member model onto a strongly isomorphic one"};
  p.run = [](Context& ctx) {
    over_iso_pairs(ctx, false, [&](const ModelPool& pool, ModelId m, ModelId n, ModelId k, ModelId) {
      if (!strongly_isomorphic(pool, m, n)) return;
      ctx.run({"transport-strong", pool, {pool[m].name(), pool[n].name(), pool[k].name()}});
    });
  };
  p.check = [](const Witness& w) {
    return transport_strong_failure(w.pool, model_arg(w, 0), model_arg(w, 1), model_arg(w, 2));
  };
  return p;
}

}  // namespace

void add_iso_properties(std::vector<Property>& out) {
  out.push_back(copy_agreement());
  out.push_back(strong_iso_small_sets());
  out.push_back(copy_strong());
  out.push_back(transport_iso());
  out.push_back(iso_invariance());
  out.push_back(transport_strong());
}

}  // namespace adq::detail
