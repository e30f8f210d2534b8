#include "adq/posets.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "adq/amalgam.hpp"
#include "adq/calculus.hpp"
#include "adq/coherence.hpp"
#include "adq/errors.hpp"
#include "adq/text.hpp"

namespace adq {

const char* to_string(PosetKind k) { return k == PosetKind::Square ? "square" : "club"; }

bool in_Y(const Universe& u, const Model& m) {
  const auto& t = m.trace();
  auto ok = [&](int alpha) { return u.in_s(sup_below(t, alpha)); };
  for (int alpha : t)
    if (u.in_s(alpha) && !ok(alpha)) return false;
  return ok(u.theta());
}

std::vector<int> PosetVerdict::clauses() const {
  std::vector<int> out;
  for (const auto& f : failures) out.push_back(f.clause);
  return out;
}

namespace {

bool as_pair(const Element& e, int& a, int& b) {
  if (!e.is_tuple() || e.size() != 2 || !e.items()[0].is_ord() || !e.items()[1].is_ord()) return false;
  a = e.items()[0].value();
  b = e.items()[1].value();
  return true;
}

bool as_triple(const Element& e, int& a, int& g, int& b) {
  if (!e.is_tuple() || e.size() != 3) return false;
  for (const Element& i : e.items())
    if (!i.is_ord()) return false;
  a = e.items()[0].value();
  g = e.items()[1].value();
  b = e.items()[2].value();
  return true;
}

bool pairs_overlap(int a, int a2, int g, int g2) { return (a < g && g <= a2) || (g < a && a <= g2); }

bool triples_overlap(int a, int g, int b, int a1, int g1, int b1) {
  if (a != a1) return false;
  if (g == g1 && b == b1) return false;
  return g < b1 && g1 < b;
}

bool pair_shape_ok(const Universe& u, const Element& e) {
  int a, a2;
  return as_pair(e, a, a2) && 0 <= a && a <= a2 && a2 < u.theta() && u.in_s(a);
}

bool triple_shape_ok(const Universe& u, const Element& e) {
  int a, g, b;
  return as_triple(e, a, g, b) && 0 <= g && g < b && b < a && a < u.theta() && u.in_lambda(a);
}

bool has(const std::vector<Element>& x, const Element& e) { return std::binary_search(x.begin(), x.end(), e); }

std::optional<int> first_in(const std::vector<int>& t, int lo, int hi) {
  auto it = std::lower_bound(t.begin(), t.end(), lo);
  if (it == t.end() || *it > hi) return std::nullopt;
  return *it;
}

struct Failures {
  PosetVerdict v;
  std::set<int> seen;
  void add(int clause, std::string detail) {
    if (seen.insert(clause).second) v.failures.push_back({clause, std::move(detail)});
  }
  PosetVerdict done() {
    std::sort(v.failures.begin(), v.failures.end(), [](const auto& a, const auto& b) { return a.clause < b.clause; });
    return v;
  }
};

void check_iso_closure(const ModelPool& pool, const Condition& c, Failures& f, int clause) {
  for (ModelId m : c.a) {
    std::vector<Element> seen = inside(pool[m], c.x);
    if (seen.empty()) continue;
    for (ModelId n : c.a) {
      if (n == m) continue;
      auto s = iso(pool, m, n);
      if (!s) continue;
      for (const Element& e : seen)
        if (!has(c.x, s->apply(e))) {
          f.add(clause, "image of " + serialize(e) + " under '" + pool[m].name() + "' -> '" + pool[n].name() +
                            "' is missing");
          return;
        }
    }
  }
}

}  // namespace

PosetVerdict club_validate(const ModelPool& pool, const Condition& c) {
  const Universe& u = pool.universe();
  Failures f;
  for (const Element& e : c.x)
    if (!pair_shape_ok(u, e)) f.add(1, serialize(e) + " is not a pair <a, a'> with a <= a' < theta and a in s");
  for (std::size_t i = 0; i < c.x.size(); ++i) {
    int a, a2;
    if (!as_pair(c.x[i], a, a2)) continue;
    for (std::size_t j = i + 1; j < c.x.size(); ++j) {
      int g, g2;
      if (as_pair(c.x[j], g, g2) && pairs_overlap(a, a2, g, g2))
        f.add(1, serialize(c.x[i]) + " overlaps " + serialize(c.x[j]));
    }
  }
  CoherenceVerdict cv = is_coherent(pool, c.a);
  if (!cv.ok()) f.add(2, std::string("side set fails ") + to_string(cv.clause));
  for (ModelId m : c.a)
    if (!in_Y(u, pool[m])) f.add(2, "'" + pool[m].name() + "' is not in Y");
  for (const Element& e : c.x) {
    int a, a2;
    if (!as_pair(e, a, a2) || a > a2) continue;
    for (ModelId n : c.a) {
      const auto& t = pool[n].trace();
      if (t.empty() || t.back() < a) continue;
      if (first_in(t, a, a2)) {
        if (!pool[n].contains_ordinal(a) || !pool[n].contains_ordinal(a2))
          f.add(3, "'" + pool[n].name() + "' meets " + serialize(e) + " without containing both ends");
      } else {
        int an = *min_from(t, a);
        if (!has(c.x, make_pair(an, an)))
          f.add(3, "<" + std::to_string(an) + ", " + std::to_string(an) + "> is required by '" + pool[n].name() + "'");
      }
    }
  }
  if (is_adequate(pool, c.a))
    for (int z : remainder_union(pool, c.a))
      if (!has(c.x, make_pair(z, z))) f.add(4, "remainder point " + std::to_string(z) + " is missing as a pair");
  check_iso_closure(pool, c, f, 5);
  return f.done();
}

PosetVerdict sq_validate(const ModelPool& pool, const Condition& c) {
  const Universe& u = pool.universe();
  Failures f;
  for (const Element& e : c.x)
    if (!triple_shape_ok(u, e)) f.add(1, serialize(e) + " is not a triple <a, g, b> with a in lambda and g < b < a");
  for (std::size_t i = 0; i < c.x.size(); ++i) {
    int a, g, b;
    if (!as_triple(c.x[i], a, g, b)) continue;
    for (std::size_t j = i + 1; j < c.x.size(); ++j) {
      int a1, g1, b1;
      if (as_triple(c.x[j], a1, g1, b1) && triples_overlap(a, g, b, a1, g1, b1))
        f.add(1, serialize(c.x[i]) + " overlaps " + serialize(c.x[j]));
    }
  }
  CoherenceVerdict cv = is_coherent(pool, c.a);
  if (!cv.ok()) f.add(2, std::string("side set fails ") + to_string(cv.clause));
  for (const Element& e : c.x) {
    int a, g, b;
    if (!as_triple(e, a, g, b)) continue;
    for (ModelId m : c.a) {
      const Model& mm = pool[m];
      if (!mm.contains_ordinal(a)) continue;
      bool both = mm.contains_ordinal(g) && mm.contains_ordinal(b);
      if (!both && !(sup_below(mm.trace(), a) < g))
        f.add(3, "'" + mm.name() + "' splits " + serialize(e));
    }
  }
  check_iso_closure(pool, c, f, 4);
  return f.done();
}

PosetVerdict validate(PosetKind kind, const ModelPool& pool, const Condition& c) {
  return kind == PosetKind::Square ? sq_validate(pool, c) : club_validate(pool, c);
}

Condition restrict_to(const ModelPool& pool, const Condition& r, ModelId m) {
  Condition out;
  for (const Element& e : r.x)
    if (pool[m].contains(e)) out.x.push_back(e);
  for (ModelId k : r.a)
    if (pool.member(k, m)) out.a.push_back(k);
  return out;
}

bool condition_inside(const ModelPool& pool, const Condition& p, ModelId m) {
  for (const Element& e : p.x)
    if (!pool[m].contains(e)) return false;
  for (ModelId k : p.a)
    if (!pool.member(k, m)) return false;
  return true;
}

namespace {

std::string failure_text(const PosetVerdict& v) {
  std::string s;
  for (const auto& f : v.failures) s += (s.empty() ? "" : "; ") + std::string("clause ") + std::to_string(f.clause) + ": " + f.detail;
  return s;
}

void require_valid(PosetKind kind, const ModelPool& pool, const Condition& c, const char* name) {
  PosetVerdict v = validate(kind, pool, c);
  if (!v.ok()) throw PreconditionError(name, "condition is invalid: " + failure_text(v));
}

Condition post_valid(PosetKind kind, const ModelPool& pool, Condition c) {
  PosetVerdict v = validate(kind, pool, c);
  if (!v.ok()) throw PostconditionError("valid", "result is invalid: " + failure_text(v));
  return c;
}

std::vector<Element> sorted(std::vector<Element> x) {
  canonicalize(x);
  return x;
}

}  // namespace

Condition club_restrict(const ModelPool& pool, const Condition& r, ModelId n) {
  if (!family_contains(r.a, n)) throw PreconditionError("n-in-side", "'" + pool[n].name() + "' is not a side model");
  return post_valid(PosetKind::Club, pool, restrict_to(pool, r, n));
}

Condition club_amalgamate(ModelPool& pool, const Condition& r, const Condition& w, ModelId n) {
  require_valid(PosetKind::Club, pool, r, "valid-r");
  require_valid(PosetKind::Club, pool, w, "valid-w");
  if (!family_contains(r.a, n)) throw PreconditionError("n-in-side", "'" + pool[n].name() + "' is not a side model of r");
  if (!condition_inside(pool, w, n)) throw PreconditionError("w-inside-n", "w is not inside '" + pool[n].name() + "'");
  if (!extends(w, restrict_to(pool, r, n)))
    throw PreconditionError("w-below-restriction", "w does not extend r restricted to '" + pool[n].name() + "'");

  Family c = copies_over(pool, r.a, n, w.a);
  std::vector<Element> z = r.x;
  for (ModelId n2 : r.a) {
    auto s = iso(pool, n, n2);
    if (!s) continue;
    for (const Element& e : w.x) z.push_back(s->apply(e));
  }
  Condition out(sorted(std::move(z)), c);
  post_valid(PosetKind::Club, pool, out);
  if (!extends(out, r)) throw PostconditionError("below-r", "result does not extend r");
  if (!extends(out, w)) throw PostconditionError("below-w", "result does not extend w");
  return out;
}

std::optional<std::string> club_add_pair_blocker(const ModelPool& pool, const Condition& p, int alpha, int alpha2) {
  const Universe& u = pool.universe();
  if (!(0 <= alpha && alpha <= alpha2 && alpha2 < u.theta() && u.in_s(alpha))) return std::string("pair-shape");
  for (const Element& e : p.x) {
    int g, g2;
    if (as_pair(e, g, g2) && pairs_overlap(alpha, alpha2, g, g2)) return std::string("hypothesis-1");
  }
  for (ModelId n : p.a) {
    const auto& t = pool[n].trace();
    if (t.empty() || t.back() < alpha) continue;
    if (first_in(t, alpha, alpha2)) {
      if (!pool[n].contains_ordinal(alpha) || !pool[n].contains_ordinal(alpha2)) return std::string("hypothesis-2");
    } else {
      int an = *min_from(t, alpha);
      if (!has(p.x, make_pair(an, an))) return std::string("hypothesis-2");
    }
  }
  return std::nullopt;
}

Condition club_add_pair(const ModelPool& pool, const Condition& p, int alpha, int alpha2) {
  require_valid(PosetKind::Club, pool, p, "valid");
  if (auto b = club_add_pair_blocker(pool, p, alpha, alpha2)) {
    std::string what = *b == "pair-shape"     ? "the pair is not of the form <a, a'> with a in s"
                       : *b == "hypothesis-1" ? "the pair overlaps a pair of the condition"
                                              : "a side model neither contains the pair nor has its next point as a pair";
    throw PreconditionError(*b, what);
  }
  Element pair = make_pair(alpha, alpha2);
  std::vector<Element> z = p.x;
  z.push_back(pair);
  for (ModelId n : p.a) {
    if (!pool[n].contains(pair)) continue;
    for (ModelId n2 : p.a)
      if (n2 != n)
        if (auto s = iso(pool, n, n2)) z.push_back(s->apply(pair));
  }
  Condition out(sorted(std::move(z)), p.a);
  post_valid(PosetKind::Club, pool, out);
  if (!extends(out, p) || !out.has(pair)) throw PostconditionError("below", "result does not extend the input");
  return out;
}

namespace {

void require_family(PosetKind kind, const ModelPool& pool, const Condition& p, const Family& ms) {
  if (ms.empty()) throw PreconditionError("nonempty", "no models to add");
  CoherenceVerdict v = is_coherent(pool, ms);
  if (!v.ok()) throw PreconditionError("coherent", std::string("models fail ") + to_string(v.clause));
  for (ModelId m : ms)
    for (ModelId n : ms)
      if (m < n && !strongly_isomorphic(pool, m, n))
        throw PreconditionError("strongly-isomorphic",
                                "'" + pool[m].name() + "' and '" + pool[n].name() + "' are not strongly isomorphic");
  if (kind == PosetKind::Club) {
    if (!check_s_adequate(pool, ms).ok) throw PreconditionError("s-adequate", "a remainder point lies outside s");
    for (ModelId m : ms)
      if (!in_Y(pool.universe(), pool[m])) throw PreconditionError("in-y", "'" + pool[m].name() + "' is not in Y");
  }
  for (ModelId m : ms)
    if (!condition_inside(pool, p, m))
      throw PreconditionError("inside", "condition is not inside '" + pool[m].name() + "'");
}

}  // namespace

Condition club_add_models(const ModelPool& pool, const Condition& p, const Family& ms0) {
  require_valid(PosetKind::Club, pool, p, "valid");
  Family ms = make_family(ms0);
  require_family(PosetKind::Club, pool, p, ms);
  Family c = family_union(p.a, ms);
  std::vector<int> ra = remainder_union(pool, p.a), rc = remainder_union(pool, c), fresh;
  std::set_difference(rc.begin(), rc.end(), ra.begin(), ra.end(), std::back_inserter(fresh));

  std::vector<Element> y = p.x;
  for (int zeta : fresh) y.push_back(make_pair(zeta, zeta));
  y = sorted(std::move(y));
  std::vector<Element> z = y;
  for (ModelId k : c) {
    std::vector<Element> seen = inside(pool[k], y);
    for (ModelId l : c)
      if (l != k)
        if (auto s = iso(pool, k, l))
          for (const Element& e : seen) z.push_back(s->apply(e));
  }
  z = sorted(std::move(z));

  std::vector<Element> z2 = p.x;
  for (ModelId mi : ms)
    for (int zeta : fresh) {
      if (!pool[mi].contains_ordinal(zeta)) continue;
      for (ModelId mj : ms) {
        auto s = iso(pool, mi, mj);
        z2.push_back(s->apply(make_pair(zeta, zeta)));
      }
    }
  z2 = sorted(std::move(z2));
  if (z != z2) throw PostconditionError("closed-form", "closure differs from the images of the new remainder pairs");

  Condition out(std::move(z), c);
  post_valid(PosetKind::Club, pool, out);
  if (!extends(out, p)) throw PostconditionError("below", "result does not extend the input");
  return out;
}

Condition sq_add_models(const ModelPool& pool, const Condition& p, const Family& ms0) {
  require_valid(PosetKind::Square, pool, p, "valid");
  Family ms = make_family(ms0);
  require_family(PosetKind::Square, pool, p, ms);
  return post_valid(PosetKind::Square, pool, Condition(p.x, family_union(p.a, ms)));
}

Condition club_extend_unbounded(const ModelPool& pool, const Condition& p, int gamma) {
  require_valid(PosetKind::Club, pool, p, "valid");
  int bound = gamma;
  for (const Element& e : p.x)
    for (int xi : e.ordinals()) bound = std::max(bound, xi);
  for (ModelId k : p.a) bound = std::max(bound, sup_of(pool[k].trace()));
  for (int b : pool.universe().s()) {
    if (b <= bound) continue;
    std::vector<Element> x = p.x;
    x.push_back(make_pair(b, b));
    return post_valid(PosetKind::Club, pool, Condition(sorted(std::move(x)), p.a));
  }
  throw PreconditionError("room", "no point of s lies above " + std::to_string(bound));
}

Classification classify(const ModelPool& pool, const Condition& p, int alpha) {
  if (alpha < 0 || alpha >= pool.universe().theta())
    throw PreconditionError("alpha-range", std::to_string(alpha) + " is outside [0, theta)");
  Classification c;
  for (ModelId k : p.a) {
    const auto& t = pool[k].trace();
    int below_sup = sup_below(t, alpha);
    if (sup_of(t) < alpha)
      c.a0.push_back(k);
    else if (below_sup < alpha)
      c.a1.push_back(k);
    else
      c.a2.push_back(k);
  }
  return c;
}

std::optional<Condition> transport_condition(const ModelPool& pool, const IsoMap& sigma, const Condition& p) {
  std::vector<Element> x;
  for (const Element& e : p.x) x.push_back(sigma.apply(e));
  Family a;
  for (ModelId k : p.a) {
    auto id = pool.find(sigma.apply(pool[k].elems()));
    if (!id) return std::nullopt;
    a.push_back(*id);
  }
  return Condition(std::move(x), std::move(a));
}

std::optional<Condition> least_extension(PosetKind kind, const ModelPool& pool, const std::vector<Element>& x0,
                                         const Family& a) {
  std::set<Element> x(x0.begin(), x0.end());
  std::vector<std::pair<ModelId, IsoMap>> maps;
  for (ModelId m : a)
    for (ModelId n : a)
      if (m != n)
        if (auto s = iso(pool, m, n)) maps.emplace_back(m, *s);
  if (kind == PosetKind::Club && is_adequate(pool, a))
    for (int z : remainder_union(pool, a)) x.insert(make_pair(z, z));
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Element> add;
    for (const Element& e : x) {
      if (kind == PosetKind::Club) {
        int al, al2;
        if (as_pair(e, al, al2) && al <= al2)
          for (ModelId n : a) {
            const auto& t = pool[n].trace();
            if (t.empty() || t.back() < al || first_in(t, al, al2)) continue;
            int an = *min_from(t, al);
            add.push_back(make_pair(an, an));
          }
      }
      for (const auto& [m, s] : maps)
        if (pool[m].contains(e)) add.push_back(s.apply(e));
    }
    for (Element& e : add) grew |= x.insert(std::move(e)).second;
  }
  Condition c(std::vector<Element>(x.begin(), x.end()), a);
  if (!validate(kind, pool, c).ok()) return std::nullopt;
  return c;
}

std::optional<Condition> common_extension(PosetKind kind, const ModelPool& pool, const Condition& p,
                                          const Condition& q) {
  Family base = family_union(p.a, q.a);
  std::vector<Element> x = p.x;
  x.insert(x.end(), q.x.begin(), q.x.end());
  x = sorted(std::move(x));
  auto side_ok = [&](const Family& a) {
    if (!is_coherent(pool, a).ok()) return false;
    if (kind == PosetKind::Club)
      for (ModelId m : a)
        if (!in_Y(pool.universe(), pool[m])) return false;
    return true;
  };
  // A valid extension over a side set stays a candidate only if no smaller
  // admissible side set failed: forced pairs and forbidden patterns both grow
  // with the side set.
  Family rest;
  for (ModelId m = 0; m < pool.size(); ++m)
    if (!family_contains(base, m)) rest.push_back(m);
  if (rest.size() > 20) throw PreconditionError("pool-size", "too many models to search side sets");
  std::vector<std::uint32_t> masks(std::size_t{1} << rest.size());
  for (std::uint32_t i = 0; i < masks.size(); ++i) masks[i] = i;
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
  std::vector<std::uint32_t> failed;
  for (std::uint32_t mask : masks) {
    bool dominated = false;
    for (std::uint32_t f : failed)
      if ((f & mask) == f) dominated = true;
    if (dominated) continue;
    Family a = base;
    for (std::size_t i = 0; i < rest.size(); ++i)
      if (mask >> i & 1u) a.push_back(rest[i]);
    a = make_family(a);
    if (!side_ok(a)) continue;
    if (auto c = least_extension(kind, pool, x, a)) return c;
    failed.push_back(mask);
  }
  return std::nullopt;
}

std::vector<Element> candidate_elements(PosetKind kind, const Universe& u, const Model* within) {
  std::vector<int> pts;
  if (within)
    pts = within->trace();
  else
    for (int i = 0; i < u.theta(); ++i) pts.push_back(i);
  std::vector<Element> out;
  if (kind == PosetKind::Club) {
    for (int a : pts)
      if (u.in_s(a))
        for (int a2 : pts)
          if (a2 >= a) out.push_back(make_pair(a, a2));
  } else {
    for (int a : pts)
      if (u.in_lambda(a))
        for (int g : pts)
          for (int b : pts)
            if (g < b && b < a) out.push_back(make_triple(a, g, b));
  }
  canonicalize(out);
  return out;
}

namespace {

bool compatible_shapes(PosetKind kind, const Element& e, const Element& f) {
  if (kind == PosetKind::Club) {
    int a, a2, g, g2;
    as_pair(e, a, a2);
    as_pair(f, g, g2);
    return !pairs_overlap(a, a2, g, g2);
  }
  int a = 0, g = 0, b = 0, a1 = 0, g1 = 0, b1 = 0;
  as_triple(e, a, g, b);
  as_triple(f, a1, g1, b1);
  return !triples_overlap(a, g, b, a1, g1, b1);
}

void working_parts(PosetKind kind, const std::vector<Element>& cand, std::size_t max_x, std::size_t from,
                   std::vector<Element>& cur, std::vector<std::vector<Element>>& out) {
  out.push_back(cur);
  if (cur.size() == max_x) return;
  for (std::size_t i = from; i < cand.size(); ++i) {
    bool ok = true;
    for (const Element& e : cur)
      if (!compatible_shapes(kind, e, cand[i])) ok = false;
    if (!ok) continue;
    cur.push_back(cand[i]);
    working_parts(kind, cand, max_x, i + 1, cur, out);
    cur.pop_back();
  }
}

PosetInstance build_instance(PosetKind kind, const ModelPool& pool, const std::vector<Element>& cand,
                             const Family& models, std::size_t max_x) {
  PosetInstance inst;
  inst.kind = kind;
  inst.pool = &pool;
  std::vector<std::vector<Element>> xs;
  std::vector<Element> cur;
  working_parts(kind, cand, max_x, 0, cur, xs);
  for (std::uint32_t mask = 0; mask < (1u << models.size()); ++mask) {
    Family a;
    for (std::size_t i = 0; i < models.size(); ++i)
      if (mask >> i & 1u) a.push_back(models[i]);
    if (!is_coherent(pool, a).ok()) continue;
    for (const auto& x : xs) {
      Condition c(x, a);
      if (validate(kind, pool, c).ok()) inst.conditions.push_back(std::move(c));
    }
  }
  std::sort(inst.conditions.begin(), inst.conditions.end());
  return inst;
}

}  // namespace

PosetInstance enumerate_instance(PosetKind kind, const ModelPool& pool, std::size_t max_x) {
  if (pool.size() > 16) throw PreconditionError("pool-size", "too many models to enumerate side sets");
  return build_instance(kind, pool, candidate_elements(kind, pool.universe()), pool.all(), max_x);
}

PosetInstance enumerate_inside(PosetKind kind, const ModelPool& pool, ModelId m) {
  auto cand = candidate_elements(kind, pool.universe(), &pool[m]);
  return build_instance(kind, pool, cand, pool.models_in(m), cand.size());
}

GenericTable::GenericTable(const PosetInstance& instance, ModelId m, GenericMode mode, std::size_t exact_cap)
    : instance_(&instance), m_(m), mode_(mode), inside_(enumerate_inside(instance.kind, *instance.pool, m)) {
  std::size_t n = inside_.conditions.size();
  if (n > 32 || (mode == GenericMode::Exact && n > exact_cap))
    throw PreconditionError("subposet-size", "subposet inside '" + (*instance.pool)[m].name() + "' has " +
                                                 std::to_string(n) + " conditions");
  below_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (extends(inside_.conditions[j], inside_.conditions[i])) below_[i] |= 1u << j;
  if (mode == GenericMode::Exact) {
    for (std::uint64_t d = 0; d < (std::uint64_t{1} << n); ++d) {
      bool dense = true;
      for (std::size_t i = 0; i < n && dense; ++i) dense = (below_[i] & d) != 0;
      if (dense) dense_.push_back(static_cast<std::uint32_t>(d));
    }
  }
  const auto& all = instance.conditions;
  incompat_.assign(all.size(), 0);
  restriction_reduces_.assign(all.size(), false);
  for (std::size_t r = 0; r < all.size(); ++r) {
    for (std::size_t j = 0; j < n; ++j)
      if (!compatible(instance.kind, *instance.pool, all[r], inside_.conditions[j])) incompat_[r] |= 1u << j;
    Condition res = restrict_to(*instance.pool, all[r], m);
    auto it = std::lower_bound(inside_.conditions.begin(), inside_.conditions.end(), res);
    if (it != inside_.conditions.end() && *it == res) {
      std::size_t k = static_cast<std::size_t>(it - inside_.conditions.begin());
      restriction_reduces_[r] = (below_[k] & incompat_[r]) == 0;
    }
  }
}

bool GenericTable::has_reduction(std::size_t r) const {
  if (mode_ == GenericMode::Exact) {
    for (std::uint32_t d : dense_)
      if ((d & ~incompat_[r]) == 0) return false;
    return true;
  }
  for (std::uint32_t b : below_)
    if ((b & incompat_[r]) == 0) return true;
  return false;
}

GenericVerdict GenericTable::check(const Condition& q) const {
  GenericVerdict v;
  v.subposet_size = inside_.conditions.size();
  const auto& all = instance_->conditions;
  for (std::size_t r = 0; r < all.size(); ++r) {
    if (!extends(all[r], q)) continue;
    ++v.checked;
    if (!restriction_reduces_[r]) v.restriction_is_reduction = false;
    if (!has_reduction(r) && v.ok) {
      v.ok = false;
      v.failing_r = all[r];
      v.restriction = restrict_to(*instance_->pool, all[r], m_);
    }
  }
  return v;
}

GenericVerdict strong_generic_check(const PosetInstance& instance, const Condition& q, ModelId m, GenericMode mode,
                                    std::size_t exact_cap) {
  return GenericTable(instance, m, mode, exact_cap).check(q);
}

GenericRun generic_run(const ModelPool& pool, const Condition& start, const GenericRequirements& req,
                       std::uint64_t seed) {
  const Universe& u = pool.universe();
  std::mt19937_64 rng(seed);
  GenericRun run;
  Condition p = start;
  {
    PosetVerdict v = club_validate(pool, p);
    if (!v.ok()) {
      run.stuck = "start condition is invalid: " + failure_text(v);
      run.filter.push_back({"start", p});
      return run;
    }
  }
  run.filter.push_back({"start", p});
  auto step = [&](std::string action, Condition next) {
    p = std::move(next);
    run.filter.push_back({std::move(action), p});
  };
  for (const Family& ms : req.model_sets) {
    std::string label = "add-models " + serialize_names(pool.names(ms));
    try {
      step(label, club_add_models(pool, p, ms));
    } catch (const PreconditionError& e) {
      run.skipped.push_back(label + ": " + e.condition());
    }
  }
  std::vector<int> targets = req.targets;
  std::shuffle(targets.begin(), targets.end(), rng);
  int noise = req.noise;
  for (int gamma : targets) {
    bool met = false;
    for (int b : u.s()) {
      if (b <= gamma || club_add_pair_blocker(pool, p, b, b)) continue;
      step("target " + std::to_string(gamma) + " pair " + std::to_string(b), club_add_pair(pool, p, b, b));
      met = true;
      break;
    }
    if (!met) {
      try {
        step("target " + std::to_string(gamma) + " unbounded", club_extend_unbounded(pool, p, gamma));
      } catch (const PreconditionError&) {
        run.stuck = "target " + std::to_string(gamma);
        break;
      }
    }
    if (noise > 0) {
      --noise;
      const auto& s = u.s();
      int a = s[std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng)];
      int a2 = std::min(u.theta() - 1, a + std::uniform_int_distribution<int>(0, 2)(rng));
      if (!club_add_pair_blocker(pool, p, a, a2))
        step("noise " + std::to_string(a) + " " + std::to_string(a2), club_add_pair(pool, p, a, a2));
    }
  }
  std::set<int> cs;
  for (const Element& e : p.x) {
    int a, a2;
    if (as_pair(e, a, a2)) cs.insert(a);
  }
  run.c_s.assign(cs.begin(), cs.end());
  for (int a : run.c_s)
    if (!u.in_s(a)) throw PostconditionError("c-s-in-s", std::to_string(a) + " is outside s");
  return run;
}

}  // namespace adq
