#include "adq/amalgam.hpp"

#include <algorithm>
#include <set>

#include "adq/axioms.hpp"
#include "adq/calculus.hpp"
#include "adq/coherence.hpp"
#include "adq/errors.hpp"
#include "adq/iso.hpp"

namespace adq {

ElementSet make_element_set(ElementSet x) {
  canonicalize(x);
  return x;
}

ElementSet inside(const Model& m, const ElementSet& x) {
  ElementSet out;
  for (const Element& a : x)
    if (m.contains(a)) out.push_back(a);
  return out;
}

namespace {

bool has(const ElementSet& x, const Element& a) { return std::binary_search(x.begin(), x.end(), a); }

std::string quoted(const ModelPool& pool, ModelId m) { return "'" + pool[m].name() + "'"; }

void require_coherent(const ModelPool& pool, const Family& a, const char* label) {
  CoherenceVerdict v = is_coherent(pool, a);
  if (!v.ok())
    throw PreconditionError("coherent", std::string(label) + " fails " + to_string(v.clause) + ": " + v.detail);
}

std::string axiom_diagnosis(const ModelPool& pool) {
  auto v = check_axioms(pool, 1);
  if (v.empty()) return "";
  return " (pool breaks " + describe(pool, v.front()) + ")";
}

std::vector<int> sorted_unique(std::set<int> s) { return {s.begin(), s.end()}; }

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

std::optional<ClosureGap> closure_gap(const ModelPool& pool, const ElementSet& x, const Family& a) {
  for (ModelId n : a) {
    ElementSet seen = inside(pool[n], x);
    if (seen.empty()) continue;
    for (ModelId n2 : a) {
      if (n2 == n) continue;
      auto s = iso(pool, n, n2);
      if (!s) continue;
      for (const Element& e : seen)
        if (!has(x, s->apply(e))) return ClosureGap{e, n, n2};
    }
  }
  return std::nullopt;
}

ElementSet close_pair(const ModelPool& pool, const ElementSet& x0, const Family& a) {
  require_coherent(pool, a, "side set");
  ElementSet x = make_element_set(x0);
  ElementSet y = x;
  for (ModelId m : a) {
    ElementSet seen = inside(pool[m], x);
    if (seen.empty()) continue;
    for (ModelId m2 : a) {
      if (m2 == m) continue;
      if (auto s = iso(pool, m, m2))
        for (const Element& e : seen) y.push_back(s->apply(e));
    }
  }
  y = make_element_set(std::move(y));
  if (auto gap = closure_gap(pool, y, a))
    throw PostconditionError("closed", "one step of closure misses an image under " + quoted(pool, gap->from) +
                                           " -> " + quoted(pool, gap->to) + axiom_diagnosis(pool));
  return y;
}

Family copies_over(ModelPool& pool, const Family& a, ModelId n, const Family& b) {
  Family c;
  for (ModelId m : a)
    if (leq(pool, n, m)) c.push_back(m);
  for (ModelId n2 : a) {
    auto s = iso(pool, n, n2);
    if (!s) continue;
    for (ModelId k : b) c.push_back(transport(pool, *s, k));
  }
  return make_family(c);
}

namespace {

void require_over_hypotheses(const ModelPool& pool, ModelId n, const Family& a, const Family& b) {
  require_coherent(pool, a, "first set");
  if (!family_contains(a, n)) throw PreconditionError("n-in-a", quoted(pool, n) + " is not in the first set");
  require_coherent(pool, b, "second set");
  for (ModelId k : b)
    if (!pool.member(k, n))
      throw PreconditionError("b-inside-n", quoted(pool, k) + " is not a member of " + quoted(pool, n));
  for (ModelId k : a)
    if (pool.member(k, n) && !family_contains(b, k))
      throw PreconditionError("a-over-n-in-b", quoted(pool, k) + " is in the first set and in " + quoted(pool, n) +
                                                    " but not in the second set");
}

}  // namespace

ClosedPair close_over(ModelPool& pool, ModelId n, const ElementSet& x0, const Family& a, const ElementSet& y0,
                      const Family& b) {
  ElementSet x = make_element_set(x0), y = make_element_set(y0);
  require_over_hypotheses(pool, n, a, b);
  if (!is_closed(pool, x, a)) throw PreconditionError("x-closed", "(x, A) is not closed");
  if (!is_closed(pool, y, b)) throw PreconditionError("y-closed", "(y, B) is not closed");
  for (const Element& e : y)
    if (!pool[n].contains(e)) throw PreconditionError("y-inside-n", "y has an element outside " + quoted(pool, n));
  for (const Element& e : inside(pool[n], x))
    if (!has(y, e)) throw PreconditionError("x-over-n-in-y", "an element of x inside " + quoted(pool, n) + " is not in y");

  ClosedPair out;
  out.a = copies_over(pool, a, n, b);
  ElementSet z = x;
  for (ModelId n2 : a) {
    auto s = iso(pool, n, n2);
    if (!s) continue;
    for (const Element& e : y) z.push_back(s->apply(e));
  }
  out.x = make_element_set(std::move(z));

  if (auto gap = closure_gap(pool, out.x, out.a))
    throw PostconditionError("closed", "image under " + quoted(pool, gap->from) + " -> " + quoted(pool, gap->to) +
                                           " is missing" + axiom_diagnosis(pool));
  for (const ElementSet* part : {&x, &y})
    for (const Element& e : *part)
      if (!has(out.x, e)) throw PostconditionError("contains", "z lost an element of x or y");
  if (inside(pool[n], out.x) != y)
    throw PostconditionError("trace-over-n", "z restricted to " + quoted(pool, n) + " differs from y" +
                                                 axiom_diagnosis(pool));
  return out;
}

std::vector<int> countable_remainder_bound(const ModelPool& pool, const Family& a, ModelId n, const Family& b,
                                           const Family& c) {
  std::vector<int> ra = remainder_union(pool, a);
  std::set<int> out(ra.begin(), ra.end());
  for (ModelId k : c)
    for (int zeta : ra)
      if (auto z = min_from(pool[k].trace(), zeta)) out.insert(*z);
  std::vector<int> rb = remainder_union(pool, b);
  for (ModelId n2 : a) {
    auto s = iso(pool, n, n2);
    if (!s) continue;
    for (int tau : rb)
      if (auto v = s->map_ordinal(tau)) out.insert(*v);
  }
  return sorted_unique(std::move(out));
}

Family amalgamate_countable(ModelPool& pool, const Family& a, ModelId n, const Family& b) {
  require_over_hypotheses(pool, n, a, b);
  Family c = copies_over(pool, a, n, b);

  CoherenceVerdict v = is_coherent(pool, c);
  if (!v.ok()) {
    std::string who = quoted(pool, v.m) + ", " + quoted(pool, v.n);
    throw PostconditionError("coherent", std::string("result fails ") + to_string(v.clause) + " at " + who +
                                             axiom_diagnosis(pool));
  }
  if (!family_subset(a, c) || !family_subset(b, c))
    throw PostconditionError("contains", "result does not contain both input sets" + axiom_diagnosis(pool));
  Family over;
  for (ModelId k : c)
    if (pool.member(k, n)) over.push_back(k);
  if (over != b)
    throw PostconditionError("trace-over-n", "result restricted to " + quoted(pool, n) + " differs from the second set" +
                                                 axiom_diagnosis(pool));
  std::vector<int> bound = countable_remainder_bound(pool, a, n, b, c);
  for (ModelId m : c)
    for (ModelId p : c)
      for (int zeta : remainder(pool, m, p))
        if (!std::binary_search(bound.begin(), bound.end(), zeta))
          throw PostconditionError("remainders", "remainder point " + std::to_string(zeta) + " of " + quoted(pool, p) +
                                                     " over " + quoted(pool, m) + " is outside the bound" +
                                                     axiom_diagnosis(pool));
  return c;
}

Verdict check_transported_pair(const ModelPool& pool, ModelId n, ModelId n1, ModelId n2, ModelId k, ModelId l) {
  const Universe& u = pool.universe();
  Family trio = make_family({n, n1, n2});
  require_coherent(pool, trio, "copies");
  auto s1 = iso(pool, n, n1), s2 = iso(pool, n, n2);
  if (!s1 || !s2 || !isomorphic(pool, n1, n2))
    throw PreconditionError("isomorphic", "the three models are not pairwise isomorphic");
  for (ModelId x : {k, l})
    if (!pool.member(x, n)) throw PreconditionError("inside", quoted(pool, x) + " is not a member of " + quoted(pool, n));
  Relation kl = relate(pool, k, l);
  if (kl == Relation::NONE) throw PreconditionError("adequate", quoted(pool, k) + " and " + quoted(pool, l) + " are incomparable");

  Model m(pool[k].name() + "^" + pool[n1].name(), s1->apply(pool[k].elems()));
  Model p(pool[l].name() + "^" + pool[n2].name(), s2->apply(pool[l].elems()));
  Verdict out;
  if (relate(u, m, p) == Relation::NONE) {
    out.ok = false;
    out.detail = "the copies '" + m.name() + "' and '" + p.name() + "' are incomparable" + axiom_diagnosis(pool);
    return out;
  }
  int cut = comparison_point(u, pool[n1], pool[n2]);
  IsoMap back1 = s1->inverse(), back2 = s2->inverse();
  auto pulls_back = [&](const Model& over, const Model& of, const IsoMap& back, ModelId base, ModelId target) {
    std::vector<int> want = remainder(pool, base, target);
    for (int zeta : remainder(u, over, of)) {
      if (zeta >= cut) continue;
      auto z0 = back.map_ordinal(zeta);
      if (!z0 || !std::binary_search(want.begin(), want.end(), *z0)) {
        out.ok = false;
        out.detail = "remainder point " + std::to_string(zeta) + " of '" + of.name() + "' does not pull back" +
                     axiom_diagnosis(pool);
        return false;
      }
    }
    return true;
  };
  if (pulls_back(p, m, back1, l, k)) pulls_back(m, p, back2, k, l);
  return out;
}

Verdict check_same_comparison_point(const Universe& u, const std::vector<int>& m0, const std::vector<int>& m1,
                                    const std::vector<int>& k0, const std::vector<int>& k1, int beta) {
  if (!u.in_lambda(beta)) throw PreconditionError("lambda", std::to_string(beta) + " is not a lambda point");
  if (below(m0, beta) != below(m1, beta)) throw PreconditionError("agree-m", "the larger traces differ below the cut");
  if (below(k0, beta) != below(k1, beta)) throw PreconditionError("agree-k", "the smaller traces differ below the cut");
  int b0 = comparison_point(u, k0, m0), b1 = comparison_point(u, k1, m1);
  if (b0 > beta || b1 > beta) throw PreconditionError("below-beta", "a comparison point lies above the cut");
  Verdict v;
  if (b0 != b1) {
    v.ok = false;
    v.detail = "comparison points " + std::to_string(b0) + " and " + std::to_string(b1) + " differ";
  }
  return v;
}

UncountableResult amalgamate_uncountable(const ModelPool& pool, const UncountableInput& in) {
  const Universe& u = pool.universe();
  const int beta = in.beta, top = in.beta_star;
  if (!u.in_lambda(beta) || !u.in_lambda(top)) throw PreconditionError("lambda", "both cuts must be lambda points");
  if (!(beta < top)) throw PreconditionError("cut-order", "the lower cut must lie below the upper cut");
  require_coherent(pool, in.a, "set");
  auto prime = [&](ModelId m) {
    auto it = in.primed.find(m);
    if (it == in.primed.end()) throw PreconditionError("domain", quoted(pool, m) + " has no primed copy");
    return it->second;
  };
  Family inside_cut = in.inside;
  for (ModelId m : in.a) inside_cut.push_back(prime(m));
  inside_cut = make_family(inside_cut);
  for (ModelId m : inside_cut)
    if (!pool[m].elems().ordinals().empty() && pool[m].elems().ordinals().back() >= top)
      throw PreconditionError("below-cut", quoted(pool, m) + " reaches the upper cut");

  for (ModelId m : in.a) {
    ModelId mp = prime(m);
    if (!isomorphic(pool, m, mp))
      throw PreconditionError("isomorphic", quoted(pool, m) + " and " + quoted(pool, mp) + " are not isomorphic");
    if (below(pool[m].trace(), top) != below(pool[mp].trace(), beta))
      throw PreconditionError("agree-below-cut", quoted(pool, m) + " below the upper cut differs from " +
                                                     quoted(pool, mp) + " below the lower cut");
    for (const Element& e : pool[m].elems().items()) {
      auto ords = e.ordinals();
      if (!ords.empty() && ords.back() < top && !pool[mp].elems().has_member(e))
        throw PreconditionError("agree-below-cut", "a member of " + quoted(pool, m) + " below the upper cut is missing from " +
                                                       quoted(pool, mp));
    }
    if (family_contains(in.inside, m) && mp != m)
      throw PreconditionError("fixed-inside", quoted(pool, m) + " lies inside the cut but is moved");
  }
  for (ModelId m : in.a) {
    ModelId mp = prime(m);
    auto s = iso(pool, m, mp);
    for (ModelId k : in.a) {
      ModelId kp = prime(k);
      bool in_m = pool.member(k, m), in_mp = pool.member(kp, mp);
      if (in_m != in_mp)
        throw PreconditionError("members", quoted(pool, k) + " in " + quoted(pool, m) + " does not match its copy");
      if (in_m && !(s->apply(pool[k].elems()) == pool[kp].elems()))
        throw PreconditionError("members", "the map " + quoted(pool, m) + " -> " + quoted(pool, mp) + " does not send " +
                                               quoted(pool, k) + " to its copy");
    }
  }
  Family ap;
  for (ModelId m : in.a) ap.push_back(prime(m));
  ap = make_family(ap);
  {
    CoherenceVerdict v = is_coherent(pool, ap);
    if (!v.ok()) throw PreconditionError("coherent-primed", std::string("primed set fails ") + to_string(v.clause));
  }

  UncountableResult r;
  r.c = family_union(in.a, ap);
  CoherenceVerdict v = is_coherent(pool, r.c);
  if (!v.ok())
    throw PostconditionError("coherent", std::string("result fails ") + to_string(v.clause) + " at " +
                                             quoted(pool, v.m) + ", " + quoted(pool, v.n) + axiom_diagnosis(pool));
  std::set<int> bound;
  for (int z : remainder_union(pool, in.a)) bound.insert(z);
  for (int z : remainder_union(pool, ap)) bound.insert(z);
  for (ModelId m : in.a) {
    if (auto z = min_from(pool[m].trace(), top)) bound.insert(*z);
    if (auto z = min_from(pool[prime(m)].trace(), beta)) bound.insert(*z);
  }
  r.bound = sorted_unique(std::move(bound));
  std::vector<int> rc = remainder_union(pool, r.c);
  if (!subset(rc, r.bound))
    throw PostconditionError("remainders", "a remainder point of the union is outside the bound" + axiom_diagnosis(pool));
  return r;
}

}  // namespace adq
