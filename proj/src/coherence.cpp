#include "adq/coherence.hpp"

#include "adq/calculus.hpp"
#include "adq/errors.hpp"
#include "adq/iso.hpp"

namespace adq {

const char* to_string(CoherenceClause c) {
  switch (c) {
    case CoherenceClause::None:
      return "ok";
    case CoherenceClause::Adequacy:
      return "adequacy";
    case CoherenceClause::StrongIso:
      return "strong-iso";
    case CoherenceClause::LowerCopy:
      return "lower-copy";
    case CoherenceClause::CopyClosed:
      return "copy-closed";
  }
  return "ok";
}

namespace {

std::optional<ModelId> lower_copy(const ModelPool& pool, const Family& a, ModelId m, ModelId n) {
  std::optional<ModelId> best;
  for (ModelId c : a) {
    if (!pool.member(m, c) || !isomorphic(pool, c, n)) continue;
    if (!best || pool[c].elems() < pool[*best].elems()) best = c;
  }
  return best;
}

void require_coherent(const ModelPool& pool, const Family& a, const char* what) {
  CoherenceVerdict v = is_coherent(pool, a);
  if (!v.ok())
    throw PreconditionError("coherent", std::string(what) + " fails " + to_string(v.clause) + ": " + v.detail);
}

Family post_coherent(const ModelPool& pool, Family out) {
  CoherenceVerdict v = is_coherent(pool, out);
  if (!v.ok()) throw PostconditionError("coherent", std::string("result fails ") + to_string(v.clause) + ": " + v.detail);
  return out;
}

std::vector<int> omega1_trace(const ModelPool& pool, ModelId m) {
  return below(pool[m].trace(), pool.universe().omega1());
}

std::string pair_names(const ModelPool& pool, ModelId m, ModelId n) {
  return "'" + pool[m].name() + "', '" + pool[n].name() + "'";
}

}  // namespace

CoherenceVerdict is_coherent(const ModelPool& pool, const Family& a) {
  CoherenceVerdict v;
  if (auto bad = first_incomparable(pool, a)) {
    v.clause = CoherenceClause::Adequacy;
    v.m = bad->first;
    v.n = bad->second;
    v.detail = pair_names(pool, v.m, v.n) + " are incomparable";
    return v;
  }
  for (ModelId m : a) {
    for (ModelId n : a) {
      if (m == n) continue;
      Relation r = relate(pool, m, n);
      if (r == Relation::SIM && m < n && !strongly_isomorphic(pool, m, n)) {
        v.clause = CoherenceClause::StrongIso;
        v.m = m;
        v.n = n;
        v.detail = pair_names(pool, m, n) + " agree below the comparison point but are not strongly isomorphic";
        return v;
      }
      if (r == Relation::LT && !lower_copy(pool, a, m, n)) {
        v.clause = CoherenceClause::LowerCopy;
        v.m = m;
        v.n = n;
        v.detail = "no copy of '" + pool[n].name() + "' in the set has '" + pool[m].name() + "' as a member";
        return v;
      }
    }
  }
  for (ModelId m : a) {
    Family inside;
    for (ModelId k : a)
      if (pool.member(k, m)) inside.push_back(k);
    if (inside.empty()) continue;
    for (ModelId n : a) {
      if (n == m) continue;
      auto s = iso(pool, m, n);
      if (!s) continue;
      for (ModelId k : inside) {
        auto image = pool.find(s->apply(pool[k].elems()));
        if (!image || !family_contains(a, *image)) {
          v.clause = CoherenceClause::CopyClosed;
          v.m = m;
          v.n = n;
          v.k = k;
          v.detail = "image of '" + pool[k].name() + "' under the map " + pair_names(pool, m, n) + " is not in the set";
          return v;
        }
      }
    }
  }
  return v;
}

std::vector<LowerCopyWitness> coherence_witnesses(const ModelPool& pool, const Family& a) {
  require_coherent(pool, a, "set");
  std::vector<LowerCopyWitness> out;
  for (ModelId m : a)
    for (ModelId n : a)
      if (m != n && relate(pool, m, n) == Relation::LT) out.push_back({m, n, *lower_copy(pool, a, m, n)});
  return out;
}

Family restrict(const ModelPool& pool, const Family& a, ModelId m) {
  require_coherent(pool, a, "set");
  Family out;
  for (ModelId k : a)
    if (pool.member(k, m)) out.push_back(k);
  return post_coherent(pool, out);
}

Family extend_with_model(const ModelPool& pool, const Family& a, ModelId m) {
  require_coherent(pool, a, "set");
  for (ModelId k : a)
    if (!pool.member(k, m))
      throw PreconditionError("inside", "'" + pool[k].name() + "' is not a member of '" + pool[m].name() + "'");
  Family out = a;
  out.push_back(m);
  return post_coherent(pool, make_family(out));
}

Family extend_with_family(const ModelPool& pool, const Family& a, const Family& ms) {
  require_coherent(pool, a, "set");
  if (auto bad = first_incomparable(pool, ms))
    throw PreconditionError("adequate", pair_names(pool, bad->first, bad->second) + " are incomparable");
  for (ModelId m : ms)
    for (ModelId n : ms)
      if (m < n && !strongly_isomorphic(pool, m, n))
        throw PreconditionError("strongly-isomorphic", pair_names(pool, m, n) + " are not strongly isomorphic");
  for (ModelId m : ms)
    for (ModelId k : a)
      if (!pool.member(k, m))
        throw PreconditionError("inside", "'" + pool[k].name() + "' is not a member of '" + pool[m].name() + "'");
  return post_coherent(pool, family_union(a, ms));
}

std::optional<std::pair<ModelId, ModelId>> check_equivalences(const ModelPool& pool, const Family& a) {
  for (ModelId m : a) {
    for (ModelId n : a) {
      if (m == n) continue;
      Relation r = relate(pool, m, n);
      auto tm = omega1_trace(pool, m), tn = omega1_trace(pool, n);
      bool sim = r == Relation::SIM;
      bool same = tm == tn;
      bool is_iso = isomorphic(pool, m, n);
      bool strong = strongly_isomorphic(pool, m, n);
      if (sim != same || same != is_iso || is_iso != strong) return std::make_pair(m, n);
      if ((r == Relation::LT) != (tm.size() < tn.size())) return std::make_pair(m, n);
    }
  }
  return std::nullopt;
}

std::optional<std::pair<ModelId, ModelId>> check_low_sets(const ModelPool& pool, const Family& a) {
  for (ModelId m : a) {
    for (ModelId n : a) {
      if (m == n || !leq(pool, m, n)) continue;
      int beta = comparison_point(pool.universe(), pool[m], pool[n]);
      for (const Element& e : pool[m].elems().items()) {
        if (e.kind() != Element::Kind::Set) continue;
        bool low = true;
        for (const Element& b : e.items())
          if (b.kind() != Element::Kind::Ord || b.value() >= beta) low = false;
        if (low && !pool[n].elems().has_member(e)) return std::make_pair(m, n);
      }
    }
  }
  return std::nullopt;
}

Family copies_in(const ModelPool& pool, const Family& a, ModelId m) {
  Family out;
  for (ModelId c : a)
    if (isomorphic(pool, c, m)) out.push_back(c);
  return out;
}

}  // namespace adq
