#include "adq/calculus.hpp"

#include <algorithm>
#include <set>

#include "adq/errors.hpp"

namespace adq {

const char* to_string(Relation r) {
  switch (r) {
    case Relation::LT:
      return "LT";
    case Relation::SIM:
      return "SIM";
    case Relation::GT:
      return "GT";
    case Relation::NONE:
      return "NONE";
  }
  return "NONE";
}

Relation flip(Relation r) {
  if (r == Relation::LT) return Relation::GT;
  if (r == Relation::GT) return Relation::LT;
  return r;
}

std::vector<int> lambda_set(const Universe& u, const std::vector<int>& trace) {
  std::vector<int> out;
  for (int beta : u.lambda()) {
    std::optional<int> least = u.lambda_at_least(sup_below(trace, beta));
    if (least && *least == beta) out.push_back(beta);
  }
  return out;
}

int comparison_point(const Universe& u, const std::vector<int>& t1, const std::vector<int>& t2) {
  std::vector<int> a = lambda_set(u, t1), b = lambda_set(u, t2), common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  // min(lambda) is in every lambda set, so common is never empty.
  return common.back();
}

std::vector<int> below(const std::vector<int>& trace, int bound) {
  return {trace.begin(), std::lower_bound(trace.begin(), trace.end(), bound)};
}

std::optional<int> min_from(const std::vector<int>& trace, int from) {
  auto it = std::lower_bound(trace.begin(), trace.end(), from);
  if (it == trace.end()) return std::nullopt;
  return *it;
}

Relation relate(const Universe& u, const Model& m, const Model& n) {
  int beta = comparison_point(u, m, n);
  std::vector<int> mb = below(m.trace(), beta), nb = below(n.trace(), beta);
  if (mb == nb) return Relation::SIM;
  if (n.elems().has_member(Element::ord_set(mb))) return Relation::LT;
  if (m.elems().has_member(Element::ord_set(nb))) return Relation::GT;
  return Relation::NONE;
}

Relation relate(const ModelPool& pool, ModelId m, ModelId n) { return relate(pool.universe(), pool[m], pool[n]); }

bool leq(const ModelPool& pool, ModelId n, ModelId m) {
  Relation r = relate(pool, m, n);
  return r == Relation::GT || r == Relation::SIM;
}

std::vector<int> remainder(const Universe& u, const Model& m, const Model& n) {
  Relation r = relate(u, m, n);
  if (r == Relation::NONE)
    throw PreconditionError("adequate-pair", "'" + m.name() + "' and '" + n.name() + "' are incomparable");
  int beta = comparison_point(u, m, n);
  std::set<int> out;
  if (r == Relation::GT || r == Relation::SIM)
    if (auto z = min_from(n.trace(), beta)) out.insert(*z);
  for (auto it = std::lower_bound(m.trace().begin(), m.trace().end(), beta); it != m.trace().end(); ++it)
    if (auto z = min_from(n.trace(), *it)) out.insert(*z);
  return {out.begin(), out.end()};
}

std::vector<int> remainder(const ModelPool& pool, ModelId m, ModelId n) {
  return remainder(pool.universe(), pool[m], pool[n]);
}

PairData compare(const ModelPool& pool, ModelId m, ModelId n) {
  PairData d;
  d.beta = comparison_point(pool.universe(), pool[m], pool[n]);
  d.relation = relate(pool, m, n);
  if (d.relation != Relation::NONE) {
    d.r_mn = remainder(pool, m, n);
    d.r_nm = remainder(pool, n, m);
  }
  return d;
}

std::optional<std::pair<ModelId, ModelId>> first_incomparable(const ModelPool& pool, const Family& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (relate(pool, a[i], a[j]) == Relation::NONE) return std::make_pair(a[i], a[j]);
  return std::nullopt;
}

std::vector<int> remainder_union(const ModelPool& pool, const Family& a) {
  std::set<int> out;
  for (ModelId m : a)
    for (ModelId n : a)
      for (int z : remainder(pool, m, n)) out.insert(z);
  return {out.begin(), out.end()};
}

SAdequacy check_s_adequate(const ModelPool& pool, const Family& a) {
  SAdequacy v;
  if (auto bad = first_incomparable(pool, a)) {
    v.ok = false;
    v.incomparable = bad;
    return v;
  }
  for (ModelId m : a)
    for (ModelId n : a)
      for (int z : remainder(pool, m, n))
        if (!pool.universe().in_s(z)) {
          v.ok = false;
          v.offender = SOffender{m, n, z};
          return v;
        }
  return v;
}

}  // namespace adq
