#include "adq/axioms.hpp"

#include <algorithm>

#include "adq/calculus.hpp"
#include "adq/iso.hpp"

namespace adq {

namespace {

std::vector<int> map_ordinals(const IsoMap& s, const std::vector<int>& v) {
  std::vector<int> out;
  for (int xi : v) out.push_back(*s.map_ordinal(xi));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<AxiomViolation> check_e1(const ModelPool& pool, std::size_t limit) {
  std::vector<AxiomViolation> out;
  const Universe& u = pool.universe();
  for (ModelId m = 0; m < pool.size(); ++m) {
    for (ModelId n = m; n < pool.size(); ++n) {
      int beta = comparison_point(u, pool[m], pool[n]);
      const auto& a = pool[m].trace();
      const auto& b = pool[n].trace();
      std::vector<int> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      if (!common.empty() && common.back() >= beta) {
        out.push_back({"E1", m, n, {}, {},
                       "common ordinal " + std::to_string(common.back()) + " is not below comparison point " +
                           std::to_string(beta)});
        if (out.size() >= limit) return out;
      }
    }
  }
  return out;
}

std::vector<AxiomViolation> check_e2(const ModelPool& pool, std::size_t limit) {
  std::vector<AxiomViolation> out;
  const Universe& u = pool.universe();
  for (ModelId m = 0; m < pool.size(); ++m) {
    for (ModelId n = 0; n < pool.size(); ++n) {
      if (m == n || relate(pool, m, n) != Relation::LT) continue;
      int beta = comparison_point(u, pool[m], pool[n]);
      if (!pool[n].contains_ordinal(beta)) {
        out.push_back({"E2", m, n, {}, {}, "comparison point " + std::to_string(beta) + " is missing from the larger model"});
        if (out.size() >= limit) return out;
      }
    }
  }
  return out;
}

std::vector<AxiomViolation> check_e3(const ModelPool& pool, std::size_t limit) {
  std::vector<AxiomViolation> out;
  const Universe& u = pool.universe();
  auto push = [&](AxiomViolation v) {
    out.push_back(std::move(v));
    return out.size() >= limit;
  };
  for (ModelId m = 0; m < pool.size(); ++m) {
    Family inside = pool.models_in(m);
    if (inside.empty()) continue;
    std::vector<std::pair<ModelId, IsoMap>> images;
    for (ModelId n = 0; n < pool.size(); ++n)
      if (n != m)
        if (auto s = iso(pool, m, n)) images.emplace_back(n, *s);
    for (ModelId k : inside) {
      for (ModelId l : inside) {
        if (l < k) continue;
        const Model& K = pool[k];
        const Model& L = pool[l];
        int beta = comparison_point(u, K, L);
        if (!pool[m].contains_ordinal(beta)) {
          if (push({"E3", m, m, k, l, "comparison point " + std::to_string(beta) + " of two members is missing"}))
            return out;
          continue;
        }
        Relation rel = relate(u, K, L);
        for (const auto& [n, s] : images) {
          Model sk("_", s.apply(K.elems()));
          Model sl("_", s.apply(L.elems()));
          if (*s.map_ordinal(beta) != comparison_point(u, sk, sl)) {
            if (push({"E3", m, n, k, l, "isomorphism does not carry the comparison point"})) return out;
            continue;
          }
          if (relate(u, sk, sl) != rel) {
            if (push({"E3", m, n, k, l, "isomorphism does not carry the relation"})) return out;
            continue;
          }
          if (rel != Relation::NONE) {
            if (map_ordinals(s, remainder(u, K, L)) != remainder(u, sk, sl) ||
                map_ordinals(s, remainder(u, L, K)) != remainder(u, sl, sk)) {
              if (push({"E3", m, n, k, l, "isomorphism does not carry the remainder points"})) return out;
            }
          }
        }
      }
    }
  }
  return out;
}

std::vector<AxiomViolation> check_e4(const ModelPool& pool, std::size_t limit) {
  std::vector<AxiomViolation> out;
  for (ModelId m = 0; m < pool.size(); ++m) {
    Family inside = pool.models_in(m);
    if (inside.empty()) continue;
    for (ModelId n = 0; n < pool.size(); ++n) {
      if (n == m) continue;
      auto s = iso(pool, m, n);
      if (!s) continue;
      bool strong = strongly_isomorphic(pool, m, n);
      for (ModelId k : inside) {
        auto image = pool.find(s->apply(pool[k].elems()));
        if (!image) {
          out.push_back({"E4", m, n, k, {}, "image of a member model is not registered"});
        } else if (strong && !strongly_isomorphic(pool, k, *image)) {
          out.push_back({"E4", m, n, k, image, "image of a member is not strongly isomorphic to it"});
        } else {
          continue;
        }
        if (out.size() >= limit) return out;
      }
    }
  }
  return out;
}

std::vector<AxiomViolation> check_axioms(const ModelPool& pool, std::size_t limit) {
  std::vector<AxiomViolation> out;
  for (auto* check : {&check_e1, &check_e2, &check_e3, &check_e4}) {
    if (out.size() >= limit) break;
    auto v = check(pool, limit - out.size());
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

bool mark_well_formed(ModelPool& pool) {
  bool ok = check_axioms(pool, 1).empty();
  pool.set_well_formed(ok);
  return ok;
}

std::string describe(const ModelPool& pool, const AxiomViolation& v) {
  std::string s = v.axiom + " " + pool[v.m].name() + " " + pool[v.n].name();
  if (v.k) s += " " + pool[*v.k].name();
  if (v.l) s += " " + pool[*v.l].name();
  return s + ": " + v.detail;
}

}  // namespace adq
