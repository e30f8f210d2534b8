#include "adq/iso.hpp"

#include <algorithm>

#include "adq/errors.hpp"

namespace adq {

namespace {

int rank_of(const std::vector<int>& trace, int xi) {
  auto it = std::lower_bound(trace.begin(), trace.end(), xi);
  if (it == trace.end() || *it != xi) throw PreconditionError("in-domain", "ordinal outside the model trace");
  return static_cast<int>(it - trace.begin());
}

}  // namespace

Element collapse_element(const Model& m, const Element& a) {
  switch (a.kind()) {
    case Element::Kind::Ord:
      return Element::ord(rank_of(m.trace(), a.value()));
    case Element::Kind::Set: {
      std::vector<Element> v;
      for (const Element& b : a.items()) v.push_back(collapse_element(m, b));
      return Element::set(std::move(v));
    }
    case Element::Kind::Tuple: {
      std::vector<Element> v;
      for (const Element& b : a.items()) v.push_back(collapse_element(m, b));
      return Element::tuple(std::move(v));
    }
  }
  return a;
}

Collapse collapse(const Universe& u, const Model& m) {
  Collapse c;
  c.image = collapse_element(m, m.elems());
  for (int xi : m.trace()) c.ord_flags.push_back(u.ord_flags(xi));
  if (!u.y().empty()) {
    for (const Element& a : m.elems().items()) {
      std::uint32_t f = u.user_flags(a);
      if (f) c.user_flags.emplace_back(collapse_element(m, a), f);
    }
    std::sort(c.user_flags.begin(), c.user_flags.end());
  }
  return c;
}

IsoMap::IsoMap(std::string source, std::string target, std::vector<std::pair<int, int>> ordinal_map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(ordinal_map)) {
  std::sort(map_.begin(), map_.end());
}

std::optional<int> IsoMap::map_ordinal(int xi) const {
  auto it = std::lower_bound(map_.begin(), map_.end(), std::make_pair(xi, -1 << 30));
  if (it == map_.end() || it->first != xi) return std::nullopt;
  return it->second;
}

bool IsoMap::in_domain(const Element& a) const {
  for (int xi : a.ordinals())
    if (!map_ordinal(xi)) return false;
  return true;
}

Element IsoMap::apply(const Element& a) const {
  switch (a.kind()) {
    case Element::Kind::Ord: {
      auto v = map_ordinal(a.value());
      if (!v) throw PreconditionError("in-domain", "ordinal " + std::to_string(a.value()) + " is not in '" + source_ + "'");
      return Element::ord(*v);
    }
    case Element::Kind::Set: {
      std::vector<Element> v;
      for (const Element& b : a.items()) v.push_back(apply(b));
      return Element::set(std::move(v));
    }
    case Element::Kind::Tuple: {
      std::vector<Element> v;
      for (const Element& b : a.items()) v.push_back(apply(b));
      return Element::tuple(std::move(v));
    }
  }
  return a;
}

IsoMap IsoMap::inverse() const {
  std::vector<std::pair<int, int>> inv;
  for (auto [a, b] : map_) inv.emplace_back(b, a);
  return IsoMap(target_, source_, std::move(inv));
}

IsoMap IsoMap::restricted(const Model& k, std::string target) const {
  std::vector<std::pair<int, int>> r;
  for (int xi : k.trace()) {
    auto v = map_ordinal(xi);
    if (!v) throw PreconditionError("in-domain", "model '" + k.name() + "' is not inside '" + source_ + "'");
    r.emplace_back(xi, *v);
  }
  return IsoMap(k.name(), std::move(target), std::move(r));
}

bool IsoMap::is_identity() const {
  return std::all_of(map_.begin(), map_.end(), [](const auto& p) { return p.first == p.second; });
}

std::vector<std::pair<Element, Element>> IsoMap::members(const Model& source_model) const {
  std::vector<std::pair<Element, Element>> out;
  for (const Element& a : source_model.elems().items()) out.emplace_back(a, apply(a));
  return out;
}

std::optional<IsoMap> iso(const Universe& u, const Model& m, const Model& n) {
  if (m.trace().size() != n.trace().size() || m.elems().size() != n.elems().size()) return std::nullopt;
  if (!(collapse(u, m) == collapse(u, n))) return std::nullopt;
  std::vector<std::pair<int, int>> map;
  for (std::size_t i = 0; i < m.trace().size(); ++i) map.emplace_back(m.trace()[i], n.trace()[i]);
  return IsoMap(m.name(), n.name(), std::move(map));
}

std::optional<IsoMap> iso(const ModelPool& pool, ModelId m, ModelId n) {
  return iso(pool.universe(), pool[m], pool[n]);
}

bool isomorphic(const ModelPool& pool, ModelId m, ModelId n) { return iso(pool, m, n).has_value(); }

namespace {

bool fixes_common(const Model& m, const Model& n, const IsoMap& sigma) {
  const auto& a = m.elems().items();
  for (const Element& e : a)
    if (n.elems().has_member(e) && !(sigma.apply(e) == e)) return false;
  return true;
}

}  // namespace

bool is_strong_iso(const ModelPool& pool, ModelId m, ModelId n) {
  auto sigma = iso(pool, m, n);
  if (!sigma)
    throw PreconditionError("isomorphic", "'" + pool[m].name() + "' and '" + pool[n].name() + "' are not isomorphic");
  return fixes_common(pool[m], pool[n], *sigma);
}

bool strongly_isomorphic(const ModelPool& pool, ModelId m, ModelId n) {
  auto sigma = iso(pool, m, n);
  return sigma && fixes_common(pool[m], pool[n], *sigma);
}

ModelId transport(ModelPool& pool, const IsoMap& sigma, ModelId k) {
  auto src = pool.find(sigma.source());
  if (!src || !pool.member(k, *src))
    throw PreconditionError("member-of-source",
                            "'" + pool[k].name() + "' is not a member of '" + sigma.source() + "'");
  Element image = sigma.apply(pool[k].elems());
  ModelId l;
  if (auto existing = pool.find(image)) {
    l = *existing;
  } else {
    l = pool.add(pool.fresh_name(pool[k].name() + "^" + sigma.target()), image);
  }
  const Universe& u = pool.universe();
  auto kl = iso(u, pool[k], pool[l]);
  if (!kl || !(kl->ordinal_map() == sigma.restricted(pool[k], pool[l].name()).ordinal_map()))
    throw PostconditionError("transport", "image of '" + pool[k].name() + "' is not isomorphic by the restriction");
  return l;
}

}  // namespace adq
