#include "adq/model.hpp"

#include <algorithm>

#include "adq/errors.hpp"

namespace adq {

Model::Model(std::string name, Element elems) : name_(std::move(name)), elems_(std::move(elems)) {
  if (!elems_.is_set()) throw InvariantError("model-is-set", "model '" + name_ + "' elems is not a set");
  for (const Element& a : elems_.items())
    if (a.is_ord()) trace_.push_back(a.value());
}

bool Model::contains_ordinal(int xi) const { return std::binary_search(trace_.begin(), trace_.end(), xi); }

bool Model::contains(const Element& a) const {
  switch (a.kind()) {
    case Element::Kind::Ord:
      return contains_ordinal(a.value());
    case Element::Kind::Set:
      return elems_.has_member(a);
    case Element::Kind::Tuple:
      if (elems_.has_member(a)) return true;
      return std::all_of(a.items().begin(), a.items().end(), [&](const Element& b) { return contains(b); });
  }
  return false;
}

std::vector<Violation> validate_model(const Universe& u, const Model& m) {
  std::vector<Violation> out;
  for (int xi : m.elems().ordinals()) {
    if (xi < 0 || xi >= u.theta()) {
      out.push_back({"ordinal-range", "ordinal " + std::to_string(xi) + " outside [0, theta)"});
      break;
    }
  }
  for (const Element& a : m.elems().items()) {
    if (a.is_ord()) continue;
    for (const Element& b : a.items()) {
      if (!m.elems().has_member(b)) {
        out.push_back({"member-closure", "a member of a member is missing from model '" + m.name() + "'"});
        goto closure_done;
      }
    }
  }
closure_done:
  const std::vector<int>& t = m.trace();
  int expected = 0;
  for (int xi : t) {
    if (xi >= u.omega1()) break;
    if (xi != expected) {
      out.push_back({"omega1-initial-segment", "ordinal " + std::to_string(expected) +
                                                   " is missing below omega1 but " + std::to_string(xi) +
                                                   " is present"});
      break;
    }
    ++expected;
  }
  return out;
}

Family make_family(std::vector<ModelId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

bool family_contains(const Family& f, ModelId id) { return std::binary_search(f.begin(), f.end(), id); }

bool family_subset(const Family& a, const Family& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

Family family_union(const Family& a, const Family& b) {
  Family out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ModelId ModelPool::add(const Model& m) {
  if (auto it = by_elems_.find(m.elems()); it != by_elems_.end()) return it->second;
  std::vector<Violation> v = validate_model(universe_, m);
  if (!v.empty()) throw InvariantError(v.front().invariant, "model '" + m.name() + "': " + v.front().detail);
  std::vector<int> ords = m.elems().ordinals();
  if (check_lambda_above_ && !ords.empty() && ords.back() >= universe_.max_lambda())
    throw InvariantError("lambda-above-traces",
                         "model '" + m.name() + "' has an ordinal not below max(lambda)");
  if (by_name_.count(m.name()))
    throw InvariantError("name-unique", "model name '" + m.name() + "' is already taken");
  ModelId id = models_.size();
  models_.push_back(m);
  by_name_.emplace(m.name(), id);
  by_elems_.emplace(m.elems(), id);
  return id;
}

std::optional<ModelId> ModelPool::find(std::string_view name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<ModelId> ModelPool::find(const Element& elems) const {
  auto it = by_elems_.find(elems);
  if (it == by_elems_.end()) return std::nullopt;
  return it->second;
}

ModelId ModelPool::id(std::string_view name) const {
  auto found = find(name);
  if (!found) throw PreconditionError("unknown-model", "no model named '" + std::string(name) + "'");
  return *found;
}

Family ModelPool::ids(const std::vector<std::string>& names) const {
  std::vector<ModelId> out;
  for (const std::string& n : names) out.push_back(id(n));
  return make_family(std::move(out));
}

std::vector<std::string> ModelPool::names(const Family& f) const {
  std::vector<std::string> out;
  for (ModelId id : f) out.push_back(models_.at(id).name());
  return out;
}

bool ModelPool::member(ModelId k, ModelId m) const {
  return models_.at(m).elems().has_member(models_.at(k).elems());
}

Family ModelPool::models_in(ModelId m) const {
  Family out;
  for (ModelId k = 0; k < models_.size(); ++k)
    if (member(k, m)) out.push_back(k);
  return out;
}

Family ModelPool::all() const {
  Family out(models_.size());
  for (ModelId i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

std::string ModelPool::fresh_name(const std::string& base) const {
  if (!by_name_.count(base)) return base;
  for (int i = 2;; ++i) {
    std::string cand = base + "#" + std::to_string(i);
    if (!by_name_.count(cand)) return cand;
  }
}

}  // namespace adq
