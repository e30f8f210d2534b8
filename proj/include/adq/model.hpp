#ifndef ADQ_MODEL_HPP
#define ADQ_MODEL_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adq/element.hpp"
#include "adq/universe.hpp"

namespace adq {

struct Violation {
  std::string invariant;
  std::string detail;
};

/// A named finite set standing in for a countable elementary submodel.
class Model {
 public:
  Model() = default;
  /// Throws InvariantError("model-is-set") if `elems` is not a set.
  Model(std::string name, Element elems);

  const std::string& name() const { return name_; }
  const Element& elems() const { return elems_; }
  /// Sorted ordinal members.
  const std::vector<int>& trace() const { return trace_; }

  /// Membership as seen from inside the model: ordinals and sets must be
  /// members; a tuple is inside when it is a member or all its items are
  /// (models are closed under forming finite tuples).
  bool contains(const Element& a) const;
  bool contains_ordinal(int xi) const;

 private:
  std::string name_;
  Element elems_ = Element::set({});
  std::vector<int> trace_;
};

/// Reports every violated Model invariant (ordinal range, member-closure,
/// omega1 initial segment). Empty result means valid.
std::vector<Violation> validate_model(const Universe& u, const Model& m);

using ModelId = std::size_t;
/// Sorted, duplicate-free list of pool ids.
using Family = std::vector<ModelId>;

Family make_family(std::vector<ModelId> ids);
bool family_contains(const Family& f, ModelId id);
bool family_subset(const Family& a, const Family& b);
Family family_union(const Family& a, const Family& b);

/// Universe plus a registry of models keyed by both name and content.
class ModelPool {
 public:
  ModelPool() = default;
  explicit ModelPool(Universe u) : universe_(std::move(u)) {}
  /// With `check_lambda_above` false the pool accepts models that reach
  /// max(lambda). Only useful for building negative fixtures.
  ModelPool(Universe u, bool check_lambda_above)
      : universe_(std::move(u)), check_lambda_above_(check_lambda_above) {}

  const Universe& universe() const { return universe_; }
  std::size_t size() const { return models_.size(); }
  const Model& operator[](ModelId id) const { return models_.at(id); }
  const std::vector<Model>& models() const { return models_; }

  /// Registers a model, validating it. Registration is idempotent on
  /// content: an equal model returns the existing id.
  ModelId add(const Model& m);
  ModelId add(std::string name, Element elems) { return add(Model(std::move(name), std::move(elems))); }

  std::optional<ModelId> find(std::string_view name) const;
  std::optional<ModelId> find(const Element& elems) const;
  /// Throws PreconditionError("unknown-model").
  ModelId id(std::string_view name) const;
  Family ids(const std::vector<std::string>& names) const;
  std::vector<std::string> names(const Family& f) const;

  /// K is an element-member of M.
  bool member(ModelId k, ModelId m) const;
  /// Registered models that are members of M.
  Family models_in(ModelId m) const;
  Family all() const;

  std::string fresh_name(const std::string& base) const;

  bool checks_lambda_above() const { return check_lambda_above_; }
  bool well_formed() const { return well_formed_; }
  void set_well_formed(bool v) { well_formed_ = v; }

 private:
  Universe universe_;
  std::vector<Model> models_;
  std::map<std::string, ModelId, std::less<>> by_name_;
  std::map<Element, ModelId> by_elems_;
  bool well_formed_ = false;
  bool check_lambda_above_ = true;
};

}  // namespace adq

#endif  // ADQ_MODEL_HPP
