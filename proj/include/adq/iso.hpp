#ifndef ADQ_ISO_HPP
#define ADQ_ISO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adq/element.hpp"
#include "adq/model.hpp"
#include "adq/universe.hpp"

namespace adq {

/// Transitive collapse: ordinals reindexed by trace rank, everything else
/// mapped pointwise, with predicate flags carried alongside.
struct Collapse {
  Element image;
  std::vector<std::uint32_t> ord_flags;                     // by rank
  std::vector<std::pair<Element, std::uint32_t>> user_flags;  // (collapsed member, mask), nonzero masks only

  friend bool operator==(const Collapse&, const Collapse&) = default;
};

Collapse collapse(const Universe& u, const Model& m);
/// Collapsing map applied to one element whose ordinals lie in trace(m).
Element collapse_element(const Model& m, const Element& a);

/// The isomorphism between two models, determined by its action on ordinals.
class IsoMap {
 public:
  IsoMap(std::string source, std::string target, std::vector<std::pair<int, int>> ordinal_map);

  const std::string& source() const { return source_; }
  const std::string& target() const { return target_; }
  /// (source ordinal, target ordinal), increasing in both coordinates.
  const std::vector<std::pair<int, int>>& ordinal_map() const { return map_; }

  std::optional<int> map_ordinal(int xi) const;
  bool in_domain(const Element& a) const;
  /// Pointwise image. Throws PreconditionError("in-domain") when `a` has an
  /// ordinal outside the source trace.
  Element apply(const Element& a) const;
  IsoMap inverse() const;
  /// Restriction to the ordinals of `k`, renamed as a map between k and `target`.
  IsoMap restricted(const Model& k, std::string target) const;
  bool is_identity() const;
  /// (a, image of a) for every member a of `source_model`.
  std::vector<std::pair<Element, Element>> members(const Model& source_model) const;

  friend bool operator==(const IsoMap&, const IsoMap&) = default;

 private:
  std::string source_;
  std::string target_;
  std::vector<std::pair<int, int>> map_;
};

std::optional<IsoMap> iso(const Universe& u, const Model& m, const Model& n);
std::optional<IsoMap> iso(const ModelPool& pool, ModelId m, ModelId n);
bool isomorphic(const ModelPool& pool, ModelId m, ModelId n);

/// Every common member is fixed. Throws PreconditionError("isomorphic") when
/// the models are not isomorphic.
bool is_strong_iso(const ModelPool& pool, ModelId m, ModelId n);
/// Isomorphic and strongly so; never throws.
bool strongly_isomorphic(const ModelPool& pool, ModelId m, ModelId n);

/// Image of a member model K of sigma's source, registered in the pool.
/// Throws PreconditionError("member-of-source") and PostconditionError("transport").
ModelId transport(ModelPool& pool, const IsoMap& sigma, ModelId k);

}  // namespace adq

#endif  // ADQ_ISO_HPP
