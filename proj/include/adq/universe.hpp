#ifndef ADQ_UNIVERSE_HPP
#define ADQ_UNIVERSE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adq/element.hpp"

namespace adq {

/// A user predicate given by its (finite) extension.
struct YPredicate {
  std::string name;
  std::vector<Element> extension;  // canonical order

  bool holds(const Element& a) const;
  friend bool operator==(const YPredicate&, const YPredicate&) = default;
};

/// Ordinal strata that every isomorphism must respect.
enum OrdFlag : std::uint32_t {
  kBelowOmega1 = 1u << 0,
  kIsOmega1 = 1u << 1,
  kIsLambda = 1u << 2,
  kIsS = 1u << 3,
};

/// Toy parameters: theta plays omega_2, omega1 plays omega_1, lambda is the
/// cofinal set of comparison candidates and s is the target set.
class Universe {
 public:
  Universe() = default;
  /// Validates and normalizes; throws InvariantError.
  Universe(int theta, int omega1, std::vector<int> lambda, std::vector<int> s,
           std::vector<YPredicate> y = {});

  int theta() const { return theta_; }
  int omega1() const { return omega1_; }
  const std::vector<int>& lambda() const { return lambda_; }
  const std::vector<int>& s() const { return s_; }
  const std::vector<YPredicate>& y() const { return y_; }

  bool in_lambda(int xi) const;
  bool in_s(int xi) const;
  /// Least point of lambda that is >= x, if any.
  std::optional<int> lambda_at_least(int x) const;
  int max_lambda() const { return lambda_.back(); }

  std::uint32_t ord_flags(int xi) const;
  /// Bitmask over y(): bit i set iff y()[i] holds of a.
  std::uint32_t user_flags(const Element& a) const;

  friend bool operator==(const Universe&, const Universe&) = default;

 private:
  int theta_ = 0;
  int omega1_ = 0;
  std::vector<int> lambda_;
  std::vector<int> s_;
  std::vector<YPredicate> y_;
};

/// sup of a finite ordinal set: its maximum, or 0 when empty.
int sup_of(const std::vector<int>& sorted);
/// sup of the members of `sorted` lying below `bound`.
int sup_below(const std::vector<int>& sorted, int bound);

}  // namespace adq

#endif  // ADQ_UNIVERSE_HPP
