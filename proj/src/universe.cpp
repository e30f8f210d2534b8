#include "adq/universe.hpp"

#include <algorithm>

#include "adq/errors.hpp"

namespace adq {

bool YPredicate::holds(const Element& a) const {
  return std::binary_search(extension.begin(), extension.end(), a);
}

Universe::Universe(int theta, int omega1, std::vector<int> lambda, std::vector<int> s,
                   std::vector<YPredicate> y)
    : theta_(theta), omega1_(omega1), lambda_(std::move(lambda)), s_(std::move(s)), y_(std::move(y)) {
  std::sort(lambda_.begin(), lambda_.end());
  lambda_.erase(std::unique(lambda_.begin(), lambda_.end()), lambda_.end());
  std::sort(s_.begin(), s_.end());
  s_.erase(std::unique(s_.begin(), s_.end()), s_.end());
  for (YPredicate& p : y_) canonicalize(p.extension);

  if (theta_ <= 0) throw InvariantError("theta-positive", "theta must be positive");
  if (omega1_ < 0 || omega1_ >= theta_)
    throw InvariantError("omega1-range", "omega1 must lie in [0, theta)");
  if (lambda_.empty()) throw InvariantError("lambda-nonempty", "lambda is empty");
  if (lambda_.front() < omega1_)
    throw InvariantError("lambda-above-omega1", "min(lambda) is below omega1");
  if (lambda_.back() >= theta_)
    throw InvariantError("lambda-range", "lambda must lie below theta");
  if (!s_.empty() && (s_.front() < 0 || s_.back() >= theta_))
    throw InvariantError("s-range", "s must lie in [0, theta)");
}

bool Universe::in_lambda(int xi) const { return std::binary_search(lambda_.begin(), lambda_.end(), xi); }

bool Universe::in_s(int xi) const { return std::binary_search(s_.begin(), s_.end(), xi); }

std::optional<int> Universe::lambda_at_least(int x) const {
  auto it = std::lower_bound(lambda_.begin(), lambda_.end(), x);
  if (it == lambda_.end()) return std::nullopt;
  return *it;
}

std::uint32_t Universe::ord_flags(int xi) const {
  std::uint32_t f = 0;
  if (xi < omega1_) f |= kBelowOmega1;
  if (xi == omega1_) f |= kIsOmega1;
  if (in_lambda(xi)) f |= kIsLambda;
  if (in_s(xi)) f |= kIsS;
  return f;
}

std::uint32_t Universe::user_flags(const Element& a) const {
  std::uint32_t f = 0;
  for (std::size_t i = 0; i < y_.size(); ++i)
    if (y_[i].holds(a)) f |= 1u << i;
  return f;
}

int sup_of(const std::vector<int>& sorted) { return sorted.empty() ? 0 : sorted.back(); }

int sup_below(const std::vector<int>& sorted, int bound) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), bound);
  return it == sorted.begin() ? 0 : *(it - 1);
}

}  // namespace adq
