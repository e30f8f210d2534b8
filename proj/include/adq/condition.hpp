#ifndef ADQ_CONDITION_HPP
#define ADQ_CONDITION_HPP

#include <vector>

#include "adq/element.hpp"
#include "adq/model.hpp"

namespace adq {

/// Working part x (triples or pairs) plus side condition A.
struct Condition {
  std::vector<Element> x;  // canonical order
  Family a;

  Condition() = default;
  Condition(std::vector<Element> x_, Family a_) : x(std::move(x_)), a(make_family(std::move(a_))) {
    canonicalize(x);
  }

  bool has(const Element& e) const;
  friend bool operator==(const Condition&, const Condition&) = default;
  friend auto operator<=>(const Condition&, const Condition&) = default;
};

/// q <= p iff x_p is contained in x_q and A_p in A_q.
bool extends(const Condition& q, const Condition& p);

Element make_pair(int a, int b);
Element make_triple(int alpha, int gamma, int beta);

}  // namespace adq

#endif  // ADQ_CONDITION_HPP
