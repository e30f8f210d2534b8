#include "adq/condition.hpp"

#include <algorithm>

namespace adq {

bool Condition::has(const Element& e) const { return std::binary_search(x.begin(), x.end(), e); }

bool extends(const Condition& q, const Condition& p) {
  return std::includes(q.x.begin(), q.x.end(), p.x.begin(), p.x.end()) && family_subset(p.a, q.a);
}

Element make_pair(int a, int b) { return Element::tuple({Element::ord(a), Element::ord(b)}); }

Element make_triple(int alpha, int gamma, int beta) {
  return Element::tuple({Element::ord(alpha), Element::ord(gamma), Element::ord(beta)});
}

}  // namespace adq
