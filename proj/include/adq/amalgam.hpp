#ifndef ADQ_AMALGAM_HPP
#define ADQ_AMALGAM_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adq/element.hpp"
#include "adq/model.hpp"

namespace adq {

/// Finite set of elements in canonical order.
using ElementSet = std::vector<Element>;

ElementSet make_element_set(ElementSet x);
/// Members of x that lie inside model m.
ElementSet inside(const Model& m, const ElementSet& x);

/// (x, A) is closed when isomorphisms between members of A carry the
/// elements of x they can see back into x. Returns the first counterexample
/// (a, N, N') if any.
struct ClosureGap {
  Element a;
  ModelId from;
  ModelId to;
};
std::optional<ClosureGap> closure_gap(const ModelPool& pool, const ElementSet& x, const Family& a);
inline bool is_closed(const ModelPool& pool, const ElementSet& x, const Family& a) {
  return !closure_gap(pool, x, a);
}

/// One-step closure of x under the isomorphisms of A. Throws
/// PreconditionError("coherent") and PostconditionError("closed").
ElementSet close_pair(const ModelPool& pool, const ElementSet& x, const Family& a);

struct ClosedPair {
  ElementSet x;
  Family a;
};

/// Models of A at or above N together with the copies of B inside each
/// isomorphic copy of N. Copies not yet in the pool are registered.
Family copies_over(ModelPool& pool, const Family& a, ModelId n, const Family& b);

/// Closure over N: returns (z, C) with z built from x and the copies of y.
/// Throws PreconditionError for each violated hypothesis and
/// PostconditionError("closed"), ("contains"), ("trace-over-n").
ClosedPair close_over(ModelPool& pool, ModelId n, const ElementSet& x, const Family& a, const ElementSet& y,
                      const Family& b);

/// Amalgamation over a countable model N in A. Checks coherence, A and B
/// inside C, C restricted to N equal to B, and the remainder bound.
/// Throws PreconditionError and PostconditionError; postcondition messages
/// name the offending pair and the first E-axiom the pool breaks, if any.
Family amalgamate_countable(ModelPool& pool, const Family& a, ModelId n, const Family& b);

/// The ordinals that amalgamate_countable allows as remainder points of C.
std::vector<int> countable_remainder_bound(const ModelPool& pool, const Family& a, ModelId n, const Family& b,
                                           const Family& c);

struct Verdict {
  bool ok = true;
  std::string detail;
};

/// Copies of an adequate pair K, L inside N, moved into N' and N*, stay
/// adequate, and their remainder points below the comparison point of N'
/// and N* pull back to those of K and L. Throws PreconditionError.
Verdict check_transported_pair(const ModelPool& pool, ModelId n, ModelId n1, ModelId n2, ModelId k, ModelId l);

/// Agreement below a lambda point beta fixes the comparison point once it
/// is at most beta. Throws PreconditionError("lambda"), ("agree-m"),
/// ("agree-k"), ("below-beta").
Verdict check_same_comparison_point(const Universe& u, const std::vector<int>& m0, const std::vector<int>& m1,
                                    const std::vector<int>& k0, const std::vector<int>& k1, int beta);

struct UncountableInput {
  Family a;
  std::map<ModelId, ModelId> primed;  // M -> M'
  int beta = 0;
  int beta_star = 0;
  /// Models that belong to the large structure cut off at beta_star. The
  /// primed models are added to it implicitly.
  Family inside;
};

struct UncountableResult {
  Family c;
  std::vector<int> bound;  // R_A, R_A', r_A and r_A' together
};

/// Amalgamation of A with a copy A' pushed below beta. Throws
/// PreconditionError("lambda"), ("cut-order"), ("domain"), ("isomorphic"),
/// ("agree-below-cut"), ("below-cut"), ("members"), ("fixed-inside"),
/// ("coherent-primed"), and PostconditionError("coherent"), ("remainders").
UncountableResult amalgamate_uncountable(const ModelPool& pool, const UncountableInput& in);

}  // namespace adq

#endif  // ADQ_AMALGAM_HPP
