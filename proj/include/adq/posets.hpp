#ifndef ADQ_POSETS_HPP
#define ADQ_POSETS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adq/condition.hpp"
#include "adq/iso.hpp"
#include "adq/model.hpp"

namespace adq {

enum class PosetKind { Square, Club };
const char* to_string(PosetKind k);

/// sup(trace & alpha) lies in s for every alpha in (trace & s) plus theta.
bool in_Y(const Universe& u, const Model& m);

struct ClauseFailure {
  int clause;
  std::string detail;
};

/// Every violated clause, each reported once, in clause order.
struct PosetVerdict {
  std::vector<ClauseFailure> failures;
  bool ok() const { return failures.empty(); }
  std::vector<int> clauses() const;
};

// Square conditions: x holds triples <alpha, gamma, beta> with alpha a lambda
// point and gamma < beta < alpha. Clauses: 1 shape and nonoverlap, 2 coherent
// side set, 3 model compatibility, 4 closure under isomorphisms.
PosetVerdict sq_validate(const ModelPool& pool, const Condition& c);

// Club conditions: x holds pairs <alpha, alpha'> with alpha <= alpha' < theta
// and alpha in s. Clauses: 1 shape and nonoverlap, 2 coherent side set inside
// Y, 3 model compatibility, 4 remainder points present as <z, z>, 5 closure
// under isomorphisms. Clause 4 is evaluated only when A is adequate.
PosetVerdict club_validate(const ModelPool& pool, const Condition& c);

PosetVerdict validate(PosetKind kind, const ModelPool& pool, const Condition& c);

/// The condition viewed from inside M: x-elements contained in M and the
/// side models that are members of M.
Condition restrict_to(const ModelPool& pool, const Condition& r, ModelId m);
bool condition_inside(const ModelPool& pool, const Condition& p, ModelId m);

/// r restricted to N. Throws PreconditionError("n-in-side") and
/// PostconditionError("valid").
Condition club_restrict(const ModelPool& pool, const Condition& r, ModelId n);

/// Common extension of r and a condition w inside N below r restricted to N.
/// Throws PreconditionError("valid-r"), ("valid-w"), ("n-in-side"),
/// ("w-inside-n"), ("w-below-restriction") and PostconditionError("valid"),
/// ("below-r"), ("below-w").
Condition club_amalgamate(ModelPool& pool, const Condition& r, const Condition& w, ModelId n);

/// Adds <alpha, alpha2> and its images under the isomorphisms of A. Throws
/// PreconditionError("valid"), ("pair-shape"), ("hypothesis-1"),
/// ("hypothesis-2") and PostconditionError.
Condition club_add_pair(const ModelPool& pool, const Condition& p, int alpha, int alpha2);

/// Hypotheses of club_add_pair; empty when they hold.
std::optional<std::string> club_add_pair_blocker(const ModelPool& pool, const Condition& p, int alpha, int alpha2);

/// Puts a strongly isomorphic (s)-coherent family containing p into the side
/// set, adding the new remainder points and their images. Throws
/// PreconditionError("valid"), ("coherent"), ("strongly-isomorphic"),
/// ("s-adequate"), ("in-y"), ("inside") and PostconditionError.
Condition club_add_models(const ModelPool& pool, const Condition& p, const Family& ms);
Condition sq_add_models(const ModelPool& pool, const Condition& p, const Family& ms);

/// Adds <b, b> for the least b in s above gamma, above every pair ordinal and
/// above every side model. Throws PreconditionError("valid"), ("room").
Condition club_extend_unbounded(const ModelPool& pool, const Condition& p, int gamma);

struct Classification {
  Family a0;  // sup(trace) < alpha
  Family a1;  // sup(trace & alpha) < alpha and trace reaches alpha
  Family a2;  // sup(trace & alpha) = alpha
};
/// Throws PreconditionError("alpha-range").
Classification classify(const ModelPool& pool, const Condition& p, int alpha);

/// Image of a condition under an isomorphism whose source contains it.
/// Empty when some side model has no registered image.
std::optional<Condition> transport_condition(const ModelPool& pool, const IsoMap& sigma, const Condition& p);

/// Least valid condition above both inputs over the side set `a`, or empty.
std::optional<Condition> least_extension(PosetKind kind, const ModelPool& pool, const std::vector<Element>& x,
                                         const Family& a);
/// Common extension of p and q anywhere in the finite poset over the pool.
std::optional<Condition> common_extension(PosetKind kind, const ModelPool& pool, const Condition& p,
                                          const Condition& q);
inline bool compatible(PosetKind kind, const ModelPool& pool, const Condition& p, const Condition& q) {
  return common_extension(kind, pool, p, q).has_value();
}

/// Candidate working-part elements: club pairs with alpha in s, square
/// triples with alpha in lambda. `within` restricts them to one model.
std::vector<Element> candidate_elements(PosetKind kind, const Universe& u, const Model* within = nullptr);

/// All valid conditions with at most `max_x` working-part elements, side set
/// drawn from `side` (defaults to the whole pool).
struct PosetInstance {
  PosetKind kind = PosetKind::Club;
  const ModelPool* pool = nullptr;
  std::vector<Condition> conditions;  // sorted
};
PosetInstance enumerate_instance(PosetKind kind, const ModelPool& pool, std::size_t max_x);
/// Conditions inside M (no size bound on x).
PosetInstance enumerate_inside(PosetKind kind, const ModelPool& pool, ModelId m);

enum class GenericMode { Fast, Exact };

struct GenericVerdict {
  bool ok = true;
  std::size_t subposet_size = 0;
  std::size_t checked = 0;               // r <= q examined
  std::optional<Condition> failing_r;    // r with no reduction
  std::optional<Condition> restriction;  // r restricted to M for the failing r, if any
  bool restriction_is_reduction = true;  // over all r examined
};

/// Precomputed incompatibility masks of instance conditions against M's subposet.
class GenericTable {
 public:
  /// Throws PreconditionError("subposet-size") when exact mode is requested
  /// on a subposet larger than `exact_cap`.
  GenericTable(const PosetInstance& instance, ModelId m, GenericMode mode, std::size_t exact_cap = 12);

  GenericVerdict check(const Condition& q) const;
  const PosetInstance& subposet() const { return inside_; }

 private:
  bool has_reduction(std::size_t r) const;
  const PosetInstance* instance_;
  ModelId m_;
  GenericMode mode_;
  PosetInstance inside_;
  std::vector<std::uint32_t> below_;       // below_[i]: mask of subposet members <= member i
  std::vector<std::uint32_t> dense_;       // exact mode: all dense subsets
  std::vector<std::uint32_t> incompat_;    // per instance condition
  std::vector<bool> restriction_reduces_;  // per instance condition
};

GenericVerdict strong_generic_check(const PosetInstance& instance, const Condition& q, ModelId m, GenericMode mode,
                                    std::size_t exact_cap = 12);

struct GenericStep {
  std::string action;
  Condition condition;
};

struct GenericRun {
  std::vector<GenericStep> filter;  // descending, first is the start condition
  std::vector<int> c_s;
  std::vector<std::string> skipped;
  std::optional<std::string> stuck;  // requirement that could not be met
};

struct GenericRequirements {
  std::vector<int> targets;
  std::vector<Family> model_sets;
  int noise = 2;  // random pair insertions attempted
};

/// Seed-deterministic descending sequence meeting each requirement.
GenericRun generic_run(const ModelPool& pool, const Condition& start, const GenericRequirements& req,
                       std::uint64_t seed);

}  // namespace adq

#endif  // ADQ_POSETS_HPP
