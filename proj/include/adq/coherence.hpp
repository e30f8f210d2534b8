#ifndef ADQ_COHERENCE_HPP
#define ADQ_COHERENCE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adq/model.hpp"

namespace adq {

enum class CoherenceClause {
  None,        // coherent
  Adequacy,    // some pair is incomparable
  StrongIso,   // M ~ N but not strongly isomorphic
  LowerCopy,   // M < N but no copy of N in A contains M
  CopyClosed,  // sigma(K) missing from A
};

const char* to_string(CoherenceClause c);

struct CoherenceVerdict {
  CoherenceClause clause = CoherenceClause::None;
  ModelId m = 0;
  ModelId n = 0;
  std::optional<ModelId> k;
  std::string detail;

  bool ok() const { return clause == CoherenceClause::None; }
};

CoherenceVerdict is_coherent(const ModelPool& pool, const Family& a);

/// For each LT pair (M, N) of a coherent set, the least copy N' of N in A
/// with M a member of N'.
struct LowerCopyWitness {
  ModelId m;
  ModelId n;
  ModelId copy;
};
/// Throws PreconditionError("coherent") when `a` is not coherent.
std::vector<LowerCopyWitness> coherence_witnesses(const ModelPool& pool, const Family& a);

/// Members of A that are members of M. Throws PreconditionError("coherent")
/// and PostconditionError("coherent").
Family restrict(const ModelPool& pool, const Family& a, ModelId m);

/// A together with M, for A coherent with every member inside M.
/// Throws PreconditionError("coherent"), PreconditionError("inside") and
/// PostconditionError("coherent").
Family extend_with_model(const ModelPool& pool, const Family& a, ModelId m);

/// A together with a pairwise strongly isomorphic adequate family, each of
/// whose members contains all of A. Throws PreconditionError("coherent"),
/// PreconditionError("strongly-isomorphic"), PreconditionError("adequate"),
/// PreconditionError("inside") and PostconditionError("coherent").
Family extend_with_family(const ModelPool& pool, const Family& a, const Family& ms);

/// In a coherent set the relations are read off the omega1-traces:
/// SIM, equal omega1-traces, isomorphic and strongly isomorphic coincide, and
/// LT matches a shorter omega1-trace. Returns the first offending pair.
std::optional<std::pair<ModelId, ModelId>> check_equivalences(const ModelPool& pool, const Family& a);

/// For M <= N in a coherent set, every set of ordinals below the comparison
/// point that is a member of M is a member of N. Returns the first failure
/// as (M, N).
std::optional<std::pair<ModelId, ModelId>> check_low_sets(const ModelPool& pool, const Family& a);

/// Models of the pool isomorphic to `m` (including `m`).
Family copies_in(const ModelPool& pool, const Family& a, ModelId m);

}  // namespace adq

#endif  // ADQ_COHERENCE_HPP
