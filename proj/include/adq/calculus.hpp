#ifndef ADQ_CALCULUS_HPP
#define ADQ_CALCULUS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adq/model.hpp"
#include "adq/universe.hpp"

namespace adq {

enum class Relation { LT, SIM, GT, NONE };

const char* to_string(Relation r);
Relation flip(Relation r);

/// Lambda points beta with beta = min(lambda \ sup(trace & beta)).
std::vector<int> lambda_set(const Universe& u, const std::vector<int>& trace);
inline std::vector<int> lambda_set(const Universe& u, const Model& m) { return lambda_set(u, m.trace()); }

/// Largest common point of the two lambda sets.
int comparison_point(const Universe& u, const std::vector<int>& t1, const std::vector<int>& t2);
inline int comparison_point(const Universe& u, const Model& m, const Model& n) {
  return comparison_point(u, m.trace(), n.trace());
}

/// Sorted members of `trace` below `bound`.
std::vector<int> below(const std::vector<int>& trace, int bound);
/// Least member of `trace` that is >= `from`.
std::optional<int> min_from(const std::vector<int>& trace, int from);

/// LT when the ordinals of M below the comparison point form a set that is
/// a member of N, SIM when both models agree below it, GT symmetric, else
/// NONE. SIM is tested first, then LT, then GT.
Relation relate(const Universe& u, const Model& m, const Model& n);
Relation relate(const ModelPool& pool, ModelId m, ModelId n);

/// True when N <= M, i.e. relate(M, N) is GT or SIM.
bool leq(const ModelPool& pool, ModelId n, ModelId m);

/// Remainder points of N over M. Throws PreconditionError("adequate-pair")
/// if the pair is incomparable.
std::vector<int> remainder(const Universe& u, const Model& m, const Model& n);
std::vector<int> remainder(const ModelPool& pool, ModelId m, ModelId n);

struct PairData {
  int beta = 0;
  Relation relation = Relation::NONE;
  std::vector<int> r_mn;  // points of N over M
  std::vector<int> r_nm;  // points of M over N
};
PairData compare(const ModelPool& pool, ModelId m, ModelId n);

/// First incomparable pair, if any.
std::optional<std::pair<ModelId, ModelId>> first_incomparable(const ModelPool& pool, const Family& a);
inline bool is_adequate(const ModelPool& pool, const Family& a) { return !first_incomparable(pool, a); }

/// Union of the remainder sets over all ordered pairs of an adequate family.
std::vector<int> remainder_union(const ModelPool& pool, const Family& a);

struct SOffender {
  ModelId m = 0;
  ModelId n = 0;
  int zeta = 0;  // a point of R_m(n) outside s
};
struct SAdequacy {
  bool ok = true;
  std::optional<std::pair<ModelId, ModelId>> incomparable;
  std::optional<SOffender> offender;
};
SAdequacy check_s_adequate(const ModelPool& pool, const Family& a);

}  // namespace adq

#endif  // ADQ_CALCULUS_HPP
