#ifndef ADQ_TESTS_ORACLE_HPP
#define ADQ_TESTS_ORACLE_HPP

// Brute-force evaluation of the calculus on plain ordinal sets, written
// without the library so fixture values have a second source. A model is
// its trace plus the ordinal sets it holds as members.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using Ords = std::set<int>;

struct Toy {
  Ords lambda;
  Ords s;
  int omega1 = 0;
};

struct ToyModel {
  Ords trace;
  std::set<Ords> sets;  // ordinal sets that are members
};

inline int sup_below(const Ords& t, int bound) {
  int best = 0;
  for (int x : t)
    if (x < bound) best = x;
  return best;
}

/// beta in Lambda with beta = min(Lambda minus sup(t & beta)).
inline Ords lambda_points(const Toy& u, const Ords& t) {
  Ords out;
  for (int beta : u.lambda) {
    int s = sup_below(t, beta);
    int least = -1;
    for (int l : u.lambda)
      if (l >= s) {
        least = l;
        break;
      }
    if (least == beta) out.insert(beta);
  }
  return out;
}

inline std::optional<int> comparison_point(const Toy& u, const Ords& a, const Ords& b) {
  Ords la = lambda_points(u, a), lb = lambda_points(u, b);
  std::optional<int> best;
  for (int x : la)
    if (lb.count(x)) best = x;
  return best;
}

inline Ords below(const Ords& t, int bound) {
  Ords out;
  for (int x : t)
    if (x < bound) out.insert(x);
  return out;
}

enum class Rel { Lt, Sim, Gt, None };

inline Rel relation(const Toy& u, const ToyModel& m, const ToyModel& n) {
  int beta = *comparison_point(u, m.trace, n.trace);
  Ords mb = below(m.trace, beta), nb = below(n.trace, beta);
  if (mb == nb) return Rel::Sim;
  if (n.sets.count(mb)) return Rel::Lt;
  if (m.sets.count(nb)) return Rel::Gt;
  return Rel::None;
}

inline std::optional<int> min_from(const Ords& t, int from) {
  auto it = t.lower_bound(from);
  if (it == t.end()) return std::nullopt;
  return *it;
}

/// R_M(N). With `literal` the first clause fires whenever N <= M; without
/// it only when the traces agree below the comparison point.
inline Ords remainder(const Toy& u, const ToyModel& m, const ToyModel& n, bool literal = true) {
  int beta = *comparison_point(u, m.trace, n.trace);
  Rel r = relation(u, m, n);
  Ords out;
  bool first = literal ? (r == Rel::Gt || r == Rel::Sim) : r == Rel::Sim;
  if (first)
    if (auto z = min_from(n.trace, beta)) out.insert(*z);
  for (int g : m.trace)
    if (g >= beta)
      if (auto z = min_from(n.trace, g)) out.insert(*z);
  return out;
}

inline unsigned flags(const Toy& u, int x) {
  return (x < u.omega1 ? 1u : 0u) | (x == u.omega1 ? 2u : 0u) | (u.lambda.count(x) ? 4u : 0u) |
         (u.s.count(x) ? 8u : 0u);
}

/// The order-preserving map of traces when it respects the ordinal flags
/// and carries member sets onto member sets.
inline std::optional<std::map<int, int>> isomorphism(const Toy& u, const ToyModel& m, const ToyModel& n) {
  if (m.trace.size() != n.trace.size() || m.sets.size() != n.sets.size()) return std::nullopt;
  std::map<int, int> sigma;
  auto a = m.trace.begin();
  for (auto b = n.trace.begin(); b != n.trace.end(); ++a, ++b) {
    if (flags(u, *a) != flags(u, *b)) return std::nullopt;
    sigma[*a] = *b;
  }
  for (const Ords& s : m.sets) {
    Ords image;
    for (int x : s) image.insert(sigma.at(x));
    if (!n.sets.count(image)) return std::nullopt;
  }
  return sigma;
}

}  // namespace oracle

#endif  // ADQ_TESTS_ORACLE_HPP
