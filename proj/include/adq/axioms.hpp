#ifndef ADQ_AXIOMS_HPP
#define ADQ_AXIOMS_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "adq/model.hpp"

namespace adq {

// Finite stand-ins for what elementarity gives for free:
//   E1  trace(M) & trace(N) lies below the comparison point (M = N included).
//   E2  M < N puts the comparison point into trace(N).
//   E3  for member models K, L of M, beta(K,L) is in trace(M), and every
//       isomorphism out of M carries beta(K,L), the relation of K and L and
//       their remainder sets to those of the images.
//   E4  images of member models under pool isomorphisms are registered, and
//       strong isomorphisms carry members to strongly isomorphic copies.
struct AxiomViolation {
  std::string axiom;  // "E1" .. "E4"
  ModelId m = 0;
  ModelId n = 0;
  std::optional<ModelId> k;
  std::optional<ModelId> l;
  std::string detail;
};

std::vector<AxiomViolation> check_e1(const ModelPool& pool, std::size_t limit = 1);
std::vector<AxiomViolation> check_e2(const ModelPool& pool, std::size_t limit = 1);
std::vector<AxiomViolation> check_e3(const ModelPool& pool, std::size_t limit = 1);
std::vector<AxiomViolation> check_e4(const ModelPool& pool, std::size_t limit = 1);

/// All four axioms; stops after `limit` violations.
std::vector<AxiomViolation> check_axioms(const ModelPool& pool,
                                         std::size_t limit = std::numeric_limits<std::size_t>::max());

/// Runs check_axioms and records the verdict in the pool's well-formed flag.
bool mark_well_formed(ModelPool& pool);

std::string describe(const ModelPool& pool, const AxiomViolation& v);

}  // namespace adq

#endif  // ADQ_AXIOMS_HPP
