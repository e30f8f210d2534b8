#ifndef ADQ_REFERENCE_HPP
#define ADQ_REFERENCE_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "adq/element.hpp"
#include "adq/universe.hpp"

// Straight-from-the-definitions versions of the calculus and of the two
// poset validators. Nothing here calls the optimized modules; the harness
// and the tests compare the two.
namespace adq::reference {

std::set<int> lambda_points(const Universe& u, const std::set<int>& trace);
/// Largest common lambda point; empty if there is none.
std::optional<int> comparison_point(const Universe& u, const std::set<int>& t1, const std::set<int>& t2);

std::set<int> trace_of(const Element& model);

enum class Rel { Lt, Sim, Gt, None };
Rel relation(const Universe& u, const Element& m, const Element& n);

/// Points of N over M. `literal`: the first clause fires whenever N <= M;
/// otherwise only when the two agree below the comparison point.
std::set<int> remainder(const Universe& u, const Element& m, const Element& n, bool literal = true);

/// The order-preserving ordinal map from M onto N, if it carries every
/// member of M onto a member of N with the same flags and onto all of N.
std::optional<std::map<int, int>> isomorphism(const Universe& u, const Element& m, const Element& n);
bool strongly_isomorphic(const Universe& u, const Element& m, const Element& n);
Element image(const std::map<int, int>& sigma, const Element& a);

bool coherent(const Universe& u, const std::vector<Element>& side);
std::set<int> remainder_points(const Universe& u, const std::vector<Element>& side);

/// Failing clause numbers of a club condition (pairs) or square condition
/// (triples), with the side set given by its models.
std::set<int> club_clauses(const Universe& u, const std::vector<Element>& x, const std::vector<Element>& side);
std::set<int> square_clauses(const Universe& u, const std::vector<Element>& x, const std::vector<Element>& side);

}  // namespace adq::reference

#endif  // ADQ_REFERENCE_HPP
