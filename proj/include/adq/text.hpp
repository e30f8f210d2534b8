#ifndef ADQ_TEXT_HPP
#define ADQ_TEXT_HPP

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "adq/condition.hpp"
#include "adq/element.hpp"
#include "adq/model.hpp"
#include "adq/sexpr.hpp"
#include "adq/universe.hpp"

namespace adq {

// Canonical text form. Grammar:
//   element  := INT | (set element*) | (tuple element*) | @NAME
//   universe := (universe :theta INT :omega1 INT :lambda (INT*) :s (INT*)
//                [:y ((NAME element*)*)])
//   model    := (model :name NAME :elems (element*))
//   pool     := (pool [:unchecked] universe model*)
//               :unchecked admits models reaching max(lambda)
//   cond     := (cond :x (element*) :a (NAME*))

std::string serialize(const Element& e);
std::string serialize(const Universe& u);
std::string serialize(const Model& m);
/// One form per line, models in registration order.
std::string serialize(const ModelPool& pool);
std::string serialize(const Condition& c, const ModelPool& pool);
std::string serialize_ordinals(const std::vector<int>& v);
std::string serialize_names(const std::vector<std::string>& names);

using RefResolver = std::function<Element(const SExpr& ref)>;

Element element_from(const SExpr& s, const RefResolver& refs = {});
Universe universe_from(const SExpr& s);
Model model_from(const SExpr& s, const Universe& u, const RefResolver& refs = {});
ModelPool pool_from(const SExpr& s);
Condition condition_from(const SExpr& s, const ModelPool& pool);
std::vector<int> ordinals_from(const SExpr& list);
std::vector<std::string> names_from(const SExpr& list);

Element parse_element(std::string_view text);
Universe parse_universe(std::string_view text);
/// Validates the model against `u`; violations raise InvariantError.
Model parse_model(std::string_view text, const Universe& u);
ModelPool parse_pool(std::string_view text);
Condition parse_condition(std::string_view text, const ModelPool& pool);

}  // namespace adq

#endif  // ADQ_TEXT_HPP
