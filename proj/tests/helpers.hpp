#ifndef ADQ_TESTS_HELPERS_HPP
#define ADQ_TESTS_HELPERS_HPP

#include <string>
#include <vector>

#include "adq/model.hpp"
#include "adq/scenario.hpp"
#include "adq/text.hpp"
#include "oracle.hpp"

namespace testing {

inline adq::Universe u0() { return adq::standard_universe(12); }

/// U0 pool from (name, elems-text) pairs.
inline adq::ModelPool pool_of(const std::vector<std::pair<std::string, std::string>>& models) {
  std::string text = "(pool " + adq::serialize(u0());
  for (const auto& [name, elems] : models) text += " (model :name " + name + " :elems (" + elems + "))";
  return adq::parse_pool(text + ")");
}

inline oracle::Toy toy_u0() { return {{2, 5, 8, 11}, {0, 1, 2, 4, 5, 6, 7, 9, 10}, 2}; }

}  // namespace testing

#endif  // ADQ_TESTS_HELPERS_HPP
