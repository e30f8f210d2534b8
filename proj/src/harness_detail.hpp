#ifndef ADQ_SRC_HARNESS_DETAIL_HPP
#define ADQ_SRC_HARNESS_DETAIL_HPP

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "adq/element.hpp"
#include "adq/harness.hpp"
#include "adq/model.hpp"

namespace adq::detail {

/// Thrown by a check whose instance does not meet the property's hypotheses.
struct Vacuous {};

using Check = std::function<std::optional<std::string>(const Witness&)>;

class Context {
 public:
  Context(const Bounds& b, std::uint64_t seed, const ModelPool* fixture, PropertyReport& report, const Check& check,
          std::optional<std::vector<Scenario>>& cache)
      : bounds(b), seed(seed), fixture(fixture), report_(report), check_(check), cache_(cache) {}

  const Bounds bounds;
  const std::uint64_t seed;
  const ModelPool* fixture;

  void pass() { ++report_.count; }
  /// Records a failing instance; the detail comes from replaying it.
  void fail(Witness w);
  /// Runs the property check on a witness and records the outcome.
  void run(Witness w);
  void set_expected(std::size_t n) { report_.expected = n; }
  std::size_t count() const { return report_.count; }
  std::mt19937_64 rng(std::uint64_t salt) const { return std::mt19937_64(seed * 0x9E3779B97F4A7C15ull + salt); }

  /// Well-formed generated pools (or just the fixture).
  const std::vector<ModelPool>& pools();
  /// Generated scenarios; empty when a fixture is set.
  const std::vector<Scenario>& scenarios();

 private:
  PropertyReport& report_;
  const Check& check_;
  std::optional<std::vector<Scenario>>& cache_;  // shared by the properties of one run
  std::optional<std::vector<ModelPool>> pools_;
};

struct Property {
  PropertyInfo info;
  bool exhaustive = false;
  std::function<void(Context&)> run;
  Check check;
};

void add_core_properties(std::vector<Property>& out);
void add_iso_properties(std::vector<Property>& out);
void add_coherence_properties(std::vector<Property>& out);
void add_amalgam_properties(std::vector<Property>& out);
void add_poset_properties(std::vector<Property>& out);

// Argument helpers shared by the property files.
std::string arg(const std::vector<int>& ordinals);
std::string arg(const Element& e);
std::string arg(int n);
std::vector<int> ordinals_arg(const Witness& w, std::size_t i);
Element element_arg(const Witness& w, std::size_t i);
int int_arg(const Witness& w, std::size_t i);
ModelId model_arg(const Witness& w, std::size_t i);
Family family_arg(const Witness& w, std::size_t i);
std::string names_arg(const ModelPool& pool, const Family& f);
std::string elements_text(const std::vector<Element>& x);
std::vector<Element> elements_arg(const Witness& w, std::size_t i);

/// Universe-level strong isomorphism of two models.
bool strong_iso(const Universe& u, const Model& m, const Model& n);

/// Subsets of `all` of size in [1, max_size], in lexicographic order,
/// followed by up to `extra` seeded random larger ones.
std::vector<Family> small_subsets(const Family& all, std::size_t max_size, std::size_t extra, std::mt19937_64& rng);

}  // namespace adq::detail

#endif  // ADQ_SRC_HARNESS_DETAIL_HPP
