#ifndef ADQ_HARNESS_HPP
#define ADQ_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "adq/amalgam.hpp"
#include "adq/model.hpp"
#include "adq/scenario.hpp"
#include "adq/sexpr.hpp"

namespace adq {

/// THEOREM properties hold for every input; AXIOM-CONDITIONAL ones are
/// expected only on pools that pass E1-E4.
enum class Tier { Theorem, AxiomConditional };
const char* to_string(Tier t);

struct Bounds {
  int theta = 12;
  int max_models = 3;  // top-level copies per generated scenario
  int max_trace = 4;
  bool exhaustive = true;  // false skips the exhaustively declared properties
  int samples = 200;  // seeded instances for sampled properties
};

/// A replayable instance: the property, the pool it lives in and the
/// remaining arguments as canonical text forms.
struct Witness {
  std::string property;
  ModelPool pool;
  std::vector<std::string> args;
};
std::string serialize(const Witness& w);
Witness witness_from(const SExpr& s);

struct Failure {
  std::string witness;  // serialized Witness
  std::string detail;
};

struct PropertyReport {
  std::string id;
  std::string suite;
  Tier tier = Tier::Theorem;
  bool exhaustive = false;
  std::size_t count = 0;
  std::optional<std::size_t> expected;  // closed-form size of the declared space
  std::size_t failure_count = 0;
  std::vector<Failure> failures;  // sorted by witness, capped
  double elapsed = 0;             // seconds; not part of the canonical text
};

struct PropertyInfo {
  std::string id;
  std::string suite;
  Tier tier;
  std::string summary;
};
std::vector<PropertyInfo> properties();
std::vector<std::string> suite_names();

/// Runs every property of `suite` ("all" selects everything). With a fixture
/// the pool-based properties run on it instead of generated pools. Throws
/// PreconditionError("suite") for unknown names.
std::vector<PropertyReport> run_suite(const std::string& suite, const Bounds& bounds, std::uint64_t seed,
                                      const ModelPool* fixture = nullptr);

/// Canonical, byte-for-byte reproducible report text.
std::string report_text(const std::vector<PropertyReport>& reports);
/// One line per property including elapsed time.
std::string report_summary(const std::vector<PropertyReport>& reports);

struct Replay {
  bool failed = false;
  std::string detail;
};
/// Re-runs a single witness. Throws PreconditionError("property") for an
/// unknown property.
Replay replay(const Witness& w);

/// Closed-form sizes of the exhaustive spaces.
std::size_t trace_count(const Universe& u, int max_trace);
std::size_t subtrace_pair_count(const Universe& u, int max_trace);
std::size_t shape_count(const Universe& u, int max_trace);

/// Every trace below max(lambda) of size at most max_trace whose part below
/// omega1 is an initial segment, in increasing order of size then content.
std::vector<std::vector<int>> enumerate_traces(const Universe& u, int max_trace);

/// A generated well-formed pool and the template it came from.
struct Scenario {
  Template shape;
  std::vector<std::vector<int>> placements;
  ModelPool pool;
};
/// Random universe, random guarded template, up to `copies` placements,
/// saturated. Empty when saturation fails.
std::optional<Scenario> random_scenario(std::mt19937_64& rng, int copies = 3, int theta_min = 24,
                                        int theta_max = 40);

/// Fixed pools over U0 used by the poset suites.
/// K = {0} inside N1 = {0,1,2,3,6,K} and N2 = {0,1,2,3,9,K}, from a template.
ModelPool sim_pair_pool();
/// K = {0} inside N1 = {0,1,2,4,7,K} and N2 = {0,1,2,4,10,K}.
ModelPool generic_pool();
/// The single model M = {0,1,4,7}.
ModelPool single_model_pool();

/// Two placements of one template for the uncountable amalgamation: the
/// primed copy sits in [beta, beta_star) and the other at or above beta_star.
/// The input maps the upper copy's models to the primed ones and fixes the
/// shared models.
struct UncountableScenario {
  Scenario base;
  UncountableInput input;
};
std::optional<UncountableScenario> random_uncountable_scenario(std::mt19937_64& rng, int theta_min = 24,
                                                               int theta_max = 40);

}  // namespace adq

#endif  // ADQ_HARNESS_HPP
