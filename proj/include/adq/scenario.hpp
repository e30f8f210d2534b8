#ifndef ADQ_SCENARIO_HPP
#define ADQ_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "adq/model.hpp"
#include "adq/sexpr.hpp"
#include "adq/universe.hpp"

namespace adq {

/// theta with lambda = {2, 5, 8, ...} below theta and s missing every
/// ordinal congruent to 3 mod 5 and the top lambda point. theta = 12 is U0.
Universe standard_universe(int theta);

/// Reference shape of a family of copies. The top model holds the prefix,
/// the tail and every member; members are listed inner first. Placements
/// move the tail and keep the prefix.
struct Template {
  struct Member {
    std::string name;
    std::vector<int> ords;
    std::vector<std::string> members;
    std::vector<std::vector<int>> sets;
  };
  std::string name = "N";
  std::vector<int> prefix;
  std::vector<int> tail;
  std::vector<Member> members;
  std::vector<std::vector<int>> sets;
};

/// Flag pattern by rank plus, for each rank, whether a lambda point lies
/// strictly between it and the previous rank (rank 0 looks down to 0).
struct TemplateProfile {
  std::vector<std::uint32_t> flags;
  std::vector<bool> lambda_gap;
  friend bool operator==(const TemplateProfile&, const TemplateProfile&) = default;
};

TemplateProfile profile_of(const Universe& u, const std::vector<int>& ordinals);

/// Throws PreconditionError("template") naming the first defect.
void check_template(const Universe& u, const Template& t);

/// Whether member `i` uses tail ordinals (directly or through its members).
bool member_moves(const Template& t, std::size_t i);
/// Name of a template model in placement `p`; shared models keep their name.
std::string placed_name(const Template& t, const std::string& model, std::size_t p);

/// Rejects placements that break the profile: PreconditionError
/// ("placement-size"), ("flags"), ("gap-profile"), ("prefix-cell") and
/// ("cells") when two placements share a lambda cell.
void check_placements(const Universe& u, const Template& t, const std::vector<std::vector<int>>& placements);

/// Registers every placed model; E-axioms are not checked.
ModelPool instantiate(const Universe& u, const Template& t, const std::vector<std::vector<int>>& placements);

/// instantiate followed by the E-axiom check. Throws
/// PostconditionError("well-formed") with the first violation.
ModelPool gen_template(const Universe& u, const Template& t, const std::vector<std::vector<int>>& placements);

/// Random tail with the reference profile, avoiding the lambda cells of
/// `taken` and staying in [lo, hi).
std::optional<std::vector<int>> sample_placement(const Universe& u, const Template& t,
                                                 const std::vector<std::vector<int>>& taken, std::mt19937_64& rng,
                                                 int lo = 0, int hi = -1);

/// Every model of the template is closed under "lambda point implies the
/// next template ordinal", and neither the prefix nor the tail ends on a
/// lambda point. No two placed models then share a top lambda point.
bool is_guarded(const Universe& u, const Template& t);

/// Adds the comparison points and membership witnesses that the reference
/// placement is missing, keeping the template guarded. Empty if `rounds`
/// passes do not settle it.
std::optional<Template> complete_template(const Universe& u, Template t, int rounds = 6);

struct RandomShape {
  int prefix_extra = 3;  // prefix points above omega1, at most
  int tail_max = 3;
  int members_max = 3;
};
/// Guarded random template.
Template random_template(const Universe& u, std::mt19937_64& rng, const RandomShape& shape = {});

/// Random universe with lambda cofinal below theta and omega1 a lambda point.
Universe random_universe(std::mt19937_64& rng, int theta_min = 18, int theta_max = 30);

struct Saturation {
  std::optional<ModelPool> pool;  // well-formed on success
  int rounds = 0;
  std::vector<std::string> added;
  std::string failure;  // axiom and detail when pool is empty
  bool ok() const { return pool.has_value(); }
};

/// Repeatedly adds missing membership witnesses for pairs whose lower part
/// already sits in the larger trace, comparison points required by E2/E3
/// and unregistered images of member models. Fails when `depth` rounds do
/// not reach a well-formed pool or a violation cannot be repaired.
Saturation saturate(const Universe& u, const ModelPool& pool, int depth);

/// Canonical text: (template :name N :prefix (..) :tail (..)
///   :members ((member :name K :ords (..) :members (..) :sets ((..)..))..)
///   :sets ((..)..) [:placements ((..)..)]).
std::string serialize(const Template& t, const std::vector<std::vector<int>>& placements = {});
Template template_from(const SExpr& s, std::vector<std::vector<int>>* placements = nullptr);

}  // namespace adq

#endif  // ADQ_SCENARIO_HPP
