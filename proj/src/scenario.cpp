#include "adq/scenario.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "adq/axioms.hpp"
#include "adq/calculus.hpp"
#include "adq/errors.hpp"
#include "adq/iso.hpp"
#include "adq/text.hpp"

namespace adq {

Universe standard_universe(int theta) {
  std::vector<int> lambda, s;
  for (int x = 2; x < theta; x += 3) lambda.push_back(x);
  if (lambda.empty()) throw PreconditionError("theta", "theta must exceed 2");
  for (int x = 0; x < theta; ++x)
    if (x % 5 != 3 && x != lambda.back()) s.push_back(x);
  return Universe(theta, 2, lambda, s);
}

namespace {

bool lambda_strictly_between(const Universe& u, int lo, int hi) {
  auto p = u.lambda_at_least(lo + 1);
  return p && *p < hi;
}

// Number of ordinals below omega1.
int omega1_part(const Universe& u, const std::vector<int>& ords) {
  return static_cast<int>(std::lower_bound(ords.begin(), ords.end(), u.omega1()) - ords.begin());
}

// A plain member whose elements are exactly the set s.
bool names_set(const Template::Member& k, const std::vector<int>& s) {
  return k.members.empty() && k.sets.empty() && k.ords == s;
}

int lambda_cell(const Universe& u, int x) {
  auto p = u.lambda_at_least(x);
  return p ? *p : u.theta();
}

std::vector<int> all_ordinals(const Template& t) {
  std::vector<int> out = t.prefix;
  out.insert(out.end(), t.tail.begin(), t.tail.end());
  return out;
}

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool sorted_unique(const std::vector<int>& v) { return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end(); }

/// Hereditary closure of `items` as a set.
Element closed_set(std::vector<Element> items) {
  std::set<Element> seen;
  std::vector<Element> stack = std::move(items);
  while (!stack.empty()) {
    Element e = stack.back();
    stack.pop_back();
    if (!seen.insert(e).second) continue;
    for (const Element& b : e.items()) stack.push_back(b);
  }
  return Element::set(std::vector<Element>(seen.begin(), seen.end()));
}

const Template::Member* find_member(const Template& t, const std::string& name) {
  for (const auto& m : t.members)
    if (m.name == name) return &m;
  return nullptr;
}

[[noreturn]] void bad_template(const std::string& detail) { throw PreconditionError("template", detail); }

}  // namespace

TemplateProfile profile_of(const Universe& u, const std::vector<int>& ordinals) {
  TemplateProfile p;
  int prev = -1;
  for (int x : ordinals) {
    p.flags.push_back(u.ord_flags(x) | (u.user_flags(Element::ord(x)) << 8));
    p.lambda_gap.push_back(lambda_strictly_between(u, prev, x));
    prev = x;
  }
  return p;
}

bool member_moves(const Template& t, std::size_t i) {
  const auto& m = t.members.at(i);
  for (int x : m.ords)
    if (std::binary_search(t.tail.begin(), t.tail.end(), x)) return true;
  for (const std::string& inner : m.members)
    for (std::size_t j = 0; j < i; ++j)
      if (t.members[j].name == inner && member_moves(t, j)) return true;
  return false;
}

std::string placed_name(const Template& t, const std::string& model, std::size_t p) {
  std::string suffix = std::to_string(p + 1);
  if (model == t.name) return model + suffix;
  for (std::size_t i = 0; i < t.members.size(); ++i)
    if (t.members[i].name == model) return member_moves(t, i) ? model + suffix : model;
  throw PreconditionError("template", "unknown template model '" + model + "'");
}

void check_template(const Universe& u, const Template& t) {
  if (t.prefix.empty()) bad_template("the prefix is empty");
  if (!sorted_unique(t.prefix) || !sorted_unique(t.tail)) bad_template("prefix and tail must be increasing");
  if (!t.tail.empty() && t.tail.front() <= t.prefix.back()) bad_template("the tail must lie above the prefix");
  std::vector<int> all = all_ordinals(t);
  if (all.front() < 0 || all.back() >= u.max_lambda())
    bad_template("template ordinals must lie below the top lambda point");
  if (!t.tail.empty() && t.tail.front() < lambda_cell(u, t.prefix.back() + 1))
    bad_template("the tail starts inside the lambda cell of the prefix");
  std::set<std::string> seen{t.name};
  for (const auto& m : t.members) {
    if (!is_name_token(m.name) || !seen.insert(m.name).second) bad_template("bad or repeated name '" + m.name + "'");
    if (!sorted_unique(m.ords) || !subset(m.ords, all)) bad_template("ordinals of '" + m.name + "' are not template ordinals");
    for (const auto& s : m.sets) {
      if (!subset(s, m.ords)) bad_template("a set of '" + m.name + "' leaves its ordinals");
      for (const auto& k : t.members)
        if (&k != &m && names_set(k, s) && omega1_part(u, k.ords) >= omega1_part(u, m.ords))
          bad_template("a set of '" + m.name + "' is the model '" + k.name + "' without a drop below omega1");
    }
    if (omega1_part(u, m.ords) >= omega1_part(u, all))
      bad_template("'" + m.name + "' does not drop below omega1 inside '" + t.name + "'");
    for (const std::string& inner : m.members) {
      const Template::Member* k = find_member(t, inner);
      if (!k || k == &m || !seen.count(inner)) bad_template("'" + inner + "' must be declared before '" + m.name + "'");
      if (!subset(k->ords, m.ords)) bad_template("'" + inner + "' is not inside '" + m.name + "'");
      if (omega1_part(u, k->ords) >= omega1_part(u, m.ords))
        bad_template("'" + inner + "' does not drop below omega1 inside '" + m.name + "'");
    }
  }
  for (const auto& s : t.sets)
    if (!subset(s, all)) bad_template("a top set leaves the template ordinals");
  try {
    instantiate(u, t, {t.tail});
  } catch (const InvariantError& e) {
    bad_template(e.what());
  }
}

void check_placements(const Universe& u, const Template& t, const std::vector<std::vector<int>>& placements) {
  if (placements.empty()) throw PreconditionError("placement-size", "at least one placement is required");
  TemplateProfile ref = profile_of(u, all_ordinals(t));
  std::set<int> cells;
  int first_cell = lambda_cell(u, t.prefix.back() + 1);
  for (const auto& p : placements) {
    if (p.size() != t.tail.size() || !sorted_unique(p))
      throw PreconditionError("placement-size", serialize_ordinals(p) + " does not match the tail length");
    if (!p.empty() && (p.front() < first_cell || p.back() >= u.max_lambda()))
      throw PreconditionError("prefix-cell", serialize_ordinals(p) + " leaves the room above the prefix");
    std::vector<int> ords = t.prefix;
    ords.insert(ords.end(), p.begin(), p.end());
    TemplateProfile got = profile_of(u, ords);
    if (got.flags != ref.flags)
      throw PreconditionError("flags", serialize_ordinals(p) + " has a different flag pattern");
    if (got.lambda_gap != ref.lambda_gap)
      throw PreconditionError("gap-profile", serialize_ordinals(p) + " has a different lambda-gap profile");
    std::set<int> mine;
    for (int x : p) mine.insert(lambda_cell(u, x));
    for (int c : mine)
      if (!cells.insert(c).second)
        throw PreconditionError("cells", serialize_ordinals(p) + " shares the lambda cell below " + std::to_string(c));
  }
}

ModelPool instantiate(const Universe& u, const Template& t, const std::vector<std::vector<int>>& placements) {
  check_placements(u, t, placements);
  ModelPool pool(u);
  for (std::size_t p = 0; p < placements.size(); ++p) {
    std::map<int, int> move;
    for (int x : t.prefix) move[x] = x;
    for (std::size_t j = 0; j < t.tail.size(); ++j) move[t.tail[j]] = placements[p][j];
    auto ords = [&](const std::vector<int>& v) {
      std::vector<Element> out;
      for (int x : v) out.push_back(Element::ord(move.at(x)));
      return out;
    };
    auto set_of = [&](const std::vector<int>& v) {
      std::vector<int> out;
      for (int x : v) out.push_back(move.at(x));
      return Element::ord_set(out);
    };
    std::map<std::string, Element> built;
    // K in P puts every cut of K at a point of its lambda set into P
    std::map<std::string, std::vector<Element>> cuts;
    std::vector<Element> top = ords(all_ordinals(t));
    for (const auto& m : t.members) {
      std::vector<Element> items = ords(m.ords);
      for (const auto& s : m.sets) items.push_back(set_of(s));
      for (const std::string& inner : m.members) items.push_back(built.at(inner));
      Element e = closed_set(items);
      // members can also arrive as plain sets
      std::vector<Element>& own = cuts[m.name];
      for (const auto& [k, ke] : built)
        if (e.has_member(ke)) own.insert(own.end(), cuts.at(k).begin(), cuts.at(k).end());
      items.insert(items.end(), own.begin(), own.end());
      e = closed_set(std::move(items));
      built[m.name] = e;
      std::vector<int> trace = e.ordinals();
      for (int beta : lambda_set(u, trace)) own.push_back(Element::ord_set(below(trace, beta)));
      pool.add(placed_name(t, m.name, p), e);
      top.push_back(e);
      top.insert(top.end(), own.begin(), own.end());
    }
    for (const auto& s : t.sets) top.push_back(set_of(s));
    pool.add(placed_name(t, t.name, p), closed_set(std::move(top)));
  }
  return pool;
}

ModelPool gen_template(const Universe& u, const Template& t, const std::vector<std::vector<int>>& placements) {
  ModelPool pool = instantiate(u, t, placements);
  auto v = check_axioms(pool, 1);
  if (!v.empty()) throw PostconditionError("well-formed", describe(pool, v.front()));
  pool.set_well_formed(true);
  return pool;
}

std::optional<std::vector<int>> sample_placement(const Universe& u, const Template& t,
                                                 const std::vector<std::vector<int>>& taken, std::mt19937_64& rng,
                                                 int lo, int hi) {
  if (hi < 0) hi = u.max_lambda();
  hi = std::min(hi, u.max_lambda());
  TemplateProfile ref = profile_of(u, all_ordinals(t));
  std::set<int> cells;
  for (const auto& p : taken)
    for (int x : p) cells.insert(lambda_cell(u, x));
  const std::size_t base = t.prefix.size();
  const int first = std::max(lo, lambda_cell(u, t.prefix.back() + 1));
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<int> out;
    int prev = t.prefix.back();
    bool dead = false;
    for (std::size_t j = 0; j < t.tail.size() && !dead; ++j) {
      std::vector<int> cand;
      for (int v = std::max(prev + 1, first); v < hi && cand.size() < 5; ++v) {
        if (cells.count(lambda_cell(u, v))) continue;
        std::uint32_t f = u.ord_flags(v) | (u.user_flags(Element::ord(v)) << 8);
        if (f != ref.flags[base + j] || lambda_strictly_between(u, prev, v) != ref.lambda_gap[base + j]) continue;
        cand.push_back(v);
      }
      if (cand.empty()) {
        dead = true;
        break;
      }
      prev = cand[std::uniform_int_distribution<std::size_t>(0, cand.size() - 1)(rng)];
      out.push_back(prev);
    }
    if (!dead) return out;
  }
  return std::nullopt;
}

bool is_guarded(const Universe& u, const Template& t) {
  if (u.in_lambda(t.prefix.back())) return false;
  if (!t.tail.empty() && u.in_lambda(t.tail.back())) return false;
  std::vector<int> all = all_ordinals(t);
  auto guarded = [&](const std::vector<int>& ords) {
    for (int x : ords) {
      if (!u.in_lambda(x)) continue;
      auto it = std::upper_bound(all.begin(), all.end(), x);
      if (it == all.end() || !std::binary_search(ords.begin(), ords.end(), *it)) return false;
    }
    return true;
  };
  for (const auto& m : t.members)
    if (!guarded(m.ords)) return false;
  return true;
}

namespace {

template <class T>
T pick(std::mt19937_64& rng, T lo, T hi) {
  return std::uniform_int_distribution<T>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::vector<int> random_subset(std::mt19937_64& rng, const std::vector<int>& from, double p) {
  std::vector<int> out;
  for (int x : from)
    if (coin(rng, p)) out.push_back(x);
  return out;
}

/// Adds the next template ordinal after each lambda point until stable.
void guard_close(const Universe& u, const std::vector<int>& all, std::vector<int>& ords) {
  for (bool changed = true; changed;) {
    changed = false;
    for (int x : std::vector<int>(ords)) {
      if (!u.in_lambda(x)) continue;
      auto it = std::upper_bound(all.begin(), all.end(), x);
      if (it != all.end() && !std::binary_search(ords.begin(), ords.end(), *it)) {
        ords.insert(std::lower_bound(ords.begin(), ords.end(), *it), *it);
        changed = true;
      }
    }
  }
}

std::vector<int> merge(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::optional<Template> complete_template(const Universe& u, Template t, int rounds) {
  for (int round = 0; round <= rounds; ++round) {
    ModelPool pool(u);
    try {
      check_template(u, t);
      pool = instantiate(u, t, {t.tail});
    } catch (const PreconditionError&) {
      return std::nullopt;
    }
    // placed name -> template member index, or -1 for the top
    std::map<std::string, int> which;
    which[placed_name(t, t.name, 0)] = -1;
    for (std::size_t i = 0; i < t.members.size(); ++i) which[placed_name(t, t.members[i].name, 0)] = static_cast<int>(i);
    std::vector<std::pair<int, int>> need_ord;
    std::vector<std::pair<int, std::vector<int>>> need_set;
    const Family all = pool.all();
    for (ModelId m : all) {
      Family inner = pool.models_in(m);
      for (ModelId k : inner)
        for (ModelId l : inner) {
          int beta = comparison_point(u, pool[k], pool[l]);
          if (!pool[m].contains_ordinal(beta)) need_ord.emplace_back(which.at(pool[m].name()), beta);
        }
      for (ModelId n : all) {
        if (m == n) continue;
        int beta = comparison_point(u, pool[m], pool[n]);
        Relation r = relate(pool, m, n);
        std::vector<int> low = below(pool[m].trace(), beta);
        if (r == Relation::NONE && subset(low, pool[n].trace())) need_set.emplace_back(which.at(pool[n].name()), low);
        if (r == Relation::LT && !pool[n].contains_ordinal(beta)) need_ord.emplace_back(which.at(pool[n].name()), beta);
      }
    }
    if (need_ord.empty() && need_set.empty()) return is_guarded(u, t) ? std::optional<Template>(t) : std::nullopt;
    if (round == rounds) return std::nullopt;

    auto insert = [](std::vector<int>& v, int x) {
      auto it = std::lower_bound(v.begin(), v.end(), x);
      if (it == v.end() || *it != x) v.insert(it, x);
    };
    auto add_everywhere = [&](int idx, int beta) {
      // beta joins model idx and every model holding it
      std::vector<bool> hit(t.members.size(), false);
      if (idx >= 0) hit[idx] = true;
      for (std::size_t i = 0; i < t.members.size(); ++i)
        for (const std::string& inner : t.members[i].members)
          for (std::size_t j = 0; j < i; ++j)
            if (hit[j] && t.members[j].name == inner) hit[i] = true;
      for (std::size_t i = 0; i < t.members.size(); ++i)
        if (hit[i]) insert(t.members[i].ords, beta);
      if (t.tail.empty() || beta < t.tail.front())
        insert(t.prefix, beta);
      else
        insert(t.tail, beta);
    };
    for (auto [idx, beta] : need_ord) add_everywhere(idx, beta);
    for (auto& [idx, set] : need_set) {
      auto& sets = idx < 0 ? t.sets : t.members[idx].sets;
      if (std::find(sets.begin(), sets.end(), set) == sets.end()) sets.push_back(set);
    }
    // keep both regions ending off lambda
    auto push_off_lambda = [&](std::vector<int>& region, int limit) {
      while (!region.empty() && u.in_lambda(region.back())) {
        int next = region.back() + 1;
        if (next >= limit) return false;
        region.push_back(next);
      }
      return true;
    };
    if (!push_off_lambda(t.prefix, t.tail.empty() ? u.max_lambda() : t.tail.front())) return std::nullopt;
    if (!push_off_lambda(t.tail, u.max_lambda())) return std::nullopt;
    std::vector<int> every = all_ordinals(t);
    for (auto& m : t.members) guard_close(u, every, m.ords);
  }
  return std::nullopt;
}

Template random_template(const Universe& u, std::mt19937_64& rng, const RandomShape& shape) {
  const auto& lam = u.lambda();
  const int w1 = u.omega1();
  for (int attempt = 0;; ++attempt) {
    if (attempt > 1000) throw PreconditionError("room", "universe too small for a random template");
    Template t;
    for (int x = 0; x < w1; ++x) t.prefix.push_back(x);
    int roof = lam.size() > 3 ? lam[2] : lam.back() / 2;
    std::vector<int> pool;
    for (int x = w1; x < roof; ++x) pool.push_back(x);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(std::min<std::size_t>(pool.size(), pick(rng, 0, shape.prefix_extra)));
    std::sort(pool.begin(), pool.end());
    t.prefix = merge(t.prefix, pool);
    if (t.prefix.empty()) continue;
    if (u.in_lambda(t.prefix.back())) continue;

    int first = lambda_cell(u, t.prefix.back() + 1);
    std::vector<int> room;
    for (int x = first; x < std::min(first + 8, u.max_lambda()); ++x) room.push_back(x);
    t.tail = random_subset(rng, room, 0.3);
    if (t.tail.size() > static_cast<std::size_t>(shape.tail_max)) t.tail.resize(shape.tail_max);
    if (t.tail.empty() && !room.empty()) t.tail.push_back(room[pick<std::size_t>(rng, 0, room.size() - 1)]);
    if (t.tail.empty() || u.in_lambda(t.tail.back())) continue;

    std::vector<int> all = all_ordinals(t);
    std::vector<int> upper_prefix;
    for (int x : t.prefix)
      if (x >= w1) upper_prefix.push_back(x);
    int count = pick(rng, 0, shape.members_max);
    for (int i = 0; i < count; ++i) {
      Template::Member m;
      m.name = std::string(1, static_cast<char>('K' + i));
      // a member sees strictly fewer ordinals below omega1 than its container
      int low = pick(rng, 0, w1 - 1);
      for (int x = 0; x < low; ++x) m.ords.push_back(x);
      m.ords = merge(m.ords, random_subset(rng, upper_prefix, 0.5));
      if (coin(rng, 0.5)) {
        auto tail_part = random_subset(rng, t.tail, 0.5);
        if (tail_part.empty()) tail_part.push_back(t.tail.front());
        m.ords = merge(m.ords, tail_part);
      }
      if (!t.members.empty() && coin(rng, 0.35)) {
        const auto& inner = t.members[pick<std::size_t>(rng, 0, t.members.size() - 1)];
        if (omega1_part(u, inner.ords) < low) {
          m.members.push_back(inner.name);
          m.ords = merge(m.ords, inner.ords);
        }
      }
      guard_close(u, all, m.ords);
      // omega1 part must stay an initial segment
      std::vector<int> fixed;
      int below = 0;
      for (int x : m.ords)
        if (x < w1) ++below;
      for (int x = 0; x < below; ++x) fixed.push_back(x);
      for (int x : m.ords)
        if (x >= w1) fixed.push_back(x);
      m.ords = fixed;
      if (m.ords.empty()) continue;
      if (coin(rng, 0.3)) {
        auto s = random_subset(rng, m.ords, 0.5);
        if (!s.empty()) m.sets.push_back(s);
      }
      t.members.push_back(std::move(m));
    }
    // a set equal to another member makes that member an element
    for (auto& m : t.members)
      std::erase_if(m.sets, [&](const std::vector<int>& s) {
        return std::any_of(t.members.begin(), t.members.end(), [&](const Template::Member& k) {
          return &k != &m && names_set(k, s) && omega1_part(u, k.ords) >= omega1_part(u, m.ords);
        });
      });
    if (coin(rng, 0.3)) {
      auto s = random_subset(rng, t.prefix, 0.5);
      if (!s.empty()) t.sets.push_back(s);
    }
    if (!is_guarded(u, t)) continue;
    if (auto done = complete_template(u, t, 6)) return *done;
  }
}

Universe random_universe(std::mt19937_64& rng, int theta_min, int theta_max) {
  int theta = pick(rng, theta_min, theta_max);
  int w1 = pick(rng, 1, 3);
  std::vector<int> lambda{w1};
  while (true) {
    int next = lambda.back() + pick(rng, 2, 4);
    if (next >= theta - 1) break;
    lambda.push_back(next);
  }
  if (theta - 1 - lambda.back() < 2 && lambda.size() > 1) lambda.pop_back();
  lambda.push_back(theta - 1);
  std::vector<int> s{0};
  for (int x = 1; x < theta; ++x)
    if (coin(rng, 0.8)) s.push_back(x);
  return Universe(theta, w1, lambda, s);
}

namespace {

struct Sym {
  std::string name;
  std::vector<int> ords;
  std::vector<std::string> members;
  std::vector<Element> others;
};

std::vector<Sym> to_symbolic(const ModelPool& pool) {
  std::vector<Sym> out;
  for (ModelId id = 0; id < pool.size(); ++id) {
    const Model& m = pool[id];
    Sym s{m.name(), {}, {}, {}};
    for (const Element& e : m.elems().items()) {
      if (e.is_ord()) {
        s.ords.push_back(e.value());
      } else if (auto k = pool.find(e); k && *k != id) {
        s.members.push_back(pool[*k].name());
      } else {
        s.others.push_back(e);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// Builds the pool, merging symbolic models whose content coincides.
ModelPool materialize(const Universe& u, const std::vector<Sym>& syms) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < syms.size(); ++i) index[syms[i].name] = i;
  std::map<std::string, Element> built;
  std::function<Element(const std::string&, int)> build = [&](const std::string& name, int guard) -> Element {
    if (auto it = built.find(name); it != built.end()) return it->second;
    if (guard > 64) throw InvariantError("member-cycle", "model '" + name + "' contains itself");
    const Sym& s = syms.at(index.at(name));
    std::vector<Element> items;
    for (int x : s.ords) items.push_back(Element::ord(x));
    for (const Element& e : s.others) items.push_back(e);
    for (const std::string& k : s.members) items.push_back(build(k, guard + 1));
    Element e = closed_set(std::move(items));
    built[name] = e;
    return e;
  };
  ModelPool pool(u);
  for (const Sym& s : syms) pool.add(s.name, build(s.name, 0));
  return pool;
}

template <class T>
void add_unique(std::vector<T>& v, const T& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

}  // namespace

Saturation saturate(const Universe& u, const ModelPool& input, int depth) {
  if (depth < 0) throw PreconditionError("depth", "depth must be non-negative");
  if (!(input.universe() == u)) throw PreconditionError("universe", "the pool lives in a different universe");
  Saturation out;
  std::vector<Sym> syms = to_symbolic(input);
  for (int round = 0;; ++round) {
    ModelPool pool(u);
    try {
      pool = round == 0 ? input : materialize(u, syms);
    } catch (const InvariantError& e) {
      out.failure = std::string("model: ") + e.what();
      return out;
    }
    out.rounds = round;
    auto violations = check_axioms(pool, 1);
    if (violations.empty()) {
      pool.set_well_formed(true);
      out.pool = std::move(pool);
      return out;
    }
    if (round == depth) {
      out.failure = "depth " + std::to_string(depth) + " exhausted: " + describe(pool, violations.front());
      return out;
    }
    syms = to_symbolic(pool);
    std::map<std::string, std::size_t> at;
    for (std::size_t i = 0; i < syms.size(); ++i) at[syms[i].name] = i;
    bool changed = false;
    auto add_ord = [&](ModelId m, int beta, const char* why) {
      Sym& s = syms[at[pool[m].name()]];
      if (std::find(s.ords.begin(), s.ords.end(), beta) != s.ords.end()) return;
      s.ords.push_back(beta);
      out.added.push_back(std::string(why) + ": " + std::to_string(beta) + " into '" + s.name + "'");
      changed = true;
    };
    const Family all = pool.all();
    for (ModelId m : all) {
      for (ModelId n : all) {
        if (m == n) continue;
        int beta = comparison_point(u, pool[m], pool[n]);
        Relation r = relate(pool, m, n);
        std::vector<int> low = below(pool[m].trace(), beta);
        if (r == Relation::NONE && subset(low, pool[n].trace())) {
          Sym& s = syms[at[pool[n].name()]];
          Element w = Element::ord_set(low);
          if (std::find(s.others.begin(), s.others.end(), w) == s.others.end()) {
            s.others.push_back(w);
            out.added.push_back("witness " + serialize(w) + " into '" + s.name + "'");
            changed = true;
          }
        }
        if (r == Relation::LT && !pool[n].contains_ordinal(beta)) add_ord(n, beta, "comparison point");
      }
    }
    for (ModelId m : all) {
      Family inner = pool.models_in(m);
      for (ModelId k : inner)
        for (ModelId l : inner) {
          if (l < k) continue;
          int beta = comparison_point(u, pool[k], pool[l]);
          if (!pool[m].contains_ordinal(beta)) add_ord(m, beta, "member comparison point");
        }
    }
    std::set<Element> pending;
    for (ModelId m : all) {
      Family inner = pool.models_in(m);
      if (inner.empty()) continue;
      for (ModelId n : all) {
        if (n == m) continue;
        auto s = iso(pool, m, n);
        if (!s) continue;
        for (ModelId k : inner) {
          Element image = s->apply(pool[k].elems());
          if (pool.find(image) || !pending.insert(image).second) continue;
          Sym img{pool.fresh_name(pool[k].name() + "^" + pool[n].name()), {}, {}, {}};
          while (at.count(img.name)) img.name += "'";
          for (const Element& e : image.items()) {
            if (e.is_ord())
              img.ords.push_back(e.value());
            else if (auto id = pool.find(e))
              img.members.push_back(pool[*id].name());
            else
              img.others.push_back(e);
          }
          out.added.push_back("image '" + img.name + "' of '" + pool[k].name() + "'");
          at[img.name] = syms.size();
          syms.push_back(std::move(img));
          changed = true;
        }
      }
    }
    if (!changed) {
      out.failure = "cannot repair: " + describe(pool, violations.front());
      return out;
    }
  }
}

std::string serialize(const Template& t, const std::vector<std::vector<int>>& placements) {
  std::ostringstream os;
  auto sets = [&](const std::vector<std::vector<int>>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + serialize_ordinals(v[i]);
    return s + ")";
  };
  os << "(template :name " << t.name << " :prefix " << serialize_ordinals(t.prefix) << " :tail "
     << serialize_ordinals(t.tail) << " :members (";
  for (std::size_t i = 0; i < t.members.size(); ++i) {
    const auto& m = t.members[i];
    os << (i ? " " : "") << "(member :name " << m.name << " :ords " << serialize_ordinals(m.ords) << " :members "
       << serialize_names(m.members) << " :sets " << sets(m.sets) << ")";
  }
  os << ") :sets " << sets(t.sets);
  if (!placements.empty()) os << " :placements " << sets(placements);
  os << ")";
  return os.str();
}

Template template_from(const SExpr& s, std::vector<std::vector<int>>* placements) {
  FormArgs args(s, "template");
  auto sets = [](const SExpr& list) {
    std::vector<std::vector<int>> out;
    for (const SExpr& e : list.list) out.push_back(ordinals_from(e));
    return out;
  };
  Template t;
  if (args.find("name")) t.name = args.get_name("name");
  t.prefix = ordinals_from(args.get_list("prefix"));
  t.tail = ordinals_from(args.get_list("tail"));
  if (const SExpr* ms = args.find("members")) {
    for (const SExpr& f : ms->list) {
      FormArgs margs(f, "member");
      Template::Member m;
      m.name = margs.get_name("name");
      m.ords = ordinals_from(margs.get_list("ords"));
      if (margs.find("members")) m.members = names_from(margs.get_list("members"));
      if (margs.find("sets")) m.sets = sets(margs.get_list("sets"));
      t.members.push_back(std::move(m));
    }
  }
  if (args.find("sets")) t.sets = sets(args.get_list("sets"));
  if (placements) {
    placements->clear();
    if (args.find("placements")) *placements = sets(args.get_list("placements"));
  }
  return t;
}

}  // namespace adq
