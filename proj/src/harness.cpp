#include "adq/harness.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

#include "adq/errors.hpp"
#include "adq/iso.hpp"
#include "adq/text.hpp"
#include "harness_detail.hpp"

namespace adq {

const char* to_string(Tier t) { return t == Tier::Theorem ? "THEOREM" : "AXIOM-CONDITIONAL"; }

namespace {

std::string to_text(const SExpr& s) {
  switch (s.type) {
    case SExpr::Type::Int:
      return std::to_string(s.number);
    case SExpr::Type::Symbol:
      return s.text;
    case SExpr::Type::Keyword:
      return ":" + s.text;
    case SExpr::Type::Ref:
      return "@" + s.text;
    case SExpr::Type::List: {
      std::string out = "(";
      for (std::size_t i = 0; i < s.list.size(); ++i) out += (i ? " " : "") + to_text(s.list[i]);
      return out + ")";
    }
  }
  return {};
}

const std::vector<detail::Property>& registry() {
  static const std::vector<detail::Property> props = [] {
    std::vector<detail::Property> out;
    detail::add_core_properties(out);
    detail::add_iso_properties(out);
    detail::add_coherence_properties(out);
    detail::add_amalgam_properties(out);
    detail::add_poset_properties(out);
    return out;
  }();
  return props;
}

std::size_t choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Sums f(lower, upper) over trace shapes: `lower` ordinals below omega1
/// (an initial segment) and `upper` ordinals in [omega1, max lambda).
template <class F>
std::size_t sum_over_shapes(const Universe& u, int max_trace, F f) {
  std::size_t upper_room = static_cast<std::size_t>(u.max_lambda() - u.omega1());
  std::size_t total = 0;
  for (int j = 0; j <= u.omega1() && j <= max_trace; ++j)
    for (int s = 0; j + s <= max_trace && static_cast<std::size_t>(s) <= upper_room; ++s)
      total += choose(upper_room, s) * f(static_cast<std::size_t>(j), static_cast<std::size_t>(s));
  return total;
}

}  // namespace

std::string serialize(const Witness& w) {
  std::ostringstream os;
  os << "(witness :property " << w.property << " :args (";
  for (std::size_t i = 0; i < w.args.size(); ++i) os << (i ? " " : "") << w.args[i];
  os << ")\n :pool " << serialize(w.pool) << ")";
  return os.str();
}

Witness witness_from(const SExpr& s) {
  FormArgs args(s, "witness");
  Witness w;
  w.property = args.get_name("property");
  for (const SExpr& a : args.get_list("args").list) w.args.push_back(to_text(a));
  w.pool = pool_from(args.get("pool"));
  return w;
}

std::vector<PropertyInfo> properties() {
  std::vector<PropertyInfo> out;
  for (const auto& p : registry()) out.push_back(p.info);
  return out;
}

std::vector<std::string> suite_names() {
  return {"core-lemmas", "iso-lemmas", "coherence", "amalgam", "square", "club", "all"};
}

std::vector<PropertyReport> run_suite(const std::string& suite, const Bounds& bounds, std::uint64_t seed,
                                      const ModelPool* fixture) {
  auto names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw PreconditionError("suite", "unknown suite '" + suite + "'");
  std::vector<PropertyReport> out;
  std::optional<std::vector<Scenario>> cache;
  for (const auto& p : registry()) {
    if (suite != "all" && p.info.suite != suite) continue;
    if (p.exhaustive && !bounds.exhaustive) continue;
    PropertyReport r;
    r.id = p.info.id;
    r.suite = p.info.suite;
    r.tier = p.info.tier;
    r.exhaustive = p.exhaustive;
    detail::Context ctx(bounds, seed, fixture, r, p.check, cache);
    auto start = std::chrono::steady_clock::now();
    p.run(ctx);
    r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::sort(r.failures.begin(), r.failures.end(), [](const Failure& a, const Failure& b) { return a.witness < b.witness; });
    if (r.failures.size() > 20) r.failures.resize(20);
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

std::string comment_lines(const std::string& text) {
  std::string out = "; ";
  for (char c : text) {
    out += c;
    if (c == '\n') out += "; ";
  }
  return out;
}

}  // namespace

std::string report_text(const std::vector<PropertyReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << "(report :property " << r.id << " :suite " << r.suite << " :tier " << to_string(r.tier) << " :mode "
       << (r.exhaustive ? "exhaustive" : "sampled") << " :instances " << r.count;
    if (r.expected) os << " :expected " << *r.expected;
    os << " :failures " << r.failure_count << ")\n";
    for (const auto& f : r.failures) os << comment_lines(f.detail) << "\n" << f.witness << "\n";
  }
  return os.str();
}

std::string report_summary(const std::vector<PropertyReport>& reports) {
  std::ostringstream os;
  std::size_t bad = 0;
  for (const auto& r : reports) {
    bool count_ok = !r.expected || *r.expected == r.count;
    bool ok = r.failure_count == 0 && count_ok;
    if (!ok) ++bad;
    os << (ok ? "PASS " : "FAIL ") << r.id << " [" << to_string(r.tier) << ", "
       << (r.exhaustive ? "exhaustive" : "sampled") << "] " << r.count << " instances";
    if (r.expected) os << " (expected " << *r.expected << ")";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", r.elapsed);
    os << ", " << r.failure_count << " failures, " << buf << "\n";
  }
  os << reports.size() - bad << "/" << reports.size() << " properties passed\n";
  return os.str();
}

Replay replay(const Witness& w) {
  for (const auto& p : registry()) {
    if (p.info.id != w.property) continue;
    Replay r;
    try {
      if (auto d = p.check(w)) {
        r.failed = true;
        r.detail = *d;
      }
    } catch (const detail::Vacuous&) {
      r.detail = "the instance does not meet the hypotheses";
    }
    return r;
  }
  throw PreconditionError("property", "unknown property '" + w.property + "'");
}

std::size_t trace_count(const Universe& u, int max_trace) {
  return sum_over_shapes(u, max_trace, [](std::size_t, std::size_t) { return std::size_t{1}; });
}

std::size_t subtrace_pair_count(const Universe& u, int max_trace) {
  return sum_over_shapes(u, max_trace, [](std::size_t j, std::size_t s) { return (j + 1) << s; });
}

std::size_t shape_count(const Universe& u, int max_trace) {
  return sum_over_shapes(u, max_trace, [](std::size_t j, std::size_t s) { return 1 + (std::size_t{1} << (j + s)); });
}

std::vector<std::vector<int>> enumerate_traces(const Universe& u, int max_trace) {
  std::vector<int> upper;
  for (int x = u.omega1(); x < u.max_lambda(); ++x) upper.push_back(x);
  std::vector<std::vector<int>> out;
  for (int j = 0; j <= u.omega1() && j <= max_trace; ++j) {
    std::vector<int> low;
    for (int x = 0; x < j; ++x) low.push_back(x);
    int room = max_trace - j;
    std::vector<int> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      std::vector<int> t = low;
      t.insert(t.end(), pick.begin(), pick.end());
      out.push_back(t);
      if (static_cast<int>(pick.size()) == room) return;
      for (std::size_t i = from; i < upper.size(); ++i) {
        pick.push_back(upper[i]);
        rec(i + 1);
        pick.pop_back();
      }
    };
    rec(0);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::optional<Scenario> random_scenario(std::mt19937_64& rng, int copies, int theta_min, int theta_max) {
  Universe u = random_universe(rng, theta_min, theta_max);
  int want = std::uniform_int_distribution<int>(std::min(2, copies), std::max(1, copies))(rng);
  Template t;
  std::vector<std::vector<int>> placements;
  // templates that admit no second placement are redrawn a few times
  for (int draw = 0; draw < 5 && placements.size() < 2; ++draw) {
    t = random_template(u, rng);
    placements = {t.tail};
    for (int i = 0; i < 3 * want && static_cast<int>(placements.size()) < want; ++i)
      if (auto p = sample_placement(u, t, placements, rng)) placements.push_back(*p);
  }
  Saturation s = saturate(u, instantiate(u, t, placements), 6);
  if (!s.ok()) return std::nullopt;
  return Scenario{std::move(t), std::move(placements), std::move(*s.pool)};
}

namespace detail {

void Context::fail(Witness w) {
  ++report_.count;
  ++report_.failure_count;
  if (report_.failures.size() >= 200) return;
  std::optional<std::string> d;
  try {
    d = check_(w);
  } catch (const Vacuous&) {
  }
  report_.failures.push_back({serialize(w), d ? *d : std::string("instance failed but does not replay")});
}

void Context::run(Witness w) {
  std::optional<std::string> d;
  try {
    d = check_(w);
  } catch (const Vacuous&) {
    return;
  }
  if (!d) {
    pass();
    return;
  }
  ++report_.count;
  ++report_.failure_count;
  if (report_.failures.size() < 200) report_.failures.push_back({serialize(w), *d});
}

const std::vector<Scenario>& Context::scenarios() {
  if (!cache_) {
    cache_.emplace();
    if (!fixture) {
      std::mt19937_64 r = rng(0x5CE7A);
      for (int tries = 0; static_cast<int>(cache_->size()) < bounds.samples && tries < bounds.samples * 20; ++tries)
        if (auto s = random_scenario(r, bounds.max_models)) cache_->push_back(std::move(*s));
    }
  }
  return *cache_;
}

const std::vector<ModelPool>& Context::pools() {
  if (!pools_) {
    pools_.emplace();
    if (fixture)
      pools_->push_back(*fixture);
    else
      for (const Scenario& s : scenarios()) pools_->push_back(s.pool);
  }
  return *pools_;
}

std::string arg(const std::vector<int>& ordinals) { return serialize_ordinals(ordinals); }
std::string arg(const Element& e) { return serialize(e); }
std::string arg(int n) { return std::to_string(n); }

std::vector<int> ordinals_arg(const Witness& w, std::size_t i) { return ordinals_from(read_sexpr(w.args.at(i))); }
Element element_arg(const Witness& w, std::size_t i) { return element_from(read_sexpr(w.args.at(i))); }
int int_arg(const Witness& w, std::size_t i) { return static_cast<int>(read_sexpr(w.args.at(i)).number); }
ModelId model_arg(const Witness& w, std::size_t i) { return w.pool.id(read_sexpr(w.args.at(i)).text); }
Family family_arg(const Witness& w, std::size_t i) { return make_family(w.pool.ids(names_from(read_sexpr(w.args.at(i))))); }
std::string names_arg(const ModelPool& pool, const Family& f) { return serialize_names(pool.names(f)); }

std::string elements_text(const std::vector<Element>& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) out += (i ? " " : "") + serialize(x[i]);
  return out + ")";
}

std::vector<Element> elements_arg(const Witness& w, std::size_t i) {
  std::vector<Element> out;
  for (const SExpr& e : read_sexpr(w.args.at(i)).list) out.push_back(element_from(e));
  return out;
}

bool strong_iso(const Universe& u, const Model& m, const Model& n) {
  auto s = iso(u, m, n);
  if (!s) return false;
  for (const Element& a : m.elems().items())
    if (n.elems().has_member(a) && s->apply(a) != a) return false;
  return true;
}

std::vector<Family> small_subsets(const Family& all, std::size_t max_size, std::size_t extra, std::mt19937_64& rng) {
  std::vector<Family> out;
  Family pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!pick.empty()) out.push_back(pick);
    if (pick.size() == max_size) return;
    for (std::size_t i = from; i < all.size(); ++i) {
      pick.push_back(all[i]);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  if (all.size() > max_size) {
    std::set<Family> seen(out.begin(), out.end());
    for (std::size_t i = 0; i < extra * 4 && extra > 0; ++i) {
      Family f;
      for (ModelId m : all)
        if (std::bernoulli_distribution(0.5)(rng)) f.push_back(m);
      if (f.size() > max_size && seen.insert(f).second) {
        out.push_back(f);
        if (--extra == 0) break;
      }
    }
  }
  return out;
}

}  // namespace detail

}  // namespace adq

namespace adq {

std::optional<UncountableScenario> random_uncountable_scenario(std::mt19937_64& rng, int theta_min, int theta_max) {
  Universe u = random_universe(rng, theta_min, theta_max);
  Template t = random_template(u, rng);
  int beta = *u.lambda_at_least(t.prefix.back() + 1);
  std::vector<int> above;
  for (int l : u.lambda())
    if (l > beta) above.push_back(l);
  if (above.size() < 2) return std::nullopt;
  int hi = above[std::uniform_int_distribution<std::size_t>(0, above.size() - 2)(rng)];
  auto low = sample_placement(u, t, {}, rng, beta, hi);
  if (!low) return std::nullopt;
  int beta_star = *u.lambda_at_least(low->back() + 1);
  auto high = sample_placement(u, t, {*low}, rng, beta_star);
  if (!high) return std::nullopt;
  std::vector<std::vector<int>> placements{*low, *high};
  Saturation s = saturate(u, instantiate(u, t, placements), 6);
  if (!s.ok()) return std::nullopt;
  const ModelPool& pool = *s.pool;

  UncountableInput in;
  in.beta = beta;
  in.beta_star = beta_star;
  std::vector<std::string> names{t.name};
  for (const auto& m : t.members) names.push_back(m.name);
  for (const std::string& m : names) {
    // a member equal to an earlier one is stored under the earlier name
    auto upper_id = pool.find(placed_name(t, m, 1)), primed_id = pool.find(placed_name(t, m, 0));
    if (!upper_id || !primed_id) continue;
    ModelId upper = *upper_id, primed = *primed_id;
    in.a.push_back(upper);
    in.primed[upper] = primed;
    if (upper == primed) in.inside.push_back(upper);
  }
  in.a = make_family(in.a);
  in.inside = make_family(in.inside);
  return UncountableScenario{Scenario{std::move(t), std::move(placements), pool}, std::move(in)};
}

}  // namespace adq
