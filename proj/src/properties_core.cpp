#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "adq/amalgam.hpp"
#include "adq/calculus.hpp"
#include "adq/reference.hpp"
#include "adq/text.hpp"
#include "harness_detail.hpp"

namespace adq::detail {

namespace {

using Trace = std::vector<int>;

std::string show(const Trace& t) { return serialize_ordinals(t); }

// Every point of lambda_set(M) is reached from each lower lambda point.
std::optional<std::string> dense_failure(const Universe& u, const Trace& t) {
  for (int beta : lambda_set(u, t))
    for (int beta0 : u.lambda()) {
      if (beta0 >= beta) break;
      bool hit = std::any_of(t.begin(), t.end(), [&](int x) { return beta0 <= x && x < beta; });
      if (!hit)
        return "beta=" + std::to_string(beta) + " in lambda_M but M misses [" + std::to_string(beta0) + ", " +
               std::to_string(beta) + ")";
    }
  return std::nullopt;
}

std::optional<std::string> common_max_failure(const Universe& u, const Trace& m, const Trace& n) {
  Trace lm = lambda_set(u, m), ln = lambda_set(u, n), both;
  std::set_intersection(lm.begin(), lm.end(), ln.begin(), ln.end(), std::back_inserter(both));
  if (both.empty()) return "lambda_M and lambda_N are disjoint: " + show(lm) + " " + show(ln);
  if (comparison_point(u, m, n) != both.back())
    return "comparison point " + std::to_string(comparison_point(u, m, n)) + " is not the largest common point " +
           std::to_string(both.back());
  return std::nullopt;
}

std::optional<std::string> bound_failure(const Universe& u, const Trace& m, const Trace& n) {
  int b = comparison_point(u, m, n);
  for (int beta : u.lambda())
    if ((m.empty() || m.back() < beta) && b > beta)
      return "M is below " + std::to_string(beta) + " but the comparison point is " + std::to_string(b);
  return std::nullopt;
}

Element with_witness(const Trace& t, const std::optional<Trace>& extra) {
  std::vector<Element> items;
  for (int x : t) items.push_back(Element::ord(x));
  if (extra) items.push_back(Element::ord_set(*extra));
  return Element::set(items);
}

// M and N as elements: plain, or with the other's lower part as a member
// when it fits inside the trace.
std::pair<Element, Element> variant(const Universe& u, const Trace& m, const Trace& n, int v) {
  int b = comparison_point(u, m, n);
  std::optional<Trace> to_n, to_m;
  Trace lm = below(m, b), ln = below(n, b);
  auto fits = [](const Trace& low, const Trace& t) { return std::includes(t.begin(), t.end(), low.begin(), low.end()); };
  if (v == 1 && fits(lm, n)) to_n = lm;
  if (v == 2 && fits(ln, m)) to_m = ln;
  return {with_witness(m, to_m), with_witness(n, to_n)};
}

std::optional<std::string> common_point_failure(const Universe& u, const Element& me, const Element& ne) {
  Model m("M", me), n("N", ne);
  if (relate(u, m, n) == Relation::NONE) return std::nullopt;
  int b = comparison_point(u, m, n);
  for (int beta : u.lambda()) {
    if (beta >= b) break;
    bool hit = false;
    for (int x : m.trace())
      if (x >= beta && x < b && n.contains_ordinal(x)) hit = true;
    if (!hit)
      return "M and N are comparable but share no ordinal in [" + std::to_string(beta) + ", " + std::to_string(b) +
             ")";
  }
  return std::nullopt;
}

std::optional<std::string> remainder_size_failure(const Universe& u, const Element& me, const Element& ne) {
  Model m("M", me), n("N", ne);
  if (relate(u, m, n) == Relation::NONE) return std::nullopt;
  int b = comparison_point(u, m, n);
  for (int z : remainder(u, m, n))
    if (z < b || !n.contains_ordinal(z))
      return "remainder point " + std::to_string(z) + " is not an ordinal of N at or above " + std::to_string(b);
  return std::nullopt;
}

std::optional<std::string> monotone_failure(const Universe& u, const Trace& k, const Trace& m, const Trace& n) {
  Trace lk = lambda_set(u, k), lm = lambda_set(u, m);
  if (!std::includes(lm.begin(), lm.end(), lk.begin(), lk.end()))
    return "lambda_K " + show(lk) + " is not inside lambda_M " + show(lm);
  int bk = comparison_point(u, k, n), bm = comparison_point(u, m, n);
  if (bk > bm) return "comparison point with K " + std::to_string(bk) + " exceeds that with M " + std::to_string(bm);
  return std::nullopt;
}

// Bitmask of lambda_set by position in u.lambda().
std::uint32_t lambda_mask(const Universe& u, const Trace& t) {
  std::uint32_t mask = 0;
  for (int b : lambda_set(u, t))
    mask |= 1u << (std::lower_bound(u.lambda().begin(), u.lambda().end(), b) - u.lambda().begin());
  return mask;
}

Universe theta_universe(const Bounds& b) { return standard_universe(b.theta); }

// Trace-pair properties share one driver: all ordered pairs of traces.
void over_pairs(Context& ctx, const std::string& id,
                const std::function<std::optional<std::string>(const Universe&, const Trace&, const Trace&)>& f) {
  Universe u = theta_universe(ctx.bounds);
  auto traces = enumerate_traces(u, ctx.bounds.max_trace);
  ctx.set_expected(trace_count(u, ctx.bounds.max_trace) * trace_count(u, ctx.bounds.max_trace));
  for (const Trace& m : traces)
    for (const Trace& n : traces) {
      if (f(u, m, n))
        ctx.fail({id, ModelPool(u), {arg(m), arg(n)}});
      else
        ctx.pass();
    }
}

Check pair_check(std::optional<std::string> (*f)(const Universe&, const Trace&, const Trace&)) {
  return [f](const Witness& w) { return f(w.pool.universe(), ordinals_arg(w, 0), ordinals_arg(w, 1)); };
}

Property lambda_points_dense() {
  Property p;
  p.info = {"lambda-points-dense", "core-lemmas", Tier::Theorem,
            "every lambda point of M is reached by M from each lower lambda point"};
  p.exhaustive = true;
  p.run = [](Context& ctx) {
    Universe u = theta_universe(ctx.bounds);
    ctx.set_expected(trace_count(u, ctx.bounds.max_trace));
    for (const Trace& t : enumerate_traces(u, ctx.bounds.max_trace)) {
      if (dense_failure(u, t))
        ctx.fail({"lambda-points-dense", ModelPool(u), {arg(t)}});
      else
        ctx.pass();
    }
  };
  p.check = [](const Witness& w) { return dense_failure(w.pool.universe(), ordinals_arg(w, 0)); };
  return p;
}

Property lambda_common_max() {
  Property p;
  p.info = {"lambda-common-max", "core-lemmas", Tier::Theorem,
            "lambda_M and lambda_N meet and the comparison point is their largest common point"};
  p.exhaustive = true;
  p.run = [](Context& ctx) { over_pairs(ctx, "lambda-common-max", common_max_failure); };
  p.check = pair_check(common_max_failure);
  return p;
}

Property comparison_bound() {
  Property p;
  p.info = {"comparison-bound", "core-lemmas", Tier::Theorem,
            "a model below a lambda point has its comparison points at or below it"};
  p.exhaustive = true;
  p.run = [](Context& ctx) { over_pairs(ctx, "comparison-bound", bound_failure); };
  p.check = pair_check(bound_failure);
  return p;
}

using ElementCheck = std::optional<std::string> (*)(const Universe&, const Element&, const Element&);

// All trace pairs in three variants: plain, N holding M's lower part, M
// holding N's lower part.
void over_variants(Context& ctx, const std::string& id, ElementCheck f) {
  Universe u = theta_universe(ctx.bounds);
  auto traces = enumerate_traces(u, ctx.bounds.max_trace);
  std::size_t n = trace_count(u, ctx.bounds.max_trace);
  ctx.set_expected(3 * n * n);
  for (const Trace& m : traces)
    for (const Trace& t : traces)
      for (int v = 0; v < 3; ++v) {
        auto [me, ne] = variant(u, m, t, v);
        if (f(u, me, ne))
          ctx.fail({id, ModelPool(u), {arg(me), arg(ne)}});
        else
          ctx.pass();
      }
}

Check element_pair_check(ElementCheck f) {
  return [f](const Witness& w) { return f(w.pool.universe(), element_arg(w, 0), element_arg(w, 1)); };
}

Property comparison_common_point() {
  Property p;
  p.info = {"comparison-common-point", "core-lemmas", Tier::Theorem,
            "comparable models share an ordinal between each lower lambda point and the comparison point"};
  p.exhaustive = true;
  p.run = [](Context& ctx) { over_variants(ctx, "comparison-common-point", common_point_failure); };
  p.check = element_pair_check(common_point_failure);
  return p;
}

Property remainder_size() {
  Property p;
  p.info = {"remainder-size", "core-lemmas", Tier::Theorem,
            "remainder points of N over M are ordinals of N at or above the comparison point"};
  p.exhaustive = true;
  p.run = [](Context& ctx) { over_variants(ctx, "remainder-size", remainder_size_failure); };
  p.check = element_pair_check(remainder_size_failure);
  return p;
}

Property lambda_monotone() {
  Property p;
  p.info = {"lambda-monotone", "core-lemmas", Tier::Theorem,
            "K inside M gives lambda_K inside lambda_M and a comparison point with N no larger"};
  p.exhaustive = true;
  p.run = [](Context& ctx) {
    Universe u = theta_universe(ctx.bounds);
    auto traces = enumerate_traces(u, ctx.bounds.max_trace);
    std::map<Trace, std::size_t> index;
    std::vector<std::uint32_t> mask;
    for (const Trace& t : traces) {
      index[t] = mask.size();
      mask.push_back(lambda_mask(u, t));
    }
    auto top = [](std::uint32_t m) { return m ? 31 - std::countl_zero(m) : -1; };
    ctx.set_expected(subtrace_pair_count(u, ctx.bounds.max_trace) * traces.size());
    for (const Trace& m : traces) {
      // sub-traces: an initial part of the ordinals below omega1 plus any
      // subset of the rest
      Trace low, high;
      for (int x : m) (x < u.omega1() ? low : high).push_back(x);
      for (std::size_t j = 0; j <= low.size(); ++j)
        for (std::uint32_t bits = 0; bits < (1u << high.size()); ++bits) {
          Trace k(low.begin(), low.begin() + static_cast<std::ptrdiff_t>(j));
          for (std::size_t i = 0; i < high.size(); ++i)
            if (bits >> i & 1) k.push_back(high[i]);
          std::uint32_t km = mask[index.at(k)], mm = mask[index.at(m)];
          for (std::size_t ni = 0; ni < traces.size(); ++ni) {
            bool ok = (km & ~mm) == 0 && top(km & mask[ni]) <= top(mm & mask[ni]);
            if (ok)
              ctx.pass();
            else
              ctx.fail({"lambda-monotone", ModelPool(u), {arg(k), arg(m), arg(traces[ni])}});
          }
        }
    }
  };
  p.check = [](const Witness& w) {
    return monotone_failure(w.pool.universe(), ordinals_arg(w, 0), ordinals_arg(w, 1), ordinals_arg(w, 2));
  };
  return p;
}

Property comparison_point_stable() {
  Property p;
  p.info = {"comparison-point-stable", "core-lemmas", Tier::Theorem,
            "pairs that agree below a lambda point beta have the same comparison point once it is at most beta"};
  p.exhaustive = true;
  p.run = [](Context& ctx) {
    Universe u = theta_universe(ctx.bounds);
    auto traces = enumerate_traces(u, ctx.bounds.max_trace);
    std::vector<std::uint32_t> mask;
    for (const Trace& t : traces) mask.push_back(lambda_mask(u, t));
    ctx.set_expected(u.lambda().size() * traces.size() * traces.size());
    for (std::size_t bi = 0; bi < u.lambda().size(); ++bi) {
      int beta = u.lambda()[bi];
      std::map<Trace, std::size_t> class_of;
      std::vector<std::size_t> cls;
      for (const Trace& t : traces) cls.push_back(class_of.emplace(below(t, beta), class_of.size()).first->second);
      // first pair seen per (class of M, class of K) with comparison point <= beta
      std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> first;
      std::uint32_t upto = (2u << bi) - 1;
      for (std::size_t mi = 0; mi < traces.size(); ++mi)
        for (std::size_t ki = 0; ki < traces.size(); ++ki) {
          std::uint32_t common = mask[mi] & mask[ki];
          if (common == 0 || (common & ~upto) != 0) {
            ctx.pass();
            continue;
          }
          auto [it, fresh] = first.emplace(std::make_pair(cls[mi], cls[ki]), std::make_pair(mi, ki));
          if (fresh) {
            ctx.pass();
            continue;
          }
          auto [m0, k0] = it->second;
          std::uint32_t c0 = mask[m0] & mask[k0];
          if (std::countl_zero(c0) == std::countl_zero(common))
            ctx.pass();
          else
            ctx.fail({"comparison-point-stable", ModelPool(u),
                      {arg(beta), arg(traces[m0]), arg(traces[mi]), arg(traces[k0]), arg(traces[ki])}});
        }
    }
  };
  p.check = [](const Witness& w) -> std::optional<std::string> {
    Verdict v = check_same_comparison_point(w.pool.universe(), ordinals_arg(w, 1), ordinals_arg(w, 2),
                                            ordinals_arg(w, 3), ordinals_arg(w, 4), int_arg(w, 0));
    if (v.ok) return std::nullopt;
    return v.detail;
  };
  return p;
}

// Axiom-conditional: generated pools (or a fixture) checked pair by pair.

std::optional<std::string> overlap_failure(const ModelPool& pool, ModelId m, ModelId n) {
  int beta = comparison_point(pool.universe(), pool[m].trace(), pool[n].trace());
  const Trace& tm = pool[m].trace();
  const Trace& tn = pool[n].trace();
  Trace both;
  std::set_intersection(tm.begin(), tm.end(), tn.begin(), tn.end(), std::back_inserter(both));
  if (!both.empty() && both.back() >= beta)
    return pool[m].name() + " and " + pool[n].name() + " share " + std::to_string(both.back()) +
           " at or above the comparison point " + std::to_string(beta);
  return std::nullopt;
}

Property trace_overlap() {
  Property p;
  p.info = {"trace-overlap", "core-lemmas", Tier::AxiomConditional,
            "common ordinals of two models lie below their comparison point"};
  p.run = [](Context& ctx) {
    for (const ModelPool& pool : ctx.pools())
      for (ModelId m = 0; m < pool.size(); ++m)
        for (ModelId n = m; n < pool.size(); ++n)
          ctx.run({"trace-overlap", pool, {pool[m].name(), pool[n].name()}});
  };
  p.check = [](const Witness& w) { return overlap_failure(w.pool, model_arg(w, 0), model_arg(w, 1)); };
  return p;
}

std::optional<std::string> readings_failure(const ModelPool& pool, ModelId m, ModelId n) {
  const Universe& u = pool.universe();
  if (relate(pool, m, n) == Relation::NONE) throw Vacuous{};
  std::set<int> lit = reference::remainder(u, pool[m].elems(), pool[n].elems(), true);
  std::set<int> sim = reference::remainder(u, pool[m].elems(), pool[n].elems(), false);
  Trace lib = remainder(pool, m, n);
  if (lit != sim)
    return "the two readings of the remainder differ for " + pool[m].name() + ", " + pool[n].name() + ": " +
           show({lit.begin(), lit.end()}) + " vs " + show({sim.begin(), sim.end()});
  if (Trace(lit.begin(), lit.end()) != lib)
    return "library remainder " + show(lib) + " differs from the definition " + show({lit.begin(), lit.end()});
  return std::nullopt;
}

Property remainder_readings() {
  Property p;
  p.info = {"remainder-readings", "core-lemmas", Tier::AxiomConditional,
            "both readings of the first remainder clause agree on well-formed pools"};
  p.run = [](Context& ctx) {
    for (const ModelPool& pool : ctx.pools())
      for (ModelId m = 0; m < pool.size(); ++m)
        for (ModelId n = 0; n < pool.size(); ++n)
          ctx.run({"remainder-readings", pool, {pool[m].name(), pool[n].name()}});
  };
  p.check = [](const Witness& w) { return readings_failure(w.pool, model_arg(w, 0), model_arg(w, 1)); };
  return p;
}

}  // namespace

void add_core_properties(std::vector<Property>& out) {
  out.push_back(lambda_points_dense());
  out.push_back(lambda_common_max());
  out.push_back(comparison_bound());
  out.push_back(comparison_common_point());
  out.push_back(remainder_size());
  out.push_back(lambda_monotone());
  out.push_back(comparison_point_stable());
  out.push_back(trace_overlap());
  out.push_back(remainder_readings());
}

}  // namespace adq::detail
