#include "adq/reference.hpp"

#include <algorithm>

namespace adq::reference {

namespace {

int sup_of_below(const std::set<int>& t, int bound) {
  int s = 0;
  for (int x : t)
    if (x < bound) s = std::max(s, x);
  return s;
}

std::set<int> cut(const std::set<int>& t, int bound) {
  std::set<int> out;
  for (int x : t)
    if (x < bound) out.insert(x);
  return out;
}

std::optional<int> least_from(const std::set<int>& t, int from) {
  for (int x : t)
    if (x >= from) return x;
  return std::nullopt;
}

bool is_member(const Element& set, const Element& a) {
  for (const Element& b : set.items())
    if (b == a) return true;
  return false;
}

Element as_element(const std::set<int>& t) { return Element::ord_set(std::vector<int>(t.begin(), t.end())); }

bool inside(const Element& model, const Element& a) {
  if (is_member(model, a)) return true;
  if (!a.is_tuple()) return false;
  for (const Element& b : a.items())
    if (!inside(model, b)) return false;
  return true;
}

}  // namespace

std::set<int> lambda_points(const Universe& u, const std::set<int>& trace) {
  std::set<int> out;
  for (int beta : u.lambda()) {
    int s = sup_of_below(trace, beta);
    int least = -1;
    for (int l : u.lambda())
      if (l >= s) {
        least = l;
        break;
      }
    if (least == beta) out.insert(beta);
  }
  return out;
}

std::optional<int> comparison_point(const Universe& u, const std::set<int>& t1, const std::set<int>& t2) {
  std::set<int> a = lambda_points(u, t1), b = lambda_points(u, t2);
  std::optional<int> best;
  for (int x : a)
    if (b.count(x)) best = x;
  return best;
}

std::set<int> trace_of(const Element& model) {
  std::set<int> out;
  for (const Element& a : model.items())
    if (a.is_ord()) out.insert(a.value());
  return out;
}

Rel relation(const Universe& u, const Element& m, const Element& n) {
  std::set<int> tm = trace_of(m), tn = trace_of(n);
  auto beta = comparison_point(u, tm, tn);
  if (!beta) return Rel::None;
  std::set<int> lm = cut(tm, *beta), ln = cut(tn, *beta);
  if (lm == ln) return Rel::Sim;
  if (is_member(n, as_element(lm))) return Rel::Lt;
  if (is_member(m, as_element(ln))) return Rel::Gt;
  return Rel::None;
}

std::set<int> remainder(const Universe& u, const Element& m, const Element& n, bool literal) {
  std::set<int> tm = trace_of(m), tn = trace_of(n);
  std::set<int> out;
  auto beta = comparison_point(u, tm, tn);
  if (!beta) return out;
  Rel r = relation(u, m, n);
  bool first = literal ? (r == Rel::Gt || r == Rel::Sim) : r == Rel::Sim;
  if (first)
    if (auto z = least_from(tn, *beta)) out.insert(*z);
  for (int g : tm)
    if (g >= *beta)
      if (auto z = least_from(tn, g)) out.insert(*z);
  return out;
}

Element image(const std::map<int, int>& sigma, const Element& a) {
  switch (a.kind()) {
    case Element::Kind::Ord:
      return Element::ord(sigma.at(a.value()));
    case Element::Kind::Tuple: {
      std::vector<Element> items;
      for (const Element& b : a.items()) items.push_back(image(sigma, b));
      return Element::tuple(items);
    }
    case Element::Kind::Set: {
      std::vector<Element> items;
      for (const Element& b : a.items()) items.push_back(image(sigma, b));
      return Element::set(items);
    }
  }
  return a;
}

std::optional<std::map<int, int>> isomorphism(const Universe& u, const Element& m, const Element& n) {
  std::set<int> tm = trace_of(m), tn = trace_of(n);
  if (tm.size() != tn.size() || m.size() != n.size()) return std::nullopt;
  std::map<int, int> sigma;
  for (auto i = tm.begin(), j = tn.begin(); i != tm.end(); ++i, ++j) sigma[*i] = *j;
  for (const Element& a : m.items()) {
    for (int x : a.ordinals())
      if (!sigma.count(x)) return std::nullopt;
    Element b = image(sigma, a);
    if (!is_member(n, b)) return std::nullopt;
    if (a.is_ord() && u.ord_flags(a.value()) != u.ord_flags(b.value())) return std::nullopt;
    if (u.user_flags(a) != u.user_flags(b)) return std::nullopt;
  }
  return sigma;
}

bool strongly_isomorphic(const Universe& u, const Element& m, const Element& n) {
  auto sigma = isomorphism(u, m, n);
  if (!sigma) return false;
  for (const Element& a : m.items())
    if (is_member(n, a) && image(*sigma, a) != a) return false;
  return true;
}

bool coherent(const Universe& u, const std::vector<Element>& side) {
  for (const Element& m : side)
    for (const Element& n : side) {
      Rel r = relation(u, m, n);
      if (r == Rel::None) return false;
      if (m == n) continue;
      if (r == Rel::Sim && !strongly_isomorphic(u, m, n)) return false;
      if (r == Rel::Lt) {
        bool found = false;
        for (const Element& c : side)
          if (is_member(c, m) && isomorphism(u, c, n)) found = true;
        if (!found) return false;
      }
    }
  for (const Element& m : side)
    for (const Element& n : side) {
      if (m == n) continue;
      auto sigma = isomorphism(u, m, n);
      if (!sigma) continue;
      for (const Element& k : side)
        if (is_member(m, k) && std::find(side.begin(), side.end(), image(*sigma, k)) == side.end()) return false;
    }
  return true;
}

std::set<int> remainder_points(const Universe& u, const std::vector<Element>& side) {
  std::set<int> out;
  for (const Element& m : side)
    for (const Element& n : side) {
      std::set<int> r = remainder(u, m, n, true);
      out.insert(r.begin(), r.end());
    }
  return out;
}

namespace {

bool ordinal_tuple(const Element& e, std::size_t len) {
  if (!e.is_tuple() || e.size() != len) return false;
  for (const Element& b : e.items())
    if (!b.is_ord()) return false;
  return true;
}

bool in_y(const Universe& u, const std::set<int>& t) {
  for (int a : t)
    if (u.in_s(a) && !u.in_s(sup_of_below(t, a))) return false;
  return u.in_s(sup_of_below(t, u.theta()));
}

bool has(const std::vector<Element>& x, const Element& e) { return std::find(x.begin(), x.end(), e) != x.end(); }

bool iso_closed(const Universe& u, const std::vector<Element>& x, const std::vector<Element>& side) {
  for (const Element& m : side)
    for (const Element& n : side) {
      if (m == n) continue;
      auto sigma = isomorphism(u, m, n);
      if (!sigma) continue;
      for (const Element& a : x)
        if (inside(m, a) && !has(x, image(*sigma, a))) return false;
    }
  return true;
}

}  // namespace

std::set<int> club_clauses(const Universe& u, const std::vector<Element>& x, const std::vector<Element>& side) {
  std::set<int> bad;
  for (const Element& e : x) {
    if (!ordinal_tuple(e, 2)) {
      bad.insert(1);
      continue;
    }
    int a = e.items()[0].value(), a2 = e.items()[1].value();
    if (a > a2 || a2 >= u.theta() || !u.in_s(a)) bad.insert(1);
    for (const Element& f : x) {
      if (!ordinal_tuple(f, 2) || f == e) continue;
      int g = f.items()[0].value(), g2 = f.items()[1].value();
      // closed intervals meet with distinct left ends
      if (a != g && std::max(a, g) <= std::min(a2, g2)) bad.insert(1);
    }
  }
  if (!coherent(u, side)) bad.insert(2);
  for (const Element& m : side)
    if (!in_y(u, trace_of(m))) bad.insert(2);
  for (const Element& e : x) {
    if (!ordinal_tuple(e, 2)) continue;
    int a = e.items()[0].value(), a2 = e.items()[1].value();
    if (a > a2) continue;
    for (const Element& n : side) {
      std::set<int> t = trace_of(n);
      if (t.empty() || *t.rbegin() < a) continue;
      bool meets = false;
      for (int v : t)
        if (a <= v && v <= a2) meets = true;
      if (meets) {
        if (!t.count(a) || !t.count(a2)) bad.insert(3);
      } else {
        int an = *least_from(t, a);
        if (!has(x, Element::tuple({Element::ord(an), Element::ord(an)}))) bad.insert(3);
      }
    }
  }
  bool adequate = true;
  for (const Element& m : side)
    for (const Element& n : side)
      if (relation(u, m, n) == Rel::None) adequate = false;
  if (adequate)
    for (int z : remainder_points(u, side))
      if (!has(x, Element::tuple({Element::ord(z), Element::ord(z)}))) bad.insert(4);
  if (!iso_closed(u, x, side)) bad.insert(5);
  return bad;
}

std::set<int> square_clauses(const Universe& u, const std::vector<Element>& x, const std::vector<Element>& side) {
  std::set<int> bad;
  for (const Element& e : x) {
    if (!ordinal_tuple(e, 3)) {
      bad.insert(1);
      continue;
    }
    int a = e.items()[0].value(), g = e.items()[1].value(), b = e.items()[2].value();
    if (!(0 <= g && g < b && b < a && a < u.theta() && u.in_lambda(a))) bad.insert(1);
    for (const Element& f : x) {
      if (!ordinal_tuple(f, 3) || f == e) continue;
      int a1 = f.items()[0].value(), g1 = f.items()[1].value(), b1 = f.items()[2].value();
      // same top, open intervals (g, b) and (g1, b1) share a point region
      if (a == a1 && std::max(g, g1) < std::min(b, b1)) bad.insert(1);
    }
  }
  if (!coherent(u, side)) bad.insert(2);
  for (const Element& e : x) {
    if (!ordinal_tuple(e, 3)) continue;
    int a = e.items()[0].value(), g = e.items()[1].value(), b = e.items()[2].value();
    for (const Element& m : side) {
      std::set<int> t = trace_of(m);
      if (!t.count(a)) continue;
      if (!(t.count(g) && t.count(b)) && !(sup_of_below(t, a) < g)) bad.insert(3);
    }
  }
  if (!iso_closed(u, x, side)) bad.insert(4);
  return bad;
}

}  // namespace adq::reference
