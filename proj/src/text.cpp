#include "adq/text.hpp"

#include <sstream>

#include "adq/errors.hpp"

namespace adq {

namespace {

void write_element(std::ostringstream& os, const Element& e) {
  switch (e.kind()) {
    case Element::Kind::Ord:
      os << e.value();
      return;
    case Element::Kind::Set:
      os << "(set";
      break;
    case Element::Kind::Tuple:
      os << "(tuple";
      break;
  }
  for (const Element& a : e.items()) {
    os << ' ';
    write_element(os, a);
  }
  os << ')';
}

void write_items(std::ostringstream& os, const std::vector<Element>& items) {
  os << '(';
  bool first = true;
  for (const Element& a : items) {
    if (!first) os << ' ';
    first = false;
    write_element(os, a);
  }
  os << ')';
}

int to_ordinal(const SExpr& s) {
  if (!s.is_int()) throw ParseError(s.pos, "expected an ordinal");
  if (s.number < 0 || s.number > 1'000'000) throw ParseError(s.pos, "ordinal out of range");
  return static_cast<int>(s.number);
}

}  // namespace

std::string serialize(const Element& e) {
  std::ostringstream os;
  write_element(os, e);
  return os.str();
}

std::string serialize_ordinals(const std::vector<int>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  os << ')';
  return os.str();
}

std::string serialize_names(const std::vector<std::string>& names) {
  std::string out = "(";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? " " : "") + names[i];
  return out + ")";
}

std::string serialize(const Universe& u) {
  std::ostringstream os;
  os << "(universe :theta " << u.theta() << " :omega1 " << u.omega1() << " :lambda "
     << serialize_ordinals(u.lambda()) << " :s " << serialize_ordinals(u.s());
  if (!u.y().empty()) {
    os << " :y (";
    for (std::size_t i = 0; i < u.y().size(); ++i) {
      os << (i ? " " : "") << '(' << u.y()[i].name;
      for (const Element& a : u.y()[i].extension) {
        os << ' ';
        write_element(os, a);
      }
      os << ')';
    }
    os << ')';
  }
  os << ')';
  return os.str();
}

std::string serialize(const Model& m) {
  std::ostringstream os;
  os << "(model :name " << m.name() << " :elems ";
  write_items(os, m.elems().items());
  os << ')';
  return os.str();
}

std::string serialize(const ModelPool& pool) {
  std::ostringstream os;
  os << "(pool" << (pool.checks_lambda_above() ? "" : " :unchecked") << "\n  " << serialize(pool.universe());
  for (const Model& m : pool.models()) os << "\n  " << serialize(m);
  os << ")\n";
  return os.str();
}

std::string serialize(const Condition& c, const ModelPool& pool) {
  std::ostringstream os;
  os << "(cond :x ";
  write_items(os, c.x);
  os << " :a " << serialize_names(pool.names(c.a)) << ')';
  return os.str();
}

Element element_from(const SExpr& s, const RefResolver& refs) {
  switch (s.type) {
    case SExpr::Type::Int:
      return Element::ord(to_ordinal(s));
    case SExpr::Type::Ref:
      if (!refs) throw ParseError(s.pos, "model reference @" + s.text + " is not allowed here");
      return refs(s);
    case SExpr::Type::List: {
      if (s.list.empty() || s.list.front().type != SExpr::Type::Symbol)
        throw ParseError(s.pos, "expected (set ...) or (tuple ...)");
      std::vector<Element> items;
      for (std::size_t i = 1; i < s.list.size(); ++i) items.push_back(element_from(s.list[i], refs));
      if (s.list.front().text == "set") return Element::set(std::move(items));
      if (s.list.front().text == "tuple") return Element::tuple(std::move(items));
      throw ParseError(s.list.front().pos, "unknown element form '" + s.list.front().text + "'");
    }
    default:
      throw ParseError(s.pos, "expected an element");
  }
}

std::vector<int> ordinals_from(const SExpr& list) {
  if (!list.is_list()) throw ParseError(list.pos, "expected a list of ordinals");
  std::vector<int> out;
  for (const SExpr& e : list.list) out.push_back(to_ordinal(e));
  return out;
}

std::vector<std::string> names_from(const SExpr& list) {
  if (!list.is_list()) throw ParseError(list.pos, "expected a list of names");
  std::vector<std::string> out;
  for (const SExpr& e : list.list) {
    if (e.type != SExpr::Type::Symbol) throw ParseError(e.pos, "expected a model name");
    out.push_back(e.text);
  }
  return out;
}

Universe universe_from(const SExpr& s) {
  FormArgs args(s, "universe");
  std::vector<YPredicate> y;
  if (const SExpr* ys = args.find("y")) {
    if (!ys->is_list()) throw ParseError(ys->pos, "expected a list of predicates");
    for (const SExpr& p : ys->list) {
      if (!p.is_list() || p.list.empty() || p.list.front().type != SExpr::Type::Symbol)
        throw ParseError(p.pos, "expected (NAME element*)");
      YPredicate pred{p.list.front().text, {}};
      for (std::size_t i = 1; i < p.list.size(); ++i) pred.extension.push_back(element_from(p.list[i]));
      y.push_back(std::move(pred));
    }
  }
  return Universe(static_cast<int>(args.get_int("theta")), static_cast<int>(args.get_int("omega1")),
                  ordinals_from(args.get_list("lambda")), ordinals_from(args.get_list("s")), std::move(y));
}

Model model_from(const SExpr& s, const Universe& u, const RefResolver& refs) {
  FormArgs args(s, "model");
  std::string name = args.get_name("name");
  const SExpr& list = args.get_list("elems");
  std::vector<Element> members;
  for (const SExpr& e : list.list) members.push_back(element_from(e, refs));
  Model m(name, Element::set(std::move(members)));
  std::vector<Violation> v = validate_model(u, m);
  if (!v.empty()) throw InvariantError(v.front().invariant, "model '" + name + "': " + v.front().detail);
  return m;
}

ModelPool pool_from(const SExpr& s) {
  if (!s.is_form("pool")) throw ParseError(s.pos, "expected (pool universe model*)");
  std::size_t first = 1;
  bool checked = true;
  if (s.list.size() > 1 && s.list[1].type == SExpr::Type::Keyword && s.list[1].text == "unchecked") {
    checked = false;
    first = 2;
  }
  if (s.list.size() <= first) throw ParseError(s.pos, "pool has no universe");
  ModelPool pool(universe_from(s.list[first]), checked);
  RefResolver refs = [&pool](const SExpr& ref) {
    auto id = pool.find(ref.text);
    if (!id) throw ParseError(ref.pos, "unknown model @" + ref.text);
    return pool[*id].elems();
  };
  for (std::size_t i = first + 1; i < s.list.size(); ++i) {
    Model m = model_from(s.list[i], pool.universe(), refs);
    if (pool.find(m.name())) throw InvariantError("name-unique", "duplicate model name '" + m.name() + "'");
    if (auto dup = pool.find(m.elems()))
      throw InvariantError("content-unique", "model '" + m.name() + "' duplicates '" + pool[*dup].name() + "'");
    pool.add(m);
  }
  return pool;
}

Condition condition_from(const SExpr& s, const ModelPool& pool) {
  FormArgs args(s, "cond");
  const SExpr& xs = args.get_list("x");
  std::vector<Element> x;
  for (const SExpr& e : xs.list) x.push_back(element_from(e));
  const SExpr& as = args.get_list("a");
  std::vector<ModelId> a;
  for (const std::string& n : names_from(as)) a.push_back(pool.id(n));
  return Condition(std::move(x), std::move(a));
}

Element parse_element(std::string_view text) { return element_from(read_sexpr(text)); }
Universe parse_universe(std::string_view text) { return universe_from(read_sexpr(text)); }
Model parse_model(std::string_view text, const Universe& u) { return model_from(read_sexpr(text), u); }
ModelPool parse_pool(std::string_view text) { return pool_from(read_sexpr(text)); }
Condition parse_condition(std::string_view text, const ModelPool& pool) {
  return condition_from(read_sexpr(text), pool);
}

}  // namespace adq
