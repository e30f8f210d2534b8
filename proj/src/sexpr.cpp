#include "adq/sexpr.hpp"

#include <cctype>
#include <charconv>

#include "adq/errors.hpp"

namespace adq {

namespace {

bool is_delim(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';';
}

class Reader {
 public:
  explicit Reader(std::string_view text) : s_(text) {}

  void skip_ws() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++i_;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_ws();
    return i_ >= s_.size();
  }

  SExpr read() {
    skip_ws();
    if (i_ >= s_.size()) throw ParseError(i_, "unexpected end of input");
    SExpr node;
    node.pos = i_;
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      node.type = SExpr::Type::List;
      for (;;) {
        skip_ws();
        if (i_ >= s_.size()) throw ParseError(node.pos, "unclosed '('");
        if (s_[i_] == ')') {
          ++i_;
          return node;
        }
        node.list.push_back(read());
      }
    }
    if (c == ')') throw ParseError(i_, "unexpected ')'");
    std::size_t start = i_;
    while (i_ < s_.size() && !is_delim(s_[i_])) ++i_;
    std::string_view tok = s_.substr(start, i_ - start);
    if (tok[0] == ':') {
      if (tok.size() == 1) throw ParseError(start, "empty keyword");
      node.type = SExpr::Type::Keyword;
      node.text = std::string(tok.substr(1));
      return node;
    }
    if (tok[0] == '@') {
      if (!is_name_token(tok.substr(1))) throw ParseError(start, "bad model reference '" + std::string(tok) + "'");
      node.type = SExpr::Type::Ref;
      node.text = std::string(tok.substr(1));
      return node;
    }
    if (std::isdigit(static_cast<unsigned char>(tok[0])) || tok[0] == '-') {
      long long v = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || p != tok.data() + tok.size())
        throw ParseError(start, "bad integer '" + std::string(tok) + "'");
      node.type = SExpr::Type::Int;
      node.number = v;
      return node;
    }
    if (!is_name_token(tok)) throw ParseError(start, "bad token '" + std::string(tok) + "'");
    node.type = SExpr::Type::Symbol;
    node.text = std::string(tok);
    return node;
  }

  std::size_t pos() const { return i_; }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

bool SExpr::is_form(std::string_view head) const {
  return type == Type::List && !list.empty() && list.front().is_symbol(head);
}

bool is_name_token(std::string_view s) {
  if (s.empty()) return false;
  char c0 = s[0];
  if (!(std::isalpha(static_cast<unsigned char>(c0)) || c0 == '_')) return false;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) continue;
    if (c == '_' || c == '.' || c == '\'' || c == '-' || c == '+' || c == '*' || c == '/' || c == '~' ||
        c == '^' || c == '#')
      continue;
    return false;
  }
  return true;
}

SExpr read_sexpr(std::string_view text) {
  Reader r(text);
  SExpr e = r.read();
  if (!r.at_end()) throw ParseError(r.pos(), "trailing input after expression");
  return e;
}

std::vector<SExpr> read_all(std::string_view text) {
  Reader r(text);
  std::vector<SExpr> out;
  while (!r.at_end()) out.push_back(r.read());
  return out;
}

FormArgs::FormArgs(const SExpr& form, std::string_view head, std::size_t positional) : form_(form) {
  if (!form.is_form(head)) throw ParseError(form.pos, "expected (" + std::string(head) + " ...)");
  std::size_t i = 1;
  for (; i < form.list.size() && positional_.size() < positional; ++i) {
    if (form.list[i].type == SExpr::Type::Keyword) break;
    positional_.push_back(&form.list[i]);
  }
  for (; i < form.list.size(); ++i) {
    const SExpr& k = form.list[i];
    if (k.type != SExpr::Type::Keyword) {
      if (positional_.size() < positional) {
        positional_.push_back(&k);
        continue;
      }
      throw ParseError(k.pos, "expected keyword in (" + std::string(head) + " ...)");
    }
    if (i + 1 >= form.list.size()) throw ParseError(k.pos, "keyword :" + k.text + " has no value");
    for (const auto& [name, v] : kv_)
      if (name == k.text) throw ParseError(k.pos, "duplicate keyword :" + k.text);
    kv_.emplace_back(k.text, &form.list[i + 1]);
    ++i;
  }
}

const SExpr* FormArgs::find(std::string_view key) const {
  for (const auto& [name, v] : kv_)
    if (name == key) return v;
  return nullptr;
}

const SExpr& FormArgs::get(std::string_view key) const {
  const SExpr* v = find(key);
  if (!v) throw ParseError(form_.pos, "missing keyword :" + std::string(key));
  return *v;
}

long long FormArgs::get_int(std::string_view key) const {
  const SExpr& v = get(key);
  if (!v.is_int()) throw ParseError(v.pos, "expected integer for :" + std::string(key));
  return v.number;
}

std::string FormArgs::get_name(std::string_view key) const {
  const SExpr& v = get(key);
  if (v.type != SExpr::Type::Symbol) throw ParseError(v.pos, "expected name for :" + std::string(key));
  return v.text;
}

const SExpr& FormArgs::get_list(std::string_view key) const {
  const SExpr& v = get(key);
  if (!v.is_list()) throw ParseError(v.pos, "expected list for :" + std::string(key));
  return v;
}

}  // namespace adq
