#ifndef ADQ_SEXPR_HPP
#define ADQ_SEXPR_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace adq {

/// Untyped s-expression node with its source offset.
struct SExpr {
  enum class Type { List, Int, Symbol, Keyword, Ref };

  Type type = Type::List;
  std::size_t pos = 0;
  long long number = 0;  // Int
  std::string text;      // Symbol, Keyword (without ':'), Ref (without '@')
  std::vector<SExpr> list;

  bool is_list() const { return type == Type::List; }
  bool is_int() const { return type == Type::Int; }
  bool is_symbol(std::string_view s) const { return type == Type::Symbol && text == s; }
  /// First element is the given symbol.
  bool is_form(std::string_view head) const;
};

/// Reads exactly one expression; trailing non-whitespace is an error.
/// ';' starts a comment running to end of line. Throws ParseError.
SExpr read_sexpr(std::string_view text);
/// Reads all top-level expressions.
std::vector<SExpr> read_all(std::string_view text);

/// Keyword-argument view over a form such as (head :k1 v1 :k2 v2 ...).
class FormArgs {
 public:
  /// `positional` leading arguments are skipped before keywords start.
  FormArgs(const SExpr& form, std::string_view head, std::size_t positional = 0);

  const SExpr& get(std::string_view key) const;
  const SExpr* find(std::string_view key) const;
  const std::vector<const SExpr*>& positional() const { return positional_; }
  long long get_int(std::string_view key) const;
  std::string get_name(std::string_view key) const;
  const SExpr& get_list(std::string_view key) const;

 private:
  const SExpr& form_;
  std::vector<std::pair<std::string, const SExpr*>> kv_;
  std::vector<const SExpr*> positional_;
};

bool is_name_token(std::string_view s);

}  // namespace adq

#endif  // ADQ_SEXPR_HPP
