#ifndef ADQ_ELEMENT_HPP
#define ADQ_ELEMENT_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace adq {

/// Hereditarily finite value: an ordinal atom, a finite set, or a finite tuple.
///
/// Sets are kept duplicate-free and sorted in canonical order, so structural
/// equality is plain member-wise equality. Canonical order ranks kinds
/// Ord < Tuple < Set and then compares lexicographically.
class Element {
 public:
  enum class Kind : std::uint8_t { Ord = 0, Tuple = 1, Set = 2 };

  Element() : Element(ord(0)) {}

  static Element ord(int value);
  static Element set(std::vector<Element> members);
  static Element tuple(std::vector<Element> items);
  static Element ord_set(const std::vector<int>& ordinals);

  Kind kind() const { return kind_; }
  bool is_ord() const { return kind_ == Kind::Ord; }
  bool is_set() const { return kind_ == Kind::Set; }
  bool is_tuple() const { return kind_ == Kind::Tuple; }

  /// Ordinal value; only meaningful for Ord.
  int value() const { return value_; }
  /// Members (Set) or items (Tuple); empty for Ord.
  const std::vector<Element>& items() const;
  std::size_t size() const { return items().size(); }

  /// Set membership by binary search. False for non-sets.
  bool has_member(const Element& a) const;

  /// Every ordinal occurring anywhere inside, sorted and unique.
  std::vector<int> ordinals() const;
  int depth() const;
  std::size_t hash() const { return hash_; }

  friend bool operator==(const Element& a, const Element& b);
  friend std::strong_ordering operator<=>(const Element& a, const Element& b);

 private:
  Element(Kind kind, int value, std::shared_ptr<const std::vector<Element>> items);
  void collect_ordinals(std::vector<int>& out) const;

  Kind kind_;
  int value_;
  std::shared_ptr<const std::vector<Element>> items_;
  std::size_t hash_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const { return e.hash(); }
};

/// Sorts and deduplicates in canonical order.
void canonicalize(std::vector<Element>& v);

}  // namespace adq

#endif  // ADQ_ELEMENT_HPP
