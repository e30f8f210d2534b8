#include "adq/element.hpp"

#include <algorithm>

namespace adq {

namespace {

const std::vector<Element>& empty_items() {
  static const std::vector<Element> kEmpty;
  return kEmpty;
}

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Element::Element(Kind kind, int value, std::shared_ptr<const std::vector<Element>> items)
    : kind_(kind), value_(value), items_(std::move(items)) {
  std::size_t h = mix(static_cast<std::size_t>(kind_), static_cast<std::size_t>(value_));
  if (items_) {
    for (const Element& e : *items_) h = mix(h, e.hash_);
    h = mix(h, items_->size());
  }
  hash_ = h;
}

Element Element::ord(int value) { return Element(Kind::Ord, value, nullptr); }

Element Element::set(std::vector<Element> members) {
  canonicalize(members);
  return Element(Kind::Set, 0, std::make_shared<const std::vector<Element>>(std::move(members)));
}

Element Element::tuple(std::vector<Element> items) {
  return Element(Kind::Tuple, 0, std::make_shared<const std::vector<Element>>(std::move(items)));
}

Element Element::ord_set(const std::vector<int>& ordinals) {
  std::vector<Element> members;
  members.reserve(ordinals.size());
  for (int v : ordinals) members.push_back(ord(v));
  return set(std::move(members));
}

const std::vector<Element>& Element::items() const { return items_ ? *items_ : empty_items(); }

bool Element::has_member(const Element& a) const {
  if (kind_ != Kind::Set) return false;
  return std::binary_search(items_->begin(), items_->end(), a);
}

void Element::collect_ordinals(std::vector<int>& out) const {
  if (kind_ == Kind::Ord) {
    out.push_back(value_);
    return;
  }
  for (const Element& e : items()) e.collect_ordinals(out);
}

std::vector<int> Element::ordinals() const {
  std::vector<int> out;
  collect_ordinals(out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int Element::depth() const {
  int d = 0;
  for (const Element& e : items()) d = std::max(d, e.depth() + 1);
  return kind_ == Kind::Ord ? 0 : std::max(d, 1);
}

bool operator==(const Element& a, const Element& b) {
  if (a.hash_ != b.hash_ || a.kind_ != b.kind_) return false;
  if (a.kind_ == Element::Kind::Ord) return a.value_ == b.value_;
  if (a.items_ == b.items_) return true;
  return *a.items_ == *b.items_;
}

std::strong_ordering operator<=>(const Element& a, const Element& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (a.kind_ == Element::Kind::Ord) return a.value_ <=> b.value_;
  if (a.items_ == b.items_) return std::strong_ordering::equal;
  return std::lexicographical_compare_three_way(a.items_->begin(), a.items_->end(),
                                                b.items_->begin(), b.items_->end());
}

void canonicalize(std::vector<Element>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace adq
