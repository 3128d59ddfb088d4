#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <utility>
#include <vector>

namespace iosa {

using Elem = std::size_t;

// Fixed capacity keeps sets trivially copyable; the free Boolean algebra on
// three variables is the largest carrier we build.
inline constexpr std::size_t kMaxElements = 256;

class ElementSet {
 public:
  static constexpr std::size_t kWords = kMaxElements / 64;

  constexpr ElementSet() = default;

  static ElementSet full(std::size_t n) {
    ElementSet s;
    for (std::size_t i = 0; i < n; ++i) s.set(i);
    return s;
  }

  static ElementSet single(Elem x) {
    ElementSet s;
    s.set(x);
    return s;
  }

  static ElementSet from_mask(std::uint64_t mask) {
    ElementSet s;
    s.w_[0] = mask;
    return s;
  }

  void set(Elem x) { w_[x >> 6] |= std::uint64_t{1} << (x & 63); }
  void reset(Elem x) { w_[x >> 6] &= ~(std::uint64_t{1} << (x & 63)); }
  bool test(Elem x) const { return (w_[x >> 6] >> (x & 63)) & 1U; }
  bool contains(Elem x) const { return test(x); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }
  bool any() const { return !empty(); }

  bool subset_of(const ElementSet& o) const {
    for (std::size_t i = 0; i < kWords; ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool intersects(const ElementSet& o) const {
    for (std::size_t i = 0; i < kWords; ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  ElementSet complement(std::size_t n) const { return full(n) - *this; }

  ElementSet& operator|=(const ElementSet& o) {
    for (std::size_t i = 0; i < kWords; ++i) w_[i] |= o.w_[i];
    return *this;
  }
  ElementSet& operator&=(const ElementSet& o) {
    for (std::size_t i = 0; i < kWords; ++i) w_[i] &= o.w_[i];
    return *this;
  }
  ElementSet& operator-=(const ElementSet& o) {
    for (std::size_t i = 0; i < kWords; ++i) w_[i] &= ~o.w_[i];
    return *this;
  }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;
  // Decided at the lowest differing index; the set holding it sorts first.
  friend bool operator<(const ElementSet& a, const ElementSet& b) {
    for (std::size_t i = 0; i < kWords; ++i) {
      if (a.w_[i] == b.w_[i]) continue;
      std::uint64_t diff = a.w_[i] ^ b.w_[i];
      std::uint64_t low = diff & (~diff + 1);
      return (a.w_[i] & low) != 0;
    }
    return false;
  }

  // Smallest member; only meaningful when nonempty.
  Elem first() const {
    for (std::size_t i = 0; i < kWords; ++i)
      if (w_[i]) return i * 64 + static_cast<Elem>(std::countr_zero(w_[i]));
    return kMaxElements;
  }

  std::uint64_t word(std::size_t i) const { return w_[i]; }

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto w : w_) h = (h ^ std::hash<std::uint64_t>{}(w)) * 0x100000001b3ULL;
    return h;
  }

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Elem;
    using difference_type = std::ptrdiff_t;
    using pointer = const Elem*;
    using reference = Elem;

    iterator() = default;
    iterator(const ElementSet* s, std::size_t word) : s_(s), word_(word) { advance(); }

    Elem operator*() const { return word_ * 64 + static_cast<Elem>(std::countr_zero(cur_)); }
    iterator& operator++() {
      cur_ &= cur_ - 1;
      if (!cur_) {
        ++word_;
        advance();
      }
      return *this;
    }
    iterator operator++(int) {
      iterator t = *this;
      ++*this;
      return t;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.word_ == b.word_ && a.cur_ == b.cur_;
    }

   private:
    void advance() {
      while (word_ < kWords && s_->w_[word_] == 0) ++word_;
      cur_ = word_ < kWords ? s_->w_[word_] : 0;
    }
    const ElementSet* s_ = nullptr;
    std::size_t word_ = kWords;
    std::uint64_t cur_ = 0;
  };

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, kWords); }

  std::vector<Elem> to_vector() const { return {begin(), end()}; }

 private:
  std::array<std::uint64_t, kWords> w_{};
};

// Binary relation on 0..n-1 stored as successor rows.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : n_(n), rows_(n) {}

  static Relation full(std::size_t n) {
    Relation r(n);
    for (auto& row : r.rows_) row = ElementSet::full(n);
    return r;
  }

  static Relation from_pairs(std::size_t n, const std::vector<std::pair<Elem, Elem>>& pairs) {
    Relation r(n);
    for (auto [a, b] : pairs) r.insert(a, b);
    return r;
  }

  // Bit a*n+b of `bits` decides the pair (a,b); n*n <= 64.
  static Relation from_bits(std::size_t n, std::uint64_t bits) {
    Relation r(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if ((bits >> (a * n + b)) & 1U) r.insert(a, b);
    return r;
  }

  std::uint64_t to_bits() const {
    std::uint64_t bits = 0;
    for (std::size_t a = 0; a < n_; ++a)
      for (Elem b : rows_[a]) bits |= std::uint64_t{1} << (a * n_ + b);
    return bits;
  }

  std::size_t size() const { return n_; }
  bool contains(Elem a, Elem b) const { return rows_[a].test(b); }
  void insert(Elem a, Elem b) { rows_[a].set(b); }
  void erase(Elem a, Elem b) { rows_[a].reset(b); }

  const ElementSet& image(Elem a) const { return rows_[a]; }
  ElementSet& row(Elem a) { return rows_[a]; }
  ElementSet preimage(Elem b) const {
    ElementSet s;
    for (std::size_t a = 0; a < n_; ++a)
      if (rows_[a].test(b)) s.set(a);
    return s;
  }
  ElementSet image(const ElementSet& as) const {
    ElementSet s;
    for (Elem a : as) s |= rows_[a];
    return s;
  }
  ElementSet preimage(const ElementSet& bs) const {
    ElementSet s;
    for (std::size_t a = 0; a < n_; ++a)
      if (rows_[a].intersects(bs)) s.set(a);
    return s;
  }

  Relation transpose() const {
    Relation t(n_);
    for (std::size_t a = 0; a < n_; ++a)
      for (Elem b : rows_[a]) t.insert(b, a);
    return t;
  }

  Relation compose(const Relation& o) const {  // {(a,c) : a this b, b o c}
    Relation r(n_);
    for (std::size_t a = 0; a < n_; ++a)
      for (Elem b : rows_[a]) r.rows_[a] |= o.rows_[b];
    return r;
  }

  bool subset_of(const Relation& o) const {
    for (std::size_t a = 0; a < n_; ++a)
      if (!rows_[a].subset_of(o.rows_[a])) return false;
    return true;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (const auto& row : rows_) c += row.count();
    return c;
  }

  std::vector<std::pair<Elem, Elem>> pairs() const {
    std::vector<std::pair<Elem, Elem>> out;
    for (std::size_t a = 0; a < n_; ++a)
      for (Elem b : rows_[a]) out.emplace_back(a, b);
    return out;
  }

  Relation& operator|=(const Relation& o) {
    for (std::size_t a = 0; a < n_; ++a) rows_[a] |= o.rows_[a];
    return *this;
  }
  Relation& operator&=(const Relation& o) {
    for (std::size_t a = 0; a < n_; ++a) rows_[a] &= o.rows_[a];
    return *this;
  }

  friend bool operator==(const Relation&, const Relation&) = default;
  friend bool operator<(const Relation& a, const Relation& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    for (std::size_t i = 0; i < a.n_; ++i) {
      if (a.rows_[i] == b.rows_[i]) continue;
      return a.rows_[i] < b.rows_[i];
    }
    return false;
  }

 private:
  std::size_t n_ = 0;
  std::vector<ElementSet> rows_;
};

}  // namespace iosa
