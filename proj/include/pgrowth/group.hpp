#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pgrowth/errors.hpp"

namespace pgrowth {

// Order of a cyclic factor; 0 encodes an infinite cyclic factor.
struct FactorSpec {
  std::int64_t order = 0;
  bool infinite() const { return order == 0; }
};

class GroupSpec {
 public:
  GroupSpec(std::vector<FactorSpec> factors, std::vector<std::string> names);

  std::size_t rank() const { return factors_.size(); }
  const FactorSpec& factor(std::size_t i) const { return factors_[i]; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<FactorSpec>& factors() const { return factors_; }
  const std::vector<std::string>& names() const { return names_; }
  // True when every factor is infinite cyclic, i.e. the Cayley graph is a tree.
  bool is_free() const;
  // Largest |exponent| allowed in a syllable of factor f (0 means unbounded).
  std::int64_t max_exponent(std::size_t f) const;
  // Symmetric residue of e for factor f.
  std::int64_t reduce(std::size_t f, std::int64_t e) const;
  int factor_index(std::string_view name) const;
  std::string describe() const;

 private:
  std::vector<FactorSpec> factors_;
  std::vector<std::string> names_;
};

using GroupPtr = std::shared_ptr<const GroupSpec>;

// Free group of the given rank with generators a, b, c, ...
GroupPtr make_free_group(std::size_t rank);
// Free product of cyclic groups; order 0 means infinite.
GroupPtr make_group(const std::vector<std::int64_t>& orders,
                    std::vector<std::string> names = {});

struct Syllable {
  std::int32_t factor = 0;
  std::int64_t exp = 0;
  bool operator==(const Syllable&) const = default;
};

// A unit step of the Cayley graph: generator of `factor` raised to `sign`.
struct Letter {
  std::int32_t factor = 0;
  std::int8_t sign = 1;
  bool operator==(const Letter&) const = default;
  int code() const { return 2 * factor + (sign < 0 ? 1 : 0); }
};

class Element {
 public:
  Element() = default;
  explicit Element(const GroupSpec* g) : g_(g) {}
  Element(const GroupSpec* g, std::vector<Syllable> s);

  const GroupSpec* group() const { return g_; }
  const std::vector<Syllable>& syllables() const { return s_; }
  std::size_t size() const { return s_.size(); }
  bool is_identity() const { return s_.empty(); }
  // Word length in the one-generator-per-factor metric.
  std::int64_t length() const { return len_; }

  bool operator==(const Element& o) const { return s_ == o.s_; }
  bool operator!=(const Element& o) const { return !(*this == o); }

  std::vector<Letter> letters() const;
  std::string str() const;
  std::size_t hash() const;

  // In-place right multiplication by a single syllable (normal form kept).
  void push_right(Syllable y);

 private:
  const GroupSpec* g_ = nullptr;
  std::vector<Syllable> s_;
  std::int64_t len_ = 0;
  friend Element multiply(const Element&, const Element&);
  friend Element invert(const Element&);
};

struct ElementHash {
  std::size_t operator()(const Element& e) const { return e.hash(); }
};

Element identity(const GroupSpec& g);
Element generator(const GroupSpec& g, std::size_t f, std::int64_t e = 1);
Element from_letters(const GroupSpec& g, const std::vector<Letter>& w);

Element multiply(const Element& a, const Element& b);
Element multiply(std::initializer_list<const Element*> xs);
Element invert(const Element& a);
Element power(const Element& a, std::int64_t k);
Element conjugate(const Element& c, const Element& a);  // c a c^-1

std::int64_t syllable_length(const GroupSpec& g, const Syllable& s);

// a = conjugator * core * conjugator^-1 with core cyclically reduced.
struct CyclicReduction {
  Element core;
  Element conjugator;
};
CyclicReduction cyclic_reduce(const Element& a);
bool is_cyclically_reduced(const Element& a);
// Elliptic: trivial or conjugate into a finite factor.
bool is_elliptic(const Element& a);

struct PrimitiveRoot {
  Element root;
  std::int64_t exponent = 1;
};
PrimitiveRoot primitive_root(const Element& a);

// Total order: lexicographic on geodesic letter strings, shorter prefix first.
int compare_lex(const Element& a, const Element& b);
bool lex_less(const Element& a, const Element& b);
struct LexLess {
  bool operator()(const Element& a, const Element& b) const {
    return lex_less(a, b);
  }
};

Element parse_element(const GroupSpec& g, std::string_view text);
std::string format_letters(const GroupSpec& g, const std::vector<Letter>& w);

}  // namespace pgrowth
