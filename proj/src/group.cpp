#include "pgrowth/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace pgrowth {

namespace {

std::int64_t iabs(std::int64_t x) { return x < 0 ? -x : x; }

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < 26) {
      out.emplace_back(1, static_cast<char>('a' + i));
    } else {
      out.push_back("x" + std::to_string(i));
    }
  }
  return out;
}

}  // namespace

GroupSpec::GroupSpec(std::vector<FactorSpec> factors,
                     std::vector<std::string> names)
    : factors_(std::move(factors)), names_(std::move(names)) {
  if (names_.empty()) names_ = default_names(factors_.size());
  if (names_.size() != factors_.size())
    throw ConfigError("one generator name per factor is required");
  if (factors_.size() < 2)
    throw ConfigError("a free product needs at least two factors");
  for (const auto& f : factors_) {
    if (f.order < 0) throw ConfigError("negative factor order");
    if (!f.infinite() && (f.order < 3 || f.order % 2 == 0))
      throw ConfigError("finite factor orders must be odd and at least 3");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const auto& n = names_[i];
    if (n.empty() || !std::isalpha(static_cast<unsigned char>(n[0])))
      throw ConfigError("generator names must start with a letter");
    for (std::size_t j = 0; j < i; ++j)
      if (names_[j] == n) throw ConfigError("duplicate generator name " + n);
  }
}

bool GroupSpec::is_free() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const FactorSpec& f) { return f.infinite(); });
}

std::int64_t GroupSpec::max_exponent(std::size_t f) const {
  const auto& fs = factors_[f];
  return fs.infinite() ? 0 : (fs.order - 1) / 2;
}

std::int64_t GroupSpec::reduce(std::size_t f, std::int64_t e) const {
  const auto& fs = factors_[f];
  if (fs.infinite()) return e;
  std::int64_t q = fs.order;
  std::int64_t r = e % q;
  if (r < 0) r += q;
  if (r > (q - 1) / 2) r -= q;
  return r;
}

int GroupSpec::factor_index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

std::string GroupSpec::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << " * ";
    if (factors_[i].infinite()) {
      os << "Z";
    } else {
      os << "C" << factors_[i].order;
    }
    os << "<" << names_[i] << ">";
  }
  return os.str();
}

GroupPtr make_free_group(std::size_t rank) {
  return make_group(std::vector<std::int64_t>(rank, 0));
}

GroupPtr make_group(const std::vector<std::int64_t>& orders,
                    std::vector<std::string> names) {
  std::vector<FactorSpec> fs;
  for (auto o : orders) fs.push_back(FactorSpec{o});
  return std::make_shared<const GroupSpec>(std::move(fs), std::move(names));
}

std::int64_t syllable_length(const GroupSpec&, const Syllable& s) {
  return iabs(s.exp);
}

Element::Element(const GroupSpec* g, std::vector<Syllable> s) : g_(g) {
  s_.reserve(s.size());
  for (const auto& y : s) push_right(y);
}

void Element::push_right(Syllable y) {
  if (g_ == nullptr) throw ConfigError("element without group");
  if (y.factor < 0 || static_cast<std::size_t>(y.factor) >= g_->rank())
    throw ConfigError("syllable factor out of range");
  y.exp = g_->reduce(y.factor, y.exp);
  if (y.exp == 0) return;
  if (!s_.empty() && s_.back().factor == y.factor) {
    len_ -= iabs(s_.back().exp);
    std::int64_t e = g_->reduce(y.factor, s_.back().exp + y.exp);
    if (e == 0) {
      s_.pop_back();
    } else {
      s_.back().exp = e;
      len_ += iabs(e);
    }
    return;
  }
  s_.push_back(y);
  len_ += iabs(y.exp);
}

std::vector<Letter> Element::letters() const {
  std::vector<Letter> out;
  out.reserve(static_cast<std::size_t>(len_));
  for (const auto& y : s_) {
    Letter l{y.factor, static_cast<std::int8_t>(y.exp < 0 ? -1 : 1)};
    for (std::int64_t i = 0; i < iabs(y.exp); ++i) out.push_back(l);
  }
  return out;
}

std::string Element::str() const {
  if (s_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < s_.size(); ++i) {
    if (i) os << ' ';
    os << g_->name(s_[i].factor);
    if (s_[i].exp != 1) os << '^' << s_[i].exp;
  }
  return os.str();
}

std::size_t Element::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& y : s_) {
    std::uint64_t v = (static_cast<std::uint64_t>(y.factor) << 48) ^
                      static_cast<std::uint64_t>(y.exp);
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

Element identity(const GroupSpec& g) { return Element(&g); }

Element generator(const GroupSpec& g, std::size_t f, std::int64_t e) {
  Element x(&g);
  x.push_right(Syllable{static_cast<std::int32_t>(f), e});
  return x;
}

Element from_letters(const GroupSpec& g, const std::vector<Letter>& w) {
  Element x(&g);
  for (const auto& l : w) x.push_right(Syllable{l.factor, l.sign});
  return x;
}

Element multiply(const Element& a, const Element& b) {
  const GroupSpec* g = a.g_ ? a.g_ : b.g_;
  if (a.g_ && b.g_ && a.g_ != b.g_)
    throw ConfigError("elements of different groups");
  Element out(g);
  if (g == nullptr) return out;
  out.s_.reserve(a.s_.size() + b.s_.size());
  out.s_ = a.s_;
  out.len_ = a.len_ + b.len_;
  // Both factors are normal forms, so cancellation happens only at the seam.
  std::size_t j = 0;
  while (j < b.s_.size() && !out.s_.empty() && out.s_.back().factor == b.s_[j].factor) {
    const Syllable& y = b.s_[j++];
    Syllable& x = out.s_.back();
    out.len_ -= iabs(x.exp) + iabs(y.exp);
    std::int64_t e = g->reduce(static_cast<std::size_t>(y.factor), x.exp + y.exp);
    if (e != 0) {
      x.exp = e;
      out.len_ += iabs(e);
      break;
    }
    out.s_.pop_back();
  }
  out.s_.insert(out.s_.end(), b.s_.begin() + static_cast<std::ptrdiff_t>(j), b.s_.end());
  return out;
}

Element multiply(std::initializer_list<const Element*> xs) {
  Element out;
  for (const Element* x : xs) out = multiply(out, *x);
  return out;
}

Element invert(const Element& a) {
  Element out(a.g_);
  out.s_.reserve(a.s_.size());
  for (auto it = a.s_.rbegin(); it != a.s_.rend(); ++it)
    out.s_.push_back(Syllable{it->factor, -it->exp});
  out.len_ = a.len_;
  return out;
}

Element power(const Element& a, std::int64_t k) {
  Element base = k < 0 ? invert(a) : a;
  Element out(a.group());
  // Square and multiply.
  for (std::int64_t n = iabs(k); n > 0; n >>= 1) {
    if (n & 1) out = multiply(out, base);
    if (n > 1) base = multiply(base, base);
  }
  return out;
}

Element conjugate(const Element& c, const Element& a) {
  return multiply(multiply(c, a), invert(c));
}

bool is_cyclically_reduced(const Element& a) {
  const auto& s = a.syllables();
  return s.size() <= 1 || s.front().factor != s.back().factor;
}

namespace {

int code_of(const Syllable& y) { return 2 * y.factor + (y.exp < 0 ? 1 : 0); }

// Letter-string comparison of the rotations starting at syllables i and j of a
// cyclically reduced core. The letters from syllable i on begin with l^k c, l
// its letter, k = |exp| and c the first letter of the next syllable. These
// strings are pairwise prefix-free, so the first unequal one decides.
int compare_syllable_at(const std::vector<Syllable>& s, std::size_t i, std::size_t j) {
  std::size_t n = s.size();
  int li = code_of(s[i]), lj = code_of(s[j]);
  if (li != lj) return li < lj ? -1 : 1;
  std::int64_t ki = iabs(s[i].exp), kj = iabs(s[j].exp);
  int ci = code_of(s[(i + 1) % n]), cj = code_of(s[(j + 1) % n]);
  if (ki == kj) return ci == cj ? 0 : (ci < cj ? -1 : 1);
  if (ki < kj) return ci < lj ? -1 : 1;
  return li < cj ? -1 : 1;
}

// Least index of a lexicographically least rotation (two-pointer scan).
std::size_t least_syllable_rotation(const std::vector<Syllable>& s) {
  std::size_t n = s.size(), i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    int c = compare_syllable_at(s, (i + k) % n, (j + k) % n);
    if (c == 0) {
      ++k;
      continue;
    }
    if (c > 0) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

}  // namespace

CyclicReduction cyclic_reduce(const Element& a) {
  const GroupSpec* g = a.group();
  Element conj(g);
  std::vector<Syllable> s = a.syllables();
  std::size_t lo = 0, hi = s.size();
  std::vector<Syllable> conj_s;
  // Strip matching ends from the left: a = x M y = x (M y x) x^-1.
  while (hi - lo >= 2 && s[lo].factor == s[hi - 1].factor) {
    Syllable x = s[lo];
    conj_s.push_back(x);
    std::int64_t e = g->reduce(x.factor, s[hi - 1].exp + x.exp);
    ++lo;
    if (e == 0) {
      --hi;
    } else {
      s[hi - 1].exp = e;
      break;
    }
  }
  std::vector<Syllable> core(s.begin() + static_cast<std::ptrdiff_t>(lo),
                             s.begin() + static_cast<std::ptrdiff_t>(hi));
  conj = Element(g, conj_s);
  // Among syllable rotations keep the lexicographically least letter string.
  std::size_t n = core.size();
  std::size_t best = n >= 2 ? least_syllable_rotation(core) : 0;
  std::vector<Syllable> rot(core.begin() + static_cast<std::ptrdiff_t>(best),
                            core.end());
  rot.insert(rot.end(), core.begin(),
             core.begin() + static_cast<std::ptrdiff_t>(best));
  Element prefix(g, std::vector<Syllable>(
                        core.begin(),
                        core.begin() + static_cast<std::ptrdiff_t>(best)));
  return CyclicReduction{Element(g, rot), multiply(conj, prefix)};
}

bool is_elliptic(const Element& a) {
  // Only the size of the cyclic core matters, so strip the ends in place.
  const auto& s = a.syllables();
  const GroupSpec* g = a.group();
  std::size_t lo = 0, hi = s.size();
  std::int64_t last = hi ? s[hi - 1].exp : 0;
  while (hi - lo >= 2 && s[lo].factor == s[hi - 1].factor) {
    std::int64_t e = g->reduce(static_cast<std::size_t>(s[lo].factor), last + s[lo].exp);
    ++lo;
    if (e != 0) break;
    --hi;
    if (hi > lo) last = s[hi - 1].exp;
  }
  if (hi == lo) return true;
  return hi - lo == 1 && !g->factor(static_cast<std::size_t>(s[lo].factor)).infinite();
}

PrimitiveRoot primitive_root(const Element& a) {
  if (!is_cyclically_reduced(a))
    throw DomainError("primitive_root expects a cyclically reduced element");
  if (is_elliptic(a)) throw DomainError("primitive_root of an elliptic element");
  const auto& s = a.syllables();
  const GroupSpec* g = a.group();
  if (s.size() == 1) {
    std::int64_t e = s[0].exp;
    return PrimitiveRoot{generator(*g, s[0].factor, e < 0 ? -1 : 1), iabs(e)};
  }
  std::size_t n = s.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = s[i] == s[i - d];
    if (ok) {
      std::vector<Syllable> r(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(d));
      return PrimitiveRoot{Element(g, r), static_cast<std::int64_t>(n / d)};
    }
  }
  return PrimitiveRoot{a, 1};
}

int compare_lex(const Element& a, const Element& b) {
  const auto& x = a.syllables();
  const auto& y = b.syllables();
  std::size_t i = 0, j = 0;
  std::int64_t ri = 0, rj = 0;  // letters consumed inside current syllables
  while (i < x.size() && j < y.size()) {
    Letter la{x[i].factor, static_cast<std::int8_t>(x[i].exp < 0 ? -1 : 1)};
    Letter lb{y[j].factor, static_cast<std::int8_t>(y[j].exp < 0 ? -1 : 1)};
    if (la.code() != lb.code()) return la.code() < lb.code() ? -1 : 1;
    std::int64_t ra = iabs(x[i].exp) - ri, rb = iabs(y[j].exp) - rj;
    std::int64_t step = std::min(ra, rb);
    ri += step;
    rj += step;
    if (ri == iabs(x[i].exp)) { ++i; ri = 0; }
    if (rj == iabs(y[j].exp)) { ++j; rj = 0; }
  }
  bool ea = i == x.size(), eb = j == y.size();
  if (ea && eb) return 0;
  return ea ? -1 : 1;
}

bool lex_less(const Element& a, const Element& b) { return compare_lex(a, b) < 0; }

Element parse_element(const GroupSpec& g, std::string_view text) {
  Element out(&g);
  std::string t(text);
  std::istringstream is(t);
  std::string tok;
  while (is >> tok) {
    if (tok == "1") continue;
    std::string name = tok;
    std::int64_t e = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      std::string ex = tok.substr(caret + 1);
      const char* b = ex.data();
      const char* en = ex.data() + ex.size();
      if (!ex.empty() && ex[0] == '+') ++b;
      auto res = std::from_chars(b, en, e);
      if (res.ec != std::errc() || res.ptr != en)
        throw ConfigError("bad exponent in token '" + tok + "'");
    }
    int f = g.factor_index(name);
    if (f < 0) throw ConfigError("unknown generator '" + name + "'");
    if (e == 0) continue;
    // Push one letter at a time so large exponents of finite factors reduce.
    if (g.factor(f).infinite()) {
      out.push_right(Syllable{f, e});
    } else {
      std::int64_t q = g.factor(f).order;
      out.push_right(Syllable{f, e % q});
    }
  }
  return out;
}

std::string format_letters(const GroupSpec& g, const std::vector<Letter>& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << g.name(w[i].factor);
    if (w[i].sign < 0) os << "^-1";
  }
  return os.str();
}

}  // namespace pgrowth
