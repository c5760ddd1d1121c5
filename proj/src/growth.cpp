#include "pgrowth/growth.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <unordered_set>

#include "pgrowth/numeric.hpp"

namespace pgrowth {

namespace {

using ElemSet = std::unordered_set<Element, ElementHash>;

// Memory cap for exact layers; larger radii fall back to certified counts.
constexpr double kExactSyllables = 4e7;

const GroupSpec& group_of(const ElementSet& V) {
  for (const auto& v : V)
    if (v.group()) return *v.group();
  throw DomainError("empty or groupless element set");
}

ElemSet next_layer(const ElemSet& layer, const ElementSet& V, std::uint64_t budget) {
  ElemSet nxt;
  for (const auto& x : layer) {
    for (const auto& v : V) {
      nxt.insert(multiply(x, v));
      if (nxt.size() > budget) throw ResourceError("product set exceeds budget");
    }
  }
  return nxt;
}

std::uint64_t ipow(std::uint64_t b, std::int64_t e) {
  unsigned __int128 r = 1;
  for (std::int64_t i = 0; i < e; ++i) {
    r *= b;
    if (r > (static_cast<unsigned __int128>(1) << 62)) return std::uint64_t(1) << 62;
  }
  return static_cast<std::uint64_t>(r);
}

// Polynomial hash of syllable sequences modulo 2^61 - 1, with prefix tables
// so that a product's hash follows from its two factors and their junction.
class SyllableHasher {
 public:
  static constexpr std::uint64_t kMod = (std::uint64_t(1) << 61) - 1;
  explicit SyllableHasher(std::size_t n) : pw_(n + 1), ipw_(n + 1) {
    const std::uint64_t base = 1000003;
    std::uint64_t inv = powmod(base, kMod - 2);
    pw_[0] = ipw_[0] = 1;
    for (std::size_t i = 1; i <= n; ++i) {
      pw_[i] = mul(pw_[i - 1], base);
      ipw_[i] = mul(ipw_[i - 1], inv);
    }
  }
  static std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(z & kMod), hi = static_cast<std::uint64_t>(z >> 61);
    std::uint64_t s = lo + hi;
    return s >= kMod ? s - kMod : s;
  }
  static std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    return s >= kMod ? s - kMod : s;
  }
  static std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kMod - b; }
  static std::uint64_t powmod(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, b = mul(b, b))
      if (e & 1) r = mul(r, b);
    return r;
  }
  static std::uint64_t value(const Syllable& y) {
    std::uint64_t v = (static_cast<std::uint64_t>(y.factor) << 40) ^
                      static_cast<std::uint64_t>(y.exp + (std::int64_t(1) << 39));
    return v % (kMod - 1) + 1;
  }
  std::uint64_t shift(std::uint64_t h, std::size_t k) const { return mul(h, pw_[k]); }
  std::vector<std::uint64_t> prefixes(const Element& x) const {
    const auto& s = x.syllables();
    std::vector<std::uint64_t> p(s.size() + 1, 0);
    for (std::size_t i = 0; i < s.size(); ++i) p[i + 1] = add(p[i], shift(value(s[i]), i));
    return p;
  }
  // Hash of the syllables from position j on, re-based to position 0.
  std::uint64_t suffix(const std::vector<std::uint64_t>& p, std::size_t j) const {
    return mul(sub(p.back(), p[j]), ipw_[j]);
  }

 private:
  std::vector<std::uint64_t> pw_, ipw_;
};

}  // namespace

ElementSet product_set(const ElementSet& V, int r, std::uint64_t budget) {
  if (r < 0) throw DomainError("negative radius");
  const GroupSpec& g = group_of(V);
  ElemSet layer{identity(g)};
  for (int k = 0; k < r; ++k) layer = next_layer(layer, V, budget);
  ElementSet out(layer.begin(), layer.end());
  std::sort(out.begin(), out.end(), LexLess());
  return out;
}

std::vector<std::uint64_t> product_set_sizes(const ElementSet& V, int r_max,
                                             std::uint64_t budget) {
  if (r_max < 0) throw DomainError("negative radius");
  const GroupSpec& g = group_of(V);
  std::vector<std::uint64_t> out{1};
  ElemSet layer{identity(g)};
  for (int k = 1; k <= r_max; ++k) {
    layer = next_layer(layer, V, budget);
    out.push_back(layer.size());
  }
  return out;
}

std::uint64_t count_product_set_at_least(const ElementSet& V, int r,
                                         std::uint64_t target, std::uint64_t budget) {
  if (r < 0) throw DomainError("negative radius");
  const GroupSpec& g = group_of(V);
  if (r == 0 || target <= 1) return std::min<std::uint64_t>(1, target);
  std::size_t maxlen = 1;
  for (const auto& v : V) maxlen = std::max(maxlen, v.size());
  SyllableHasher H(maxlen * static_cast<std::size_t>(r) + 2);
  std::vector<std::vector<std::uint64_t>> pv;
  for (const auto& v : V) pv.push_back(H.prefixes(v));
  // Distinct hashes imply distinct elements, so the count never overstates.
  std::unordered_set<std::uint64_t> seen;
  std::uint64_t visited = 0;
  bool done = false;
  std::function<void(const Element&, int)> rec = [&](const Element& x, int depth) {
    if (done) return;
    if (depth + 1 == r) {
      // Leaves are hashed from the junction without forming the product.
      auto px = H.prefixes(x);
      const auto& X = x.syllables();
      for (std::size_t a = 0; a < V.size() && !done; ++a) {
        if (++visited > budget) throw ResourceError("product enumeration exceeds budget");
        const auto& Y = V[a].syllables();
        std::size_t i = X.size(), j = 0;
        std::optional<Syllable> merged;
        while (i > 0 && j < Y.size() && X[i - 1].factor == Y[j].factor) {
          auto f = static_cast<std::size_t>(Y[j].factor);
          std::int64_t e = g.reduce(f, X[i - 1].exp + Y[j].exp);
          --i;
          ++j;
          if (e != 0) {
            merged = Syllable{Y[j - 1].factor, e};
            break;
          }
        }
        std::uint64_t h = px[i];
        std::size_t len = i;
        if (merged) h = H.add(h, H.shift(H.value(*merged), len++));
        h = H.add(h, H.shift(H.suffix(pv[a], j), len));
        seen.insert(h);
        if (seen.size() >= target) done = true;
      }
      return;
    }
    for (const auto& v : V) {
      if (++visited > budget) throw ResourceError("product enumeration exceeds budget");
      rec(multiply(x, v), depth + 1);
      if (done) return;
    }
  };
  rec(identity(g), 0);
  return std::min<std::uint64_t>(seen.size(), target);
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw DomainError("slope fit needs at least two points");
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double den = n * sxx - sx * sx;
  if (den == 0) throw DomainError("degenerate abscissae in slope fit");
  return (n * sxy - sx * sy) / den;
}

GrowthReport verify_growth_theorem(const ElementSet& U, int r_max,
                                   const ReductionParams& prm, std::uint64_t budget,
                                   std::uint64_t exact_cap) {
  auto t0 = std::chrono::steady_clock::now();
  GrowthReport rep;
  rep.V = U;
  rep.group = group_of(U).describe();
  try {
    rep.semigroup = construct_free_semigroup(U, prm);
  } catch (const DomainError& e) {
    rep.status = "skipped";
    rep.note = e.what();
    return rep;
  }
  const auto& fs = *rep.semigroup;
  rep.lambda = fs.lambda;
  rep.cardinality_bound = fs.cardinality_bound;
  if (fs.small_set) {
    rep.status = "small_set";
    rep.note = "|U| <= 400 kappa N / delta = " + std::to_string(fs.small_set_gate);
    return rep;
  }
  rep.W_size = fs.W.size();
  double base = static_cast<double>(U.size()) * prm.delta /
                (1e6 * static_cast<double>(prm.acyl_N) * static_cast<double>(fs.lambda));
  std::size_t max_syl = 1;
  for (const auto& u : U) max_syl = std::max(max_syl, u.size());
  bool all = true;
  for (int r = 0; r <= r_max; ++r) {
    GrowthRow row;
    row.r = r;
    std::int64_t s = half_ceil(r);
    row.corollary_bound = std::pow(base, static_cast<double>(s));
    row.semigroup_bound = ipow(rep.W_size, s);
    double products = std::pow(static_cast<double>(U.size()), r);
    // Stored normal forms of the last layer, in syllables.
    double volume = products * r * static_cast<double>(max_syl);
    if (products <= static_cast<double>(exact_cap) && volume <= kExactSyllables) {
      row.count = product_set_sizes(U, r, budget).back();
    } else {
      std::uint64_t target = std::max<std::uint64_t>(
          row.semigroup_bound,
          static_cast<std::uint64_t>(std::ceil(row.corollary_bound - slack(row.corollary_bound))));
      row.count = count_product_set_at_least(U, r, target, budget);
      row.exact = false;
    }
    row.corollary_holds = ge(static_cast<double>(row.count), row.corollary_bound);
    row.semigroup_holds = row.count >= row.semigroup_bound;
    all = all && row.corollary_holds && row.semigroup_holds;
    rep.rows.push_back(row);
  }
  rep.status = all ? "verified" : "failed";
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

OptimalityReport run_optimality_example(const std::vector<int>& Ns, std::int64_t n,
                                        int r_max, double tolerance,
                                        std::uint64_t budget) {
  if (Ns.size() < 2) throw ConfigError("the N sweep needs at least two values");
  if (r_max < 1) throw ConfigError("r_max must be positive");
  OptimalityReport rep;
  rep.n = n;
  rep.r_max = r_max;
  rep.Ns = Ns;
  rep.tolerance = tolerance;
  int Nmax = 0;
  for (int N : Ns) {
    if (N < 1) throw ConfigError("N must be positive");
    Nmax = std::max(Nmax, N);
  }
  // Exponents of g in V_N^r range over [0, N r]; they stay distinct mod n and
  // inside the symmetric residue window only when 2 N r < n.
  if (2 * static_cast<std::int64_t>(Nmax) * r_max >= n)
    throw ConfigError("order n too small for the N sweep: powers of g wrap around");
  auto G = make_group({n, 0}, {"g", "h"});
  for (int N : Ns) {
    ElementSet V{identity(*G)};
    for (int k = 1; k <= N; ++k) V.push_back(generator(*G, 0, k));
    V.push_back(generator(*G, 1, 1));
    rep.set_sizes.push_back(V.size());
    rep.counts.push_back(product_set_sizes(V, r_max, budget));
  }
  rep.slopes.assign(static_cast<std::size_t>(r_max) + 1, 0.0);
  rep.expected.assign(static_cast<std::size_t>(r_max) + 1, 0.0);
  rep.within.assign(static_cast<std::size_t>(r_max) + 1, false);
  std::vector<double> xs;
  for (int N : Ns) xs.push_back(std::log(static_cast<double>(N)));
  for (int r = 1; r <= r_max; ++r) {
    std::vector<double> ys;
    for (const auto& c : rep.counts) ys.push_back(std::log(static_cast<double>(c[static_cast<std::size_t>(r)])));
    auto ri = static_cast<std::size_t>(r);
    rep.slopes[ri] = fit_slope(xs, ys);
    rep.expected[ri] = static_cast<double>(half_ceil(r));
    rep.within[ri] = std::fabs(rep.slopes[ri] - rep.expected[ri]) <= tolerance;
  }
  rep.note = "V_N as listed has N+2 elements (1, g, ..., g^N, h), not N+1";
  return rep;
}

double entropy_estimate(const ElementSet& V, int r, std::uint64_t budget) {
  if (r < 1) throw DomainError("entropy estimate needs r >= 1");
  auto sizes = product_set_sizes(V, r, budget);
  return std::log(static_cast<double>(sizes.back())) / static_cast<double>(r);
}

}  // namespace pgrowth
