#include "pgrowth/words.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <unordered_set>

#include "pgrowth/numeric.hpp"
#include "pgrowth/reduction.hpp"

namespace pgrowth {

namespace {

ScanCounters g_counters;

std::vector<Letter> slice(const std::vector<Letter>& s, std::size_t a, std::size_t b) {
  return std::vector<Letter>(s.begin() + static_cast<std::ptrdiff_t>(a),
                             s.begin() + static_cast<std::ptrdiff_t>(b));
}

// Least period of s via the prefix function.
std::size_t least_period(const std::vector<Letter>& s) {
  std::size_t n = s.size();
  if (n == 0) return 0;
  std::vector<std::size_t> pi(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = pi[i - 1];
    while (k > 0 && !(s[i] == s[k])) k = pi[k - 1];
    if (s[i] == s[k]) ++k;
    pi[i] = k;
  }
  return n - pi[n - 1];
}

struct Candidate {
  std::size_t pos;
  std::size_t q;
};

// All periods E with every point within D of C_E and
// |pts.front() - pts.back()| > m tau(E).
std::vector<Period> lines_near(const std::vector<Element>& pts, double D, double m,
                               bool fast) {
  std::vector<Period> out;
  const Element& x0 = pts.front();
  const Element& xL = pts.back();
  std::int64_t len = dist(x0, xL);
  if (!gt(static_cast<double>(len), m)) return out;  // tau >= 1
  const GroupSpec& g = *(x0.group() ? x0.group() : xL.group());
  auto s = multiply(invert(x0), xL).letters();
  std::size_t n = s.size();
  std::size_t fd = static_cast<std::size_t>(std::max<std::int64_t>(0, floor_tol(D)));
  std::vector<Candidate> cands;
  if (fast) {
    if (n > 2 * fd) {
      auto core = slice(s, fd, n - fd);
      std::size_t per = least_period(core);
      if (2 * per <= core.size()) cands.push_back({fd, per});
    }
  } else {
    bool tree = g.is_free();
    for (std::size_t q = 1; q <= n; ++q) {
      if (!gt(static_cast<double>(len), m * static_cast<double>(q))) break;
      std::size_t t = 0;
      while (t + q <= n) {
        std::size_t e = t;
        while (e + q < n && s[e] == s[e + q]) ++e;
        // s has period q on [t, e + q).
        if (!tree || (t <= fd && e + q + fd >= n)) cands.push_back({t, q});
        t = e + 1;
      }
    }
  }
  std::vector<Element> keys;
  for (const auto& c : cands) {
    Element P = multiply(x0, from_letters(g, slice(s, 0, c.pos)));
    Element h = multiply(multiply(P, from_letters(g, slice(s, c.pos, c.pos + c.q))), invert(P));
    if (is_elliptic(h)) continue;
    Period E = period_of(h);
    if (!gt(static_cast<double>(len), m * static_cast<double>(E.tau()))) continue;
    Element k = E.key();
    if (std::find(keys.begin(), keys.end(), k) != keys.end()) continue;
    keys.push_back(k);
    bool near = true;
    for (const auto& x : pts) {
      if (!le(static_cast<double>(dist_to_period(x, E)), D)) {
        near = false;
        break;
      }
    }
    if (near) out.push_back(E);
  }
  return out;
}

struct Scan {
  const Alphabet& A;
  double D;
  double m;
  bool fast;
  bool at_m0;

  Scan(const Alphabet& a, double m_, bool exhaustive) : A(a), m(m_) {
    auto th = period_thresholds(a);
    D = th.D;
    at_m0 = ge(m, th.m0);
    fast = !exhaustive && at_m0 && a.group().is_free();
  }

  std::vector<Period> periods(const std::vector<Element>& pts) const {
    auto out = lines_near(pts, D, m, fast);
    ++g_counters.periodic_scans;
    if (!out.empty()) ++g_counters.uniqueness_checks;
    if (out.size() > 1 && at_m0) ++g_counters.uniqueness_violations;
    return out;
  }
};

std::uint64_t checked_pow(std::uint64_t b, int e) {
  unsigned __int128 r = 1;
  for (int i = 0; i < e; ++i) {
    r *= b;
    if (r > (static_cast<unsigned __int128>(1) << 63))
      throw ResourceError("word count exceeds 64-bit range");
  }
  return static_cast<std::uint64_t>(r);
}

std::int64_t floor_5delta(double delta) {
  return std::max<std::int64_t>(0, floor_tol(5 * delta));
}

// The bi-infinite periodic extension of x is a geodesic line of a hyperbolic
// element: cyclically no cancellation and finite-factor syllables in range.
bool valid_root(const GroupSpec& g, const std::vector<Letter>& x) {
  std::size_t q = x.size();
  bool one_factor = std::all_of(x.begin(), x.end(),
                                [&](const Letter& l) { return l.factor == x[0].factor; });
  if (one_factor) {
    bool same_sign = std::all_of(x.begin(), x.end(),
                                 [&](const Letter& l) { return l.sign == x[0].sign; });
    return same_sign && g.max_exponent(static_cast<std::size_t>(x[0].factor)) == 0;
  }
  // Start the cyclic scan at a syllable boundary.
  std::size_t start = 0;
  while (x[start].factor == x[(start + q - 1) % q].factor) ++start;
  std::int64_t run = 0;
  for (std::size_t k = 0; k < q; ++k) {
    const Letter& cur = x[(start + k) % q];
    const Letter& nxt = x[(start + k + 1) % q];
    ++run;
    if (cur.factor == nxt.factor) {
      if (cur.sign != nxt.sign) return false;
      continue;
    }
    std::int64_t mx = g.max_exponent(static_cast<std::size_t>(cur.factor));
    if (mx != 0 && run > mx) return false;
    run = 0;
  }
  return true;
}

// Signed position of y along the geodesic line c * axis(r), if y lies on it.
std::optional<std::int64_t> line_position(const Element& y, const Period& E,
                                          const std::vector<Letter>& fwd,
                                          const std::vector<Letter>& bwd) {
  auto yl = multiply(invert(E.conjugator), y).letters();
  auto n = static_cast<std::int64_t>(yl.size());
  for (const auto* r : {&fwd, &bwd}) {
    bool ok = true;
    for (std::size_t j = 0; j < yl.size() && ok; ++j) ok = yl[j] == (*r)[j % r->size()];
    if (ok) return r == &fwd ? n : -n;
  }
  return std::nullopt;
}

}  // namespace

Alphabet make_alphabet(const ElementSet& W, const Element& p, double alpha,
                       double delta, bool validate) {
  if (W.empty()) throw DomainError("alphabet must be nonempty");
  Alphabet A;
  A.images = W;
  A.base = p.group() ? p : identity(*W.front().group());
  A.alpha = alpha;
  A.delta = delta;
  for (const auto& u : W) A.lambda = std::max(A.lambda, displacement(u, A.base));
  if (validate) {
    auto rep = check_reduced(W, A.base, alpha, delta);
    if (rep.kind != ReducedKind::StronglyReduced)
      throw DomainError("alphabet images are not strongly reduced (" + rep.violated + ")");
  }
  return A;
}

Element Period::generator() const { return conjugate(conjugator, root); }

Element Period::key() const {
  Element g = generator();
  Element gi = invert(g);
  return lex_less(gi, g) ? gi : g;
}

Period period_of(const Element& h) {
  if (is_elliptic(h)) throw DomainError("period of an elliptic element");
  auto cr = cyclic_reduce(h);
  auto pr = primitive_root(cr.core);
  return Period{pr.root, cr.conjugator};
}

bool same_subgroup(const Period& a, const Period& b) { return a.key() == b.key(); }

std::int64_t dist_to_period(const Element& x, const Period& E) {
  return dist_to_line(x, E.conjugator, E.root);
}

Element image(const Alphabet& A, const MonoidWord& w) {
  return evaluate_word(A.images, w, A.group());
}

std::vector<Element> trace(const Alphabet& A, const MonoidWord& w) {
  std::vector<Element> pts{A.base};
  Element g = identity(A.group());
  for (int i : w) {
    if (i < 0 || static_cast<std::size_t>(i) >= A.size())
      throw DomainError("letter outside the alphabet");
    g = multiply(g, A.images[static_cast<std::size_t>(i)]);
    pts.push_back(multiply(g, A.base));
  }
  return pts;
}

PeriodThresholds period_thresholds(const Alphabet& A, double lambda_S, double epsilon) {
  if (!(epsilon > 0 && epsilon < 0.5)) throw ConfigError("epsilon must lie in (0, 1/2)");
  PeriodThresholds t;
  t.epsilon = epsilon;
  t.D = A.alpha + 100 * A.delta;
  t.tau_min = 1.0;
  double tau = t.tau_min;
  double lam = static_cast<double>(A.lambda);
  if (lambda_S < 0) lambda_S = lam;
  t.m0 = 2 + 2 * t.D / tau;
  double a = std::nextafter(t.m0 + 5 * lam / tau, std::numeric_limits<double>::infinity());
  double b = 2 * t.m0 * lam / A.delta + 3 * lam / tau;
  double c = (lam / tau) *
             ((2 * t.m0 * tau / A.delta + 3) * std::log(2.0) -
              std::log(epsilon / (4 * (1 - epsilon)))) /
             std::log(2 * (1 - epsilon));
  double d = lam / tau;
  t.m1 = std::max({a, b, c, d});
  t.m2 = t.m1 + (2 * lambda_S + 20 * A.delta) / tau;
  return t;
}

bool is_m_periodic(const Alphabet& A, const MonoidWord& w, const Period& E, double m) {
  auto pts = trace(A, w);
  if (!gt(static_cast<double>(dist(pts.front(), pts.back())),
          m * static_cast<double>(E.tau())))
    return false;
  double D = A.alpha + 100 * A.delta;
  for (const auto& x : pts)
    if (!le(static_cast<double>(dist_to_period(x, E)), D)) return false;
  return true;
}

std::vector<Period> periods_of(const Alphabet& A, const MonoidWord& w, double m,
                               bool exhaustive) {
  Scan sc(A, m, exhaustive);
  return sc.periods(trace(A, w));
}

std::vector<MonoidWord> find_minimal_periodic_prefixes(const Alphabet& A,
                                                       const Period& E, double m,
                                                       int radius,
                                                       std::uint64_t budget) {
  std::vector<MonoidWord> out;
  ++g_counters.minimal_scans;
  double D = A.alpha + 100 * A.delta;
  double thr = m * static_cast<double>(E.tau());
  if (!le(static_cast<double>(dist_to_period(A.base, E)), D)) return out;
  std::uint64_t visited = 0;
  MonoidWord w;
  std::vector<Element> prefix{identity(A.group())};
  // Depth-first over words whose trace stays near C_E; periodic words are
  // leaves, since their extensions have a periodic proper prefix.
  std::function<void()> rec = [&]() {
    if (static_cast<int>(w.size()) >= radius) return;
    for (std::size_t a = 0; a < A.size(); ++a) {
      if (++visited > budget) throw ResourceError("periodic prefix scan exceeds budget");
      Element g = multiply(prefix.back(), A.images[a]);
      Element x = multiply(g, A.base);
      if (!le(static_cast<double>(dist_to_period(x, E)), D)) continue;
      w.push_back(static_cast<int>(a));
      if (gt(static_cast<double>(dist(A.base, x)), thr)) {
        out.push_back(w);
      } else {
        prefix.push_back(g);
        rec();
        prefix.pop_back();
      }
      w.pop_back();
    }
  };
  rec();
  g_counters.max_minimal_found =
      std::max<std::uint64_t>(g_counters.max_minimal_found, out.size());
  if (out.size() > 2) {
    ++g_counters.minimal_violations;
    throw InvariantError("more than two minimal periodic words share a period");
  }
  return out;
}

bool is_m_aperiodic(const Alphabet& A, const MonoidWord& w, double m) {
  Scan sc(A, m, false);
  auto pts = trace(A, w);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (!gt(static_cast<double>(dist(pts[i], pts[j])), m)) continue;
      std::vector<Element> sub(pts.begin() + static_cast<std::ptrdiff_t>(i),
                               pts.begin() + static_cast<std::ptrdiff_t>(j) + 1);
      if (!sc.periods(sub).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> aperiodic_sphere_counts(const Alphabet& A, double m, int r,
                                                   std::uint64_t budget) {
  if (r < 0) throw DomainError("negative radius");
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(r) + 1, 0);
  // A period needs |x - y| > m tau >= m, and words of length <= r move p by
  // at most r lambda.
  if (le(static_cast<double>(r) * static_cast<double>(A.lambda), m)) {
    for (int k = 0; k <= r; ++k) counts[static_cast<std::size_t>(k)] = checked_pow(A.size(), k);
    return counts;
  }
  Scan sc(A, m, false);
  std::uint64_t visited = 0;
  std::vector<Element> pts{A.base};
  Element g0 = identity(A.group());
  std::vector<Element> prefix{g0};
  std::function<void()> rec = [&]() {
    std::size_t k = pts.size() - 1;
    ++counts[k];
    if (++visited > budget) throw ResourceError("aperiodic count exceeds budget");
    if (static_cast<int>(k) >= r) return;
    for (std::size_t a = 0; a < A.size(); ++a) {
      Element g = multiply(prefix.back(), A.images[a]);
      pts.push_back(multiply(g, A.base));
      bool periodic = false;
      // Only subwords ending at the new letter are new.
      for (std::size_t i = 0; i + 1 < pts.size() && !periodic; ++i) {
        if (!gt(static_cast<double>(dist(pts[i], pts.back())), m)) continue;
        std::vector<Element> sub(pts.begin() + static_cast<std::ptrdiff_t>(i), pts.end());
        periodic = !sc.periods(sub).empty();
      }
      if (!periodic) {
        prefix.push_back(g);
        rec();
        prefix.pop_back();
      }
      pts.pop_back();
    }
  };
  rec();
  return counts;
}

std::uint64_t count_aperiodic(const Alphabet& A, double m, int r, std::uint64_t budget) {
  auto c = aperiodic_sphere_counts(A, m, r, budget);
  std::uint64_t total = 0;
  for (auto x : c) {
    if (total > std::numeric_limits<std::uint64_t>::max() - x)
      throw ResourceError("word count exceeds 64-bit range");
    total += x;
  }
  return total;
}

ScanCounters& scan_counters() { return g_counters; }
void reset_scan_counters() { g_counters = ScanCounters{}; }

bool contains_m_power_runs(const Element& g, double m, double delta) {
  if (g.is_identity()) return false;
  std::int64_t sl = floor_5delta(delta);
  std::int64_t n = g.length();
  // A run of period q fits only if q < (n + 2s) / m.
  double qmax = static_cast<double>(n + 2 * sl) / m;
  if (!(qmax > 1.0) && m > 0) return false;
  auto s = g.letters();
  const GroupSpec& G = *g.group();
  for (std::size_t q = 1; q <= s.size(); ++q) {
    if (m > 0 && !lt(static_cast<double>(q), qmax)) break;
    std::size_t t = 0;
    while (t + q <= s.size()) {
      std::size_t e = t;
      while (e + q < s.size() && s[e] == s[e + q]) ++e;
      std::int64_t run = static_cast<std::int64_t>(e - t + q);
      if (gt(static_cast<double>(run + 2 * sl), m * static_cast<double>(q)) &&
          valid_root(G, slice(s, t, t + q)))
        return true;
      t = e + 1;
    }
  }
  return false;
}

std::vector<PowerWitness> power_witnesses_geometric(const Element& g, double delta) {
  std::vector<PowerWitness> out;
  if (g.is_identity()) return out;
  const GroupSpec& G = *g.group();
  std::int64_t sl = floor_5delta(delta);
  auto s = g.letters();
  std::size_t n = s.size();
  std::vector<Element> V{identity(G)};
  for (const auto& l : s) {
    Element x = V.back();
    x.push_right(Syllable{l.factor, l.sign});
    V.push_back(x);
  }
  // Vertex neighbourhood of the geodesic.
  std::vector<Element> near = V;
  if (sl > 0) {
    auto B = ball(G, sl);
    std::unordered_set<Element, ElementHash> seen;
    near.clear();
    for (const auto& v : V)
      for (const auto& b : B) {
        Element y = multiply(v, b);
        if (seen.insert(y).second) near.push_back(y);
      }
  }
  std::vector<Element> keys;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t q = 1; i + q <= n; ++q) {
      Element x = from_letters(G, slice(s, i, i + q));
      Element h = multiply(multiply(V[i], x), invert(V[i]));
      if (is_elliptic(h)) continue;
      Period E = period_of(h);
      Element k = E.key();
      if (std::find(keys.begin(), keys.end(), k) != keys.end()) continue;
      keys.push_back(k);
      std::int64_t diam = 0;
      if (sl == 0) {
        // The line is geodesic, so distances along it are position gaps.
        auto fwd = E.root.letters();
        auto bwd = invert(E.root).letters();
        std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = -lo;
        for (const auto& y : near) {
          if (auto pos = line_position(y, E, fwd, bwd)) {
            lo = std::min(lo, *pos);
            hi = std::max(hi, *pos);
          }
        }
        if (lo > hi) continue;
        diam = hi - lo;
      } else {
        std::vector<const Element*> common;
        for (const auto& y : near)
          if (dist_to_period(y, E) <= sl) common.push_back(&y);
        if (common.empty()) continue;
        for (std::size_t a = 0; a < common.size(); ++a)
          for (std::size_t b = a + 1; b < common.size(); ++b)
            diam = std::max(diam, dist(*common[a], *common[b]));
      }
      out.push_back(PowerWitness{diam, E.tau()});
    }
  }
  return out;
}

bool contains_m_power_geometric(const Element& g, double m, double delta) {
  for (const auto& w : power_witnesses_geometric(g, delta))
    if (gt(static_cast<double>(w.diameter), m * static_cast<double>(w.tau))) return true;
  return false;
}

std::uint64_t count_power_free(const Alphabet& A, const Element& v, double m, int r,
                               std::uint64_t budget) {
  if (r < 0) throw DomainError("negative radius");
  ElementSet T;
  for (const auto& u : A.images) T.push_back(multiply(u, v));
  std::unordered_set<Element, ElementHash> layer{identity(A.group())};
  for (int k = 0; k < r; ++k) {
    std::unordered_set<Element, ElementHash> nxt;
    for (const auto& x : layer) {
      for (const auto& t : T) {
        nxt.insert(multiply(x, t));
        if (nxt.size() > budget) throw ResourceError("product set exceeds budget");
      }
    }
    layer = std::move(nxt);
  }
  std::uint64_t count = 0;
  for (const auto& x : layer)
    if (!contains_m_power_runs(x, m, A.delta)) ++count;
  return count;
}

}  // namespace pgrowth
