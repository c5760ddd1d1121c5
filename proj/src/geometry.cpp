#include "pgrowth/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace pgrowth {

namespace {

std::int64_t iabs(std::int64_t x) { return x < 0 ? -x : x; }

std::int64_t max_half(const GroupSpec& g) {
  std::int64_t h = 1;
  for (std::size_t f = 0; f < g.rank(); ++f) h = std::max(h, g.max_exponent(f));
  return h;
}

bool extends(const GroupSpec& g, const Element& x, const Letter& l) {
  if (x.is_identity()) return true;
  const Syllable& last = x.syllables().back();
  if (last.factor != l.factor) return true;
  if ((last.exp < 0) != (l.sign < 0)) return false;
  std::int64_t mx = g.max_exponent(l.factor);
  return mx == 0 || iabs(last.exp) < mx;
}

void walk_rec(const GroupSpec& g, const std::vector<Letter>& steps,
              const Element& x, std::int64_t R,
              const std::function<bool(const Element&)>& visit) {
  if (!visit(x)) return;
  if (x.length() >= R) return;
  for (const auto& l : steps) {
    if (!extends(g, x, l)) continue;
    Element y = x;
    y.push_right(Syllable{l.factor, l.sign});
    walk_rec(g, steps, y, R, visit);
  }
}

}  // namespace

void MetricConfig::validate() const {
  if (!(delta > 0)) throw ConfigError("delta must be positive");
  if (!(kappa >= delta)) throw ConfigError("kappa must be at least delta");
  if (acyl_N < 1) throw ConfigError("acylindricity bound N must be positive");
  if (!(rho > 0)) throw ConfigError("cone radius must be positive");
}

std::int64_t dist(const Element& x, const Element& y) {
  const auto& a = x.syllables();
  const auto& b = y.syllables();
  std::size_t k = 0;
  std::int64_t common = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) {
    common += iabs(a[k].exp);
    ++k;
  }
  std::int64_t ta = x.length() - common;
  std::int64_t tb = y.length() - common;
  if (k < a.size() && k < b.size() && a[k].factor == b[k].factor) {
    const GroupSpec* g = x.group() ? x.group() : y.group();
    std::int64_t m = iabs(g->reduce(a[k].factor, b[k].exp - a[k].exp));
    return ta - iabs(a[k].exp) + tb - iabs(b[k].exp) + m;
  }
  return ta + tb;
}

std::int64_t gromov2(const Element& x, const Element& y, const Element& base) {
  return dist(x, base) + dist(y, base) - dist(x, y);
}

double gromov_product(const Element& x, const Element& y, const Element& base) {
  return 0.5 * static_cast<double>(gromov2(x, y, base));
}

GeodesicWord geodesic(const Element& x, const Element& y) {
  return GeodesicWord{x, y, multiply(invert(x), y).letters()};
}

std::int64_t translation_length(const Element& h) {
  return cyclic_reduce(h).core.length();
}

std::int64_t stable_translation_length(const Element& h) {
  return is_elliptic(h) ? 0 : cyclic_reduce(h).core.length();
}

std::int64_t dist_to_line(const Element& x, const Element& c,
                          const Element& root) {
  if (root.is_identity() || !is_cyclically_reduced(root) || is_elliptic(root))
    throw DomainError("line root must be cyclically reduced and hyperbolic");
  const GroupSpec& g = *root.group();
  Element y = multiply(invert(c), x);
  auto yl = y.letters();
  std::int64_t H = max_half(g);
  std::int64_t best = y.length();
  for (int dir = 0; dir < 2; ++dir) {
    auto rl = (dir == 0 ? root : invert(root)).letters();
    std::size_t tau = rl.size();
    std::size_t k = 0;
    while (k < yl.size() && yl[k] == rl[k % tau]) ++k;
    std::int64_t lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(k) - H - 1);
    std::int64_t hi = static_cast<std::int64_t>(k) + H + 1;
    std::vector<Letter> pref;
    for (std::int64_t j = 0; j < lo; ++j) pref.push_back(rl[static_cast<std::size_t>(j) % tau]);
    Element p = from_letters(g, pref);
    for (std::int64_t j = lo; j <= hi; ++j) {
      best = std::min(best, dist(p, y));
      p.push_right(Syllable{rl[static_cast<std::size_t>(j) % tau].factor,
                            rl[static_cast<std::size_t>(j) % tau].sign});
    }
  }
  return best;
}

std::int64_t dist_to_axis(const Element& x, const Element& h) {
  if (is_elliptic(h)) throw DomainError("dist_to_axis of an elliptic element");
  auto cr = cyclic_reduce(h);
  return dist_to_line(x, cr.conjugator, cr.core);
}

double estimate_delta(const std::vector<Quadruple>& samples) {
  if (samples.empty()) throw DomainError("estimate_delta needs samples");
  std::int64_t worst = 0;
  for (const auto& q : samples) {
    for (int t = 0; t < 4; ++t) {
      std::array<const Element*, 3> o{};
      int n = 0;
      for (int i = 0; i < 4; ++i)
        if (i != t) o[static_cast<std::size_t>(n++)] = &q[static_cast<std::size_t>(i)];
      const Element& b = q[static_cast<std::size_t>(t)];
      std::array<std::int64_t, 3> p{gromov2(*o[0], *o[1], b),
                                    gromov2(*o[1], *o[2], b),
                                    gromov2(*o[0], *o[2], b)};
      std::sort(p.begin(), p.end());
      worst = std::max(worst, p[1] - p[0]);
    }
  }
  return 0.5 * static_cast<double>(worst);
}

double estimate_delta_ball(const GroupSpec& g, int radius) {
  if (radius < 0 || radius > 4)
    throw DomainError("exhaustive delta estimation supports radius <= 4");
  auto B = ball(g, radius);
  std::size_t n = B.size();
  std::vector<std::int64_t> D(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) D[i * n + j] = dist(B[i], B[j]);
  std::int64_t worst = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const std::int64_t* Dt = &D[t * n];
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        std::int64_t pxy = Dt[x] + Dt[y] - D[x * n + y];
        for (std::size_t z = y + 1; z < n; ++z) {
          std::int64_t pyz = Dt[y] + Dt[z] - D[y * n + z];
          std::int64_t pxz = Dt[x] + Dt[z] - D[x * n + z];
          std::int64_t lo = std::min({pxy, pyz, pxz});
          std::int64_t hi = std::max({pxy, pyz, pxz});
          std::int64_t mid = pxy + pyz + pxz - lo - hi;
          worst = std::max(worst, mid - lo);
        }
      }
    }
  }
  return 0.5 * static_cast<double>(worst);
}

bool extends_geodesically(const Element& x, const Letter& l) {
  return extends(*x.group(), x, l);
}

std::vector<Letter> alphabet_letters(const GroupSpec& g) {
  std::vector<Letter> out;
  for (std::size_t f = 0; f < g.rank(); ++f) {
    out.push_back(Letter{static_cast<std::int32_t>(f), 1});
    out.push_back(Letter{static_cast<std::int32_t>(f), -1});
  }
  return out;
}

void walk_ball(const GroupSpec& g, std::int64_t R,
               const std::function<bool(const Element&)>& visit) {
  auto steps = alphabet_letters(g);
  walk_rec(g, steps, identity(g), R, visit);
}

std::vector<Element> ball(const GroupSpec& g, std::int64_t R) {
  std::vector<Element> out;
  walk_ball(g, R, [&](const Element& x) {
    out.push_back(x);
    return true;
  });
  return out;
}

std::vector<Element> sphere(const GroupSpec& g, std::int64_t R) {
  std::vector<Element> out;
  walk_ball(g, R, [&](const Element& x) {
    if (x.length() == R) out.push_back(x);
    return true;
  });
  return out;
}

std::uint64_t ball_size(const GroupSpec& g, std::int64_t R, std::uint64_t cap) {
  if (R < 0) return 0;
  std::size_t F = g.rank();
  auto sat = [cap](std::uint64_t a, std::uint64_t b) {
    return a > cap - std::min(cap, b) ? cap : a + b;
  };
  // E[n][f]: normal forms of length n ending in a syllable of factor f.
  std::vector<std::vector<std::uint64_t>> E(static_cast<std::size_t>(R) + 1,
                                            std::vector<std::uint64_t>(F, 0));
  std::uint64_t total = 1;
  for (std::int64_t n = 1; n <= R; ++n) {
    for (std::size_t f = 0; f < F; ++f) {
      std::int64_t mx = g.max_exponent(f);
      std::int64_t top = mx == 0 ? n : std::min(n, mx);
      std::uint64_t acc = 0;
      for (std::int64_t l = 1; l <= top; ++l) {
        std::uint64_t prev = (l == n) ? 1 : 0;
        if (l < n)
          for (std::size_t f2 = 0; f2 < F; ++f2)
            if (f2 != f) prev = sat(prev, E[static_cast<std::size_t>(n - l)][f2]);
        acc = sat(acc, sat(prev, prev));
      }
      E[static_cast<std::size_t>(n)][f] = acc;
      total = sat(total, acc);
    }
  }
  return total;
}

}  // namespace pgrowth
