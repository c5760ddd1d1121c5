#include "pgrowth/energy.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pgrowth/numeric.hpp"

namespace pgrowth {

namespace {

const GroupSpec& group_of(const ElementSet& U, const Element& x) {
  if (x.group()) return *x.group();
  for (const auto& u : U)
    if (u.group()) return *u.group();
  throw ConfigError("elements carry no group");
}

std::size_t lcp(const std::vector<Letter>& a, const std::vector<Letter>& b) {
  std::size_t n = std::min(a.size(), b.size()), k = 0;
  while (k < n && a[k] == b[k]) ++k;
  return k;
}

std::vector<Letter> prefix(const std::vector<Letter>& a, std::int64_t n) {
  n = std::clamp<std::int64_t>(n, 0, static_cast<std::int64_t>(a.size()));
  return std::vector<Letter>(a.begin(), a.begin() + n);
}

std::int64_t sphere_radius(double delta) {
  std::int64_t R = std::llround(1000 * delta);
  if (R < 1) throw ConfigError("delta too small: sphere radius rounds to 0");
  return R;
}

Element argmax_witness(const ElementSet& U, const Element& x, std::int64_t* val) {
  Element best;
  std::int64_t bv = -1;
  for (const auto& u : U) {
    std::int64_t d = displacement(u, x);
    if (d > bv || (d == bv && lex_less(u, best))) {
      bv = d;
      best = u;
    }
  }
  if (val) *val = bv;
  return best;
}

}  // namespace

std::int64_t displacement(const Element& u, const Element& x) {
  return dist(multiply(u, x), x);
}

std::int64_t energy_at(const ElementSet& U, const Element& x) {
  if (U.empty()) throw DomainError("energy of an empty set");
  std::int64_t m = 0;
  for (const auto& u : U) m = std::max(m, displacement(u, x));
  return m;
}

Element lex_least_sphere_point(const GroupSpec& g, const std::vector<Letter>& pre,
                               std::int64_t R) {
  Element x = from_letters(g, pre);
  auto steps = alphabet_letters(g);
  while (x.length() < R) {
    bool moved = false;
    for (const auto& l : steps) {
      if (extends_geodesically(x, l)) {
        x.push_right(Syllable{l.factor, l.sign});
        moved = true;
        break;
      }
    }
    if (!moved) throw InvariantError("sphere point cannot be extended");
  }
  return x;
}

EnergyCertificate find_energy_minimizer(const ElementSet& U, std::uint64_t budget) {
  if (U.empty()) throw DomainError("energy of an empty set");
  const GroupSpec& g = group_of(U, Element());
  Element e = identity(g);
  std::int64_t lam_e = energy_at(U, e);
  EnergyCertificate c;
  c.search_radius = lam_e;
  if (g.is_free()) {
    auto steps = alphabet_letters(g);
    Element x = e;
    std::int64_t f = lam_e;
    std::uint64_t visited = 1;
    for (;;) {
      Element best;
      std::int64_t bf = f;
      for (const auto& l : steps) {
        Element y = x;
        y.push_right(Syllable{l.factor, l.sign});
        std::int64_t fy = energy_at(U, y);
        ++visited;
        if (fy < bf) {
          bf = fy;
          best = y;
        }
      }
      if (bf >= f) break;
      x = best;
      f = bf;
    }
    // Retract towards e inside the (convex) set of minimisers.
    while (!x.is_identity()) {
      auto l = x.letters();
      l.pop_back();
      Element parent = from_letters(g, l);
      ++visited;
      if (energy_at(U, parent) != f) break;
      x = parent;
    }
    c.basepoint = x;
    c.energy_value = f;
    c.method = "tree_convexity";
    c.visited = visited;
  } else {
    std::uint64_t n = ball_size(g, lam_e, budget + 1);
    if (n > budget) {
      EnergyCertificate best;
      best.basepoint = e;
      best.energy_value = lam_e;
      best.search_radius = lam_e;
      best.exhaustive = false;
      best.method = "exhaustive_ball";
      best.witness = argmax_witness(U, e, nullptr);
      throw EnergyBudgetError("energy search ball exceeds budget", best);
    }
    Element bx = e;
    std::int64_t bf = lam_e;
    std::uint64_t visited = 0;
    walk_ball(g, lam_e, [&](const Element& x) {
      ++visited;
      std::int64_t m = 0;
      for (const auto& u : U) {
        m = std::max(m, displacement(u, x));
        if (m >= bf) break;
      }
      if (m < bf) {
        bf = m;
        bx = x;
      }
      return true;
    });
    c.basepoint = bx;
    c.energy_value = bf;
    c.method = "exhaustive_ball";
    c.visited = visited;
  }
  c.witness = argmax_witness(U, c.basepoint, nullptr);
  return c;
}

SphereGeometry::SphereGeometry(const ElementSet& U, const Element& x, double delta,
                               std::uint64_t sphere_budget)
    : U_(U), x_(x), delta_(delta), R_(sphere_radius(delta)) {
  const GroupSpec& g = group_of(U, x);
  if (x_.group() == nullptr) x_ = identity(g);
  tree_ = g.is_free();
  Element xi = invert(x_);
  for (const auto& u : U_) disp_.push_back(displacement(u, x_));
  if (tree_) {
    for (const auto& u : U_) {
      fwd_.push_back(prefix(multiply({&xi, &u, &x_}).letters(), R_));
      Element ui = invert(u);
      bwd_.push_back(prefix(multiply({&xi, &ui, &x_}).letters(), R_));
    }
    return;
  }
  if (ball_size(g, R_, sphere_budget + 1) > sphere_budget)
    throw ResourceError("sphere too large for exhaustive direction sets");
  for (const auto& s : sphere(g, R_)) S_.push_back(multiply(x_, s));
  for (const auto& u : U_) {
    Element ux = multiply(u, x_);
    Element uix = multiply(invert(u), x_);
    std::vector<char> fm(S_.size()), bm(S_.size());
    for (std::size_t a = 0; a < S_.size(); ++a) {
      fm[a] = le(0.5 * static_cast<double>(gromov2(x_, ux, S_[a])), delta_);
      bm[a] = le(0.5 * static_cast<double>(gromov2(uix, x_, S_[a])), delta_);
    }
    fmask_.push_back(std::move(fm));
    bmask_.push_back(std::move(bm));
  }
}

bool SphereGeometry::large(std::size_t i) const {
  return ge(static_cast<double>(disp_[i]), 4000 * delta_);
}

std::int64_t SphereGeometry::lcp_with(const std::vector<Letter>& pref,
                                      const Element& y) const {
  auto yl = multiply(invert(x_), y).letters();
  return static_cast<std::int64_t>(lcp(pref, yl));
}

bool SphereGeometry::meets(const std::vector<Letter>& pref,
                           const std::vector<char>& mask, const Sector& A) const {
  if (tree_) {
    std::int64_t L0 = R_ - floor_tol(delta_);
    if (L0 > static_cast<std::int64_t>(pref.size())) return false;
    if (A.kind == Sector::Kind::All) return true;
    std::int64_t L1 = R_ - floor_tol(A.radius / 2);
    std::int64_t k = lcp_with(pref, A.center);
    if (A.kind == Sector::Kind::Ball) return L1 <= 0 || k >= std::min(L0, L1);
    return L1 > 0 && (k < L1 || L0 < L1);
  }
  for (std::size_t a = 0; a < S_.size(); ++a) {
    if (!mask[a]) continue;
    if (A.kind == Sector::Kind::All) return true;
    bool in = le(static_cast<double>(dist(S_[a], A.center)), A.radius);
    if (in == (A.kind == Sector::Kind::Ball)) return true;
  }
  return false;
}

bool SphereGeometry::meets_forward(std::size_t i, const Sector& A) const {
  static const std::vector<char> none;
  return meets(tree_ ? fwd_[i] : std::vector<Letter>{}, tree_ ? none : fmask_[i], A);
}

bool SphereGeometry::meets_backward(std::size_t i, const Sector& B) const {
  static const std::vector<char> none;
  return meets(tree_ ? bwd_[i] : std::vector<Letter>{}, tree_ ? none : bmask_[i], B);
}

std::vector<std::size_t> SphereGeometry::direction_set(const Sector& A,
                                                       const Sector& B) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < U_.size(); ++i)
    if (large(i) && meets_forward(i, A) && meets_backward(i, B)) out.push_back(i);
  return out;
}

Element SphereGeometry::forward_point(std::size_t i) const {
  const GroupSpec& g = *x_.group();
  if (tree_) {
    return multiply(x_, lex_least_sphere_point(
                            g, prefix(fwd_[i], R_ - floor_tol(delta_)), R_));
  }
  for (std::size_t a = 0; a < S_.size(); ++a)
    if (fmask_[i][a]) return S_[a];
  throw DomainError("no sphere point realises the forward direction");
}

Element SphereGeometry::backward_point(std::size_t i) const {
  const GroupSpec& g = *x_.group();
  if (tree_) {
    return multiply(x_, lex_least_sphere_point(
                            g, prefix(bwd_[i], R_ - floor_tol(delta_)), R_));
  }
  for (std::size_t a = 0; a < S_.size(); ++a)
    if (bmask_[i][a]) return S_[a];
  throw DomainError("no sphere point realises the backward direction");
}

SphereGeometry::Capture SphereGeometry::heaviest_direction() const {
  const GroupSpec& g = *x_.group();
  Capture best;
  if (tree_) {
    std::int64_t T = R_ - std::max(floor_tol(delta_), floor_tol(50 * delta_));
    std::map<std::vector<int>, std::size_t> classes;
    for (std::size_t i = 0; i < U_.size(); ++i) {
      if (!large(i)) continue;
      auto a = prefix(fwd_[i], T), b = prefix(bwd_[i], T);
      if (a != b) continue;
      std::vector<int> key;
      for (const auto& l : a) key.push_back(l.code());
      ++classes[key];
    }
    std::vector<Letter> key_letters;
    for (const auto& [key, cnt] : classes) {
      if (cnt > best.count) {
        best.count = cnt;
        key_letters.clear();
        for (int c : key) key_letters.push_back(Letter{c / 2, static_cast<std::int8_t>(c % 2 ? -1 : 1)});
      }
    }
    best.y = multiply(x_, lex_least_sphere_point(g, key_letters, R_));
    return best;
  }
  bool have = false;
  for (const auto& y : S_) {
    Sector s = Sector::ball(y, 100 * delta_);
    std::size_t cnt = direction_set(s, s).size();
    if (!have || cnt > best.count) {
      best.count = cnt;
      best.y = y;
      have = true;
    }
  }
  return best;
}

SphereGeometry::Capture SphereGeometry::first_heavy_direction() const {
  // Capture classes are disjoint on trees, so at most one exceeds 3/4.
  if (tree_) {
    Capture c = heaviest_direction();
    if (4 * c.count <= 3 * U_.size()) c.count = 0;
    return c;
  }
  for (const auto& y : S_) {
    Sector s = Sector::ball(y, 100 * delta_);
    std::size_t cnt = direction_set(s, s).size();
    if (4 * cnt > 3 * U_.size()) return Capture{cnt, y};
  }
  return Capture{};
}

ElementSet direction_set(const ElementSet& U, const Element& x, const ElementSet& A,
                         const ElementSet& B, double delta) {
  std::int64_t R = sphere_radius(delta);
  ElementSet out;
  for (const auto& u : U) {
    Element ux = multiply(u, x);
    Element uix = multiply(invert(u), x);
    if (!ge(static_cast<double>(dist(x, ux)), 4000 * delta)) continue;
    bool fa = std::any_of(A.begin(), A.end(), [&](const Element& a) {
      return dist(x, a) == R && le(0.5 * static_cast<double>(gromov2(x, ux, a)), delta);
    });
    bool fb = std::any_of(B.begin(), B.end(), [&](const Element& b) {
      return dist(x, b) == R && le(0.5 * static_cast<double>(gromov2(uix, x, b)), delta);
    });
    if (fa && fb) out.push_back(u);
  }
  return out;
}

ElementSet direction_set(const ElementSet& U, const Element& x, const Sector& A,
                         const Sector& B, double delta) {
  SphereGeometry sg(U, x, delta);
  ElementSet out;
  for (auto i : sg.direction_set(A, B)) out.push_back(U[i]);
  return out;
}

bool is_quasi_centre(const ElementSet& U, const Element& x, double delta) {
  if (U.empty()) return true;
  SphereGeometry sg(U, x, delta);
  return 4 * sg.heaviest_direction().count <= 3 * U.size();
}

QuasiCentreResult find_quasi_centre(const ElementSet& U, const Element& q,
                                    double delta) {
  QuasiCentreResult res;
  res.p = q;
  res.path.push_back(q);
  if (U.empty()) return res;
  res.start_energy = energy_at(U, q);
  // Each step is provably paid for by 1000 delta of energy at q.
  std::int64_t cap = floor_tol(static_cast<double>(res.start_energy) / (1000 * delta)) + 1;
  for (;;) {
    SphereGeometry sg(U, res.p, delta);
    auto c = sg.first_heavy_direction();
    if (c.count == 0) return res;
    if (res.steps >= cap)
      throw InvariantError("quasi-centre walk exceeded its step bound");
    res.p = c.y;
    res.path.push_back(c.y);
    ++res.steps;
  }
}

EnergyClass classify_energy(const ElementSet& U, const Element& p, double kappa) {
  ElementSet big, small;
  for (const auto& u : U) {
    if (gt(static_cast<double>(displacement(u, p)), 2 * kappa)) {
      big.push_back(u);
    } else {
      small.push_back(u);
    }
  }
  if (100 * big.size() >= 99 * U.size()) return EnergyClass{EnergyKind::Diffuse, big};
  return EnergyClass{EnergyKind::Concentrated, small};
}

}  // namespace pgrowth
