#include "pgrowth/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "pgrowth/numeric.hpp"

namespace pgrowth {

namespace {

double half(std::int64_t x) { return 0.5 * static_cast<double>(x); }

const GroupSpec& group_of(const ElementSet& U, const Element& p) {
  if (p.group()) return *p.group();
  for (const auto& u : U)
    if (u.group()) return *u.group();
  throw ConfigError("elements carry no group");
}

// Index of the element of U with maximal displacement at p, lex-least on ties.
std::size_t argmax_disp(const ElementSet& U, const std::vector<std::size_t>& idx,
                        const std::vector<std::int64_t>& disp) {
  std::size_t best = idx.front();
  for (auto i : idx)
    if (disp[i] > disp[best] || (disp[i] == disp[best] && lex_less(U[i], U[best])))
      best = i;
  return best;
}

}  // namespace

const char* to_string(ReducedKind k) {
  switch (k) {
    case ReducedKind::StronglyReduced: return "StronglyReduced";
    case ReducedKind::Reduced: return "Reduced";
    default: return "Neither";
  }
}

ReducedSetReport check_reduced(const ElementSet& U, const Element& p, double alpha,
                               double delta) {
  ReducedSetReport rep;
  rep.base = p;
  rep.alpha = alpha;
  std::size_t n = U.size();
  std::vector<Element> fw(n), bw(n);
  std::vector<std::int64_t> len(n);
  for (std::size_t i = 0; i < n; ++i) {
    fw[i] = multiply(U[i], p);
    bw[i] = multiply(invert(U[i]), p);
    len[i] = dist(fw[i], p);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!gt(static_cast<double>(len[i]), 2 * alpha + 300 * delta)) {
      rep.violating_pair = std::make_pair(U[i], U[i]);
      rep.violated = "length";
      return rep;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!le(half(gromov2(bw[i], fw[j], p)), alpha)) {
        rep.violating_pair = std::make_pair(U[i], U[j]);
        rep.violated = "gromov";
        return rep;
      }
    }
  }
  rep.kind = ReducedKind::Reduced;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double bound = static_cast<double>(std::min(len[i], len[j])) - alpha - 150 * delta;
      if (!lt(half(gromov2(fw[i], fw[j], p)), bound)) {
        rep.violating_pair = std::make_pair(U[i], U[j]);
        rep.violated = "strong";
        return rep;
      }
    }
  }
  rep.kind = ReducedKind::StronglyReduced;
  return rep;
}

Element evaluate_word(const ElementSet& W, const std::vector<int>& w,
                      const GroupSpec& g) {
  Element x = identity(g);
  for (int i : w) x = multiply(x, W[static_cast<std::size_t>(i)]);
  return x;
}

ExtensionReport check_geodesic_extension(const ElementSet& W, const Element& p,
                                         double alpha, double delta, int radius,
                                         std::uint64_t pair_budget) {
  ExtensionReport rep;
  if (W.empty()) return rep;
  const GroupSpec& g = group_of(W, p);
  std::vector<std::vector<int>> words{{}};
  std::vector<Element> pts{p};
  for (std::size_t s = 0; s < words.size(); ++s) {
    if (static_cast<int>(words[s].size()) >= radius) continue;
    for (std::size_t a = 0; a < W.size(); ++a) {
      auto w = words[s];
      w.push_back(static_cast<int>(a));
      words.push_back(w);
      pts.push_back(multiply(evaluate_word(W, w, g), p));
      if (static_cast<double>(words.size()) * static_cast<double>(words.size()) >
          static_cast<double>(pair_budget))
        throw ResourceError("geodesic extension check exceeds pair budget");
    }
  }
  double thr = alpha + 145 * delta;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      ++rep.pairs_checked;
      if (!le(half(gromov2(p, pts[j], pts[i])), thr)) continue;
      const auto& w = words[i];
      const auto& w2 = words[j];
      bool prefix = w.size() <= w2.size() && std::equal(w.begin(), w.end(), w2.begin());
      if (!prefix) {
        rep.holds = false;
        if (!rep.violation) rep.violation = std::make_pair(w, w2);
      }
    }
  }
  return rep;
}

ReductionResult reduce_diffuse(const ElementSet& U, const Element& p,
                               const ReductionParams& prm) {
  if (U.empty()) throw DomainError("reduction of an empty set");
  auto cls = classify_energy(U, p, prm.kappa);
  if (cls.kind != EnergyKind::Diffuse)
    throw DomainError("reduce_diffuse requires diffuse energy at p");
  SphereGeometry sg(U, p, prm.delta);
  std::size_t n = U.size();
  std::vector<std::int64_t> disp(n);
  std::vector<std::size_t> prime;  // U'
  for (std::size_t i = 0; i < n; ++i) {
    disp[i] = sg.disp(i);
    if (ge(static_cast<double>(disp[i]), 2 * prm.kappa)) prime.push_back(i);
  }
  std::vector<char> in_prime(n, 0);
  for (auto i : prime) in_prime[i] = 1;
  std::size_t i0 = argmax_disp(U, prime, disp);
  if (!sg.large(i0))
    throw DomainError("largest displacement is below 4000 delta; the sector analysis needs it");
  Element y0 = sg.forward_point(i0);
  Element z0 = sg.backward_point(i0);
  double d = prm.delta;
  auto sub = [&](const Sector& A, const Sector& B) {
    std::vector<std::size_t> out;
    for (auto i : sg.direction_set(A, B))
      if (in_prime[i]) out.push_back(i);
    return out;
  };
  auto heavy = [&](const std::vector<std::size_t>& s) {
    return static_cast<double>(s.size()) > prm.eta * static_cast<double>(n);
  };
  auto pack = [&](std::size_t v, const std::vector<std::size_t>& s, const char* name) {
    ReductionResult r;
    r.v = U[v];
    for (auto i : s) r.U1.push_back(U[i]);
    r.sector_case = name;
    return r;
  };

  ReductionResult res;
  auto A = sub(Sector::complement(z0, 6 * d), Sector::complement(y0, 6 * d));
  auto B1 = sub(Sector::ball(z0, 6 * d), Sector::complement(z0, 12 * d));
  auto B2 = sub(Sector::complement(y0, 12 * d), Sector::ball(y0, 6 * d));
  if (heavy(A)) {
    res = pack(i0, A, n == 1 ? "single" : "aligned");
  } else if (heavy(B1)) {
    res = pack(argmax_disp(U, B1, disp), B1, "through_z0");
  } else if (heavy(B2)) {
    res = pack(argmax_disp(U, B2, disp), B2, "through_y0");
  } else {
    auto C1 = sub(Sector::ball(z0, 6 * d), Sector::ball(z0, 12 * d));
    auto C2 = sub(Sector::ball(y0, 12 * d), Sector::ball(y0, 6 * d));
    if (!heavy(C1) || !heavy(C2))
      throw InvariantError("no sector case of the reduction applies");
    std::size_t v1 = argmax_disp(U, C1, disp), v2 = argmax_disp(U, C2, disp);
    if (disp[v2] >= disp[v1]) {
      res = pack(v2, C1, "split");
    } else {
      res = pack(v1, C2, "split");
    }
  }

  // Postcondition of the reduction.
  Element vp = multiply(res.v, p);
  Element vip = multiply(invert(res.v), p);
  std::int64_t dv = dist(vp, p);
  for (const auto& u : res.U1) {
    Element up = multiply(u, p);
    Element uip = multiply(invert(u), p);
    std::int64_t du = dist(up, p);
    if (!le(half(gromov2(uip, vp, p)), 1000 * d) || !le(half(gromov2(vip, up, p)), 1000 * d) ||
        !ge(static_cast<double>(du), 2 * prm.kappa) || du > dv)
      throw InvariantError("reduction postcondition failed");
  }
  if (100 * res.U1.size() < n) throw InvariantError("reduction produced too few elements");
  return res;
}

DiffuseExtraction extract_strongly_reduced_diffuse(const ElementSet& U,
                                                   const Element& p,
                                                   const ReductionParams& prm,
                                                   double lambda) {
  DiffuseExtraction out;
  out.reduction = reduce_diffuse(U, p, prm);
  out.alpha = 1002 * prm.delta;
  const Element& v = out.reduction.v;
  for (const auto& u : out.reduction.U1) out.T.push_back(multiply(u, v));
  std::sort(out.T.begin(), out.T.end(), LexLess());
  std::size_t n = out.T.size();
  std::vector<Element> tp(n);
  std::vector<std::int64_t> len(n);
  for (std::size_t i = 0; i < n; ++i) {
    tp[i] = multiply(out.T[i], p);
    len[i] = dist(tp[i], p);
  }
  double thr = out.alpha + 150 * prm.delta;
  // cover[w][t]: t in A_w.
  std::vector<std::vector<char>> cover(n, std::vector<char>(n, 0));
  for (std::size_t w = 0; w < n; ++w) {
    std::size_t cnt = 0;
    for (std::size_t t = 0; t < n; ++t) {
      cover[w][t] = len[t] <= len[w] && le(half(gromov2(tp[w], p, tp[t])), thr);
      cnt += cover[w][t];
    }
    out.max_cover = std::max(out.max_cover, cnt);
  }
  out.cover_bound = 2065.0 * static_cast<double>(prm.acyl_N) * lambda / prm.delta;
  std::vector<char> covered(n, 0);
  for (;;) {
    std::size_t best = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (covered[t]) continue;
      // T is lex sorted, so the first maximiser is the lex-least one.
      if (best == n || len[t] > len[best]) best = t;
    }
    if (best == n) break;
    out.W.push_back(out.T[best]);
    for (std::size_t t = 0; t < n; ++t)
      if (cover[best][t]) covered[t] = 1;
    if (!covered[best]) throw InvariantError("w is not in its own cover set");
  }
  out.covers_T = std::all_of(covered.begin(), covered.end(), [](char c) { return c; });
  return out;
}

ConcentratedExtraction extract_strongly_reduced_concentrated(
    const ElementSet& U, const Element& p, const ReductionParams& prm) {
  ConcentratedExtraction out;
  if (U.empty()) throw DomainError("empty set");
  double d = prm.delta, k = prm.kappa;
  out.M = 2 * k * static_cast<double>(prm.acyl_N) / d;
  out.alpha = 25 * k;
  std::int64_t lam_p = energy_at(U, p);
  if (!gt(static_cast<double>(lam_p), 100 * k))
    throw DomainError("concentrated extraction needs energy at p above 100 kappa");
  if (le(static_cast<double>(U.size()), 100 * out.M)) {
    out.small_set = true;
    return out;
  }
  std::size_t n = U.size();
  std::vector<std::int64_t> disp(n);
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) {
    disp[i] = displacement(U[i], p);
    all[i] = i;
  }
  std::size_t vi = argmax_disp(U, all, disp);
  out.v = U[vi];
  for (std::size_t i = 0; i < n; ++i)
    if (le(static_cast<double>(disp[i]), 2 * k)) out.U1.push_back(U[i]);
  std::sort(out.U1.begin(), out.U1.end(), LexLess());
  if (100 * out.U1.size() < n)
    throw DomainError("energy is not concentrated at p");
  std::size_t m = out.U1.size();
  Element vp = multiply(out.v, p);
  Element vip = multiply(invert(out.v), p);
  std::vector<Element> uvp(m);
  for (std::size_t i = 0; i < m; ++i) uvp[i] = multiply(out.U1[i], vp);
  // inB[c][i]: U1[i] in B_{U1[c]}.
  std::vector<std::vector<char>> inB(m, std::vector<char>(m, 0));
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t cnt = 0;
    for (std::size_t i = 0; i < m; ++i) {
      inB[c][i] = ge(half(gromov2(uvp[c], uvp[i], p)), 23 * k - d);
      cnt += inB[c][i];
    }
    out.max_B = std::max(out.max_B, cnt);
  }
  // Greedy maximal U2 in lex order: no B_c contains two of its elements.
  std::vector<std::size_t> U2;
  std::vector<char> hit(m, 0);  // hit[c]: B_c already contains a chosen element
  for (std::size_t i = 0; i < m; ++i) {
    bool ok = true;
    for (std::size_t c = 0; c < m && ok; ++c)
      if (hit[c] && inB[c][i]) ok = false;
    if (!ok) continue;
    U2.push_back(i);
    for (std::size_t c = 0; c < m; ++c)
      if (inB[c][i]) hit[c] = 1;
  }
  std::vector<std::size_t> U3;
  for (auto i : U2) {
    out.U2.push_back(out.U1[i]);
    if (gt(half(gromov2(vip, uvp[i], p)), 23 * k)) {
      if (out.removed) throw InvariantError("two elements of U2 align with v^-1");
      out.removed = out.U1[i];
    } else {
      U3.push_back(i);
    }
  }
  for (auto i : U3) out.W.push_back(multiply(out.U1[i], out.v));
  return out;
}

FreeSemigroupResult construct_free_semigroup(const ElementSet& U,
                                             const ReductionParams& prm,
                                             std::uint64_t energy_budget) {
  FreeSemigroupResult res;
  if (U.empty()) throw DomainError("empty set");
  res.certificate = find_energy_minimizer(U, energy_budget);
  res.lambda = res.certificate.energy_value;
  if (!gt(static_cast<double>(res.lambda), 100 * prm.kappa))
    throw DomainError("energy must exceed 100 kappa");
  res.quasi_centre = find_quasi_centre(U, res.certificate.basepoint, prm.delta);
  res.p = res.quasi_centre.p;
  res.small_set_gate = 400 * prm.kappa * static_cast<double>(prm.acyl_N) / prm.delta;
  // Relative slack: the quotient is tiny but positive, so its ceiling is 1.
  double q = static_cast<double>(U.size()) * prm.delta /
             (1e6 * static_cast<double>(prm.acyl_N) * static_cast<double>(res.lambda));
  res.cardinality_bound = static_cast<std::int64_t>(std::ceil(q * (1 - 1e-12)));
  auto cls = classify_energy(U, res.p, prm.kappa);
  res.kind = cls.kind;
  if (cls.kind == EnergyKind::Diffuse) {
    res.diffuse = extract_strongly_reduced_diffuse(U, res.p, prm,
                                                   static_cast<double>(res.lambda));
    res.v = res.diffuse->reduction.v;
    res.W = res.diffuse->W;
    res.alpha = res.diffuse->alpha;
    return res;
  }
  if (le(static_cast<double>(U.size()), res.small_set_gate)) {
    res.small_set = true;
    return res;
  }
  res.concentrated = extract_strongly_reduced_concentrated(U, res.p, prm);
  res.small_set = res.concentrated->small_set;
  res.v = res.concentrated->v;
  res.W = res.concentrated->W;
  res.alpha = res.concentrated->alpha;
  return res;
}

namespace {

constexpr std::uint64_t kP = (1ull << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(z & kP);
  std::uint64_t hi = static_cast<std::uint64_t>(z >> 61);
  std::uint64_t r = lo + hi;
  return r >= kP ? r - kP : r;
}
std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r >= kP ? r - kP : r;
}
std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

struct Mat {
  std::uint64_t a = 1, b = 0, c = 0, d = 1;
};
Mat mul(const Mat& x, const Mat& y) {
  return Mat{addmod(mulmod(x.a, y.a), mulmod(x.b, y.c)),
             addmod(mulmod(x.a, y.b), mulmod(x.b, y.d)),
             addmod(mulmod(x.c, y.a), mulmod(x.d, y.c)),
             addmod(mulmod(x.c, y.b), mulmod(x.d, y.d))};
}
Mat inv(const Mat& x) { return Mat{x.d, (kP - x.b) % kP, (kP - x.c) % kP, x.a}; }
Mat matpow(Mat x, std::int64_t e) {
  if (e < 0) {
    x = inv(x);
    e = -e;
  }
  Mat r;
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}
std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ull;
  return h ^ (h >> 29);
}
std::uint64_t fingerprint(const Mat& m) {
  return mix(mix(mix(mix(0, m.a), m.b), m.c), m.d);
}

std::vector<int> decode(std::uint64_t code, std::size_t base) {
  std::size_t len = static_cast<std::size_t>(code >> 58);
  std::uint64_t digits = code & ((1ull << 58) - 1);
  std::vector<int> w(len);
  for (std::size_t i = len; i-- > 0;) {
    w[i] = static_cast<int>(digits % base);
    digits /= base;
  }
  return w;
}

}  // namespace

InjectivityReport check_injectivity(const ElementSet& W, int radius,
                                    std::uint64_t budget) {
  InjectivityReport rep;
  if (W.empty()) return rep;
  const GroupSpec& g = group_of(W, Element());
  std::size_t k = W.size();
  double total = 0, pw = 1;
  for (int l = 0; l <= radius; ++l, pw *= static_cast<double>(k)) total += pw;
  if (total > static_cast<double>(budget) || radius > 15)
    throw ResourceError("injectivity check exceeds word budget");
  rep.words = static_cast<std::uint64_t>(total);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> keys;
  keys.reserve(rep.words);
  if (g.is_free()) {
    rep.method = "sl2_fingerprint";
    // A homomorphism F -> SL2(Z/p) determined by random generator images.
    std::mt19937_64 rng(0x5eedf00dull);
    std::vector<Mat> gens;
    for (std::size_t f = 0; f < g.rank(); ++f) {
      std::uint64_t a = 0, b = rng() % kP, c = rng() % kP;
      while (a == 0) a = rng() % kP;
      std::uint64_t d = mulmod(addmod(1, mulmod(b, c)), powmod(a, kP - 2));
      gens.push_back(Mat{a, b, c, d});
    }
    std::vector<Mat> img;
    for (const auto& w : W) {
      Mat m;
      for (const auto& s : w.syllables()) m = mul(m, matpow(gens[static_cast<std::size_t>(s.factor)], s.exp));
      img.push_back(m);
    }
    // Depth-first enumeration with running products.
    std::vector<Mat> stack{Mat{}};
    std::vector<std::uint64_t> digits{0};
    std::vector<std::size_t> next{0};
    keys.emplace_back(fingerprint(Mat{}), 0);
    while (!stack.empty()) {
      std::size_t depth = stack.size() - 1;
      if (static_cast<int>(depth) == radius || next.back() == k) {
        stack.pop_back();
        digits.pop_back();
        next.pop_back();
        continue;
      }
      std::size_t a = next.back()++;
      Mat m = mul(stack.back(), img[a]);
      std::uint64_t dg = digits.back() * k + a;
      std::uint64_t code = (static_cast<std::uint64_t>(depth + 1) << 58) | dg;
      keys.emplace_back(fingerprint(m), code);
      stack.push_back(m);
      digits.push_back(dg);
      next.push_back(0);
    }
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 0; i < keys.size();) {
      std::size_t j = i + 1;
      while (j < keys.size() && keys[j].first == keys[i].first) ++j;
      if (j - i > 1) {
        rep.fingerprint_collisions += j - i - 1;
        std::vector<std::pair<Element, std::vector<int>>> group;
        for (std::size_t t = i; t < j; ++t) {
          auto w = decode(keys[t].second, k);
          Element x = evaluate_word(W, w, g);
          for (const auto& [y, w2] : group) {
            if (y == x && !rep.violation) {
              rep.injective = false;
              rep.violation = std::make_pair(w2, w);
            }
          }
          group.emplace_back(std::move(x), std::move(w));
        }
      }
      i = j;
    }
    return rep;
  }
  rep.method = "normal_form";
  std::unordered_map<Element, std::vector<int>, ElementHash> seen;
  std::vector<std::pair<Element, std::vector<int>>> layer{{identity(g), {}}};
  seen.emplace(identity(g), std::vector<int>{});
  for (int l = 1; l <= radius; ++l) {
    std::vector<std::pair<Element, std::vector<int>>> nxt;
    for (const auto& [x, w] : layer) {
      for (std::size_t a = 0; a < k; ++a) {
        Element y = multiply(x, W[a]);
        auto w2 = w;
        w2.push_back(static_cast<int>(a));
        auto [it, fresh] = seen.emplace(y, w2);
        if (!fresh && !rep.violation) {
          rep.injective = false;
          rep.violation = std::make_pair(it->second, w2);
        }
        nxt.emplace_back(std::move(y), std::move(w2));
      }
    }
    layer = std::move(nxt);
  }
  return rep;
}

}  // namespace pgrowth
