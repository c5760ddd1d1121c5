#include <algorithm>
#include <cmath>
#include <functional>

#include "doctest.h"
#include "pgrowth/geometry.hpp"
#include "pgrowth/instances.hpp"
#include "pgrowth/reduction.hpp"
#include "pgrowth/words.hpp"

using namespace pgrowth;

namespace {

GroupPtr F2() { return make_free_group(2); }
GroupPtr C5Z() { return make_group({5, 0}, {"g", "h"}); }
Element El(const GroupPtr& g, const char* s) { return parse_element(*g, s); }
ElementSet S(const GroupPtr& g, std::initializer_list<const char*> xs) {
  ElementSet out;
  for (auto x : xs) out.push_back(El(g, x));
  return out;
}

// Every period generated by any subword of the geodesic between two trace
// points, tested with is_m_periodic on every factor of w.
bool oracle_aperiodic(const Alphabet& A, const MonoidWord& w, double m) {
  const GroupSpec& g = A.group();
  auto pts = trace(A, w);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      MonoidWord sub(w.begin() + static_cast<std::ptrdiff_t>(i),
                     w.begin() + static_cast<std::ptrdiff_t>(j));
      auto s = multiply(invert(pts[i]), pts[j]).letters();
      const double D = A.alpha + 100 * A.delta;
      Element V = pts[i];
      for (std::size_t a = 0; a <= s.size(); ++a) {
        Element x = identity(g);
        for (std::size_t b = a; b < s.size(); ++b) {
          x.push_right(Syllable{s[b].factor, s[b].sign});
          Element h = conjugate(V, x);
          if (h.is_identity() || is_elliptic(h)) continue;
          Period E = period_of(h);
          if (!(static_cast<double>(dist(pts[i], pts[j])) > m * static_cast<double>(E.tau())))
            continue;
          bool near = true;
          for (std::size_t k = i; k <= j && near; ++k)
            near = static_cast<double>(dist_to_period(pts[k], E)) <= D + 1e-9;
          if (near) return false;
        }
        if (a < s.size()) V.push_right(Syllable{s[a].factor, s[a].sign});
      }
    }
  }
  return true;
}

void all_words(std::size_t k, int r, const std::function<void(const MonoidWord&)>& f) {
  MonoidWord w;
  std::function<void()> rec = [&]() {
    f(w);
    if (static_cast<int>(w.size()) >= r) return;
    for (std::size_t a = 0; a < k; ++a) {
      w.push_back(static_cast<int>(a));
      rec();
      w.pop_back();
    }
  };
  rec();
}

Alphabet small_alphabet(const GroupSpec& g, Rng& rng, std::size_t k) {
  ElementSet W;
  while (W.size() < k) {
    Element u = random_reduced_word(g, 1 + static_cast<std::int64_t>(rng() % 6), rng);
    if (rng() % 3 == 0) u = power(random_primitive_word(g, 1 + static_cast<std::int64_t>(rng() % 2), rng), 2 + static_cast<std::int64_t>(rng() % 3));
    if (!u.is_identity() && std::find(W.begin(), W.end(), u) == W.end()) W.push_back(u);
  }
  return make_alphabet(W, identity(g), 0.0, 0.01, false);
}

}  // namespace

TEST_CASE("is_m_periodic examples") {
  auto f = F2();
  auto A = make_alphabet(S(f, {"a b", "b^5"}), identity(*f), 0.0, 0.01, false);
  Period E = period_of(El(f, "a b"));
  CHECK_FALSE(is_m_periodic(A, {}, E, 1.0));
  for (int m = 1; m <= 5; ++m) {
    MonoidWord w(static_cast<std::size_t>(m + 1), 0);
    CHECK(is_m_periodic(A, w, E, m));
    MonoidWord shorter(static_cast<std::size_t>(m), 0);
    CHECK_FALSE(is_m_periodic(A, shorter, E, m));
  }
  CHECK_FALSE(is_m_periodic(A, {0, 1, 0, 0}, E, 1.0));
}

TEST_CASE("find_minimal_periodic_prefixes examples") {
  auto f = F2();
  Element e = identity(*f);
  auto far = make_alphabet(S(f, {"b^10"}), e, 0.0, 0.01, false);
  CHECK(find_minimal_periodic_prefixes(far, period_of(El(f, "a")), 2.0, 6).empty());

  Element ab = El(f, "a b");
  auto one = make_alphabet({power(ab, 10)}, e, 0.0, 0.01, false);
  auto r = find_minimal_periodic_prefixes(one, period_of(ab), 15.0, 6);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == MonoidWord{0, 0});

  auto two = make_alphabet({power(ab, 10), power(ab, -10)}, e, 0.0, 0.01, false);
  r = find_minimal_periodic_prefixes(two, period_of(ab), 5.0, 6);
  CHECK(r.size() == 2);

  reset_scan_counters();
  auto three = make_alphabet({power(ab, 10), power(ab, 11), power(ab, 12)}, e, 0.0, 0.01, false);
  CHECK_THROWS_AS(find_minimal_periodic_prefixes(three, period_of(ab), 5.0, 4), InvariantError);
  CHECK(scan_counters().minimal_violations == 1);
  reset_scan_counters();
}

TEST_CASE("is_m_aperiodic examples") {
  auto f = F2();
  Element e = identity(*f);
  Element ab = El(f, "a b");
  auto A = make_alphabet({power(ab, 7)}, e, 0.0, 0.01, false);
  // lambda = 14, tau = 1 so m >= 14 keeps single letters aperiodic.
  CHECK(is_m_aperiodic(A, {0}, 14.0));
  CHECK(is_m_aperiodic(A, {}, 1.0));
  auto P = make_alphabet({ab}, e, 0.0, 0.01, false);
  for (int m = 1; m <= 4; ++m) {
    MonoidWord w(static_cast<std::size_t>(m + 2), 0);
    CHECK_FALSE(is_m_aperiodic(P, w, m));
  }
}

TEST_CASE("is_m_aperiodic agrees with the exhaustive period oracle") {
  for (auto g : {F2(), C5Z()}) {
    Rng rng(43);
    int periodic = 0, total = 0;
    for (int it = 0; it < 25; ++it) {
      auto A = small_alphabet(*g, rng, 2 + rng() % 2);
      for (double m : {1.0, 1.5, 2.0, 4.0, 5.0}) {
        all_words(A.size(), 3, [&](const MonoidWord& w) {
          bool o = oracle_aperiodic(A, w, m);
          REQUIRE(is_m_aperiodic(A, w, m) == o);
          periodic += !o;
          ++total;
        });
      }
    }
    CHECK(periodic > 0);
    CHECK(periodic < total);
  }
}

TEST_CASE("fast period path matches the exhaustive scan for m >= m0 on trees") {
  auto f = F2();
  Rng rng(47);
  reset_scan_counters();
  for (int it = 0; it < 40; ++it) {
    auto A = small_alphabet(*f, rng, 2);
    auto th = period_thresholds(A);
    for (double m : {th.m0, th.m0 + 0.5, th.m0 + 2}) {
      all_words(A.size(), 5, [&](const MonoidWord& w) {
        auto a = periods_of(A, w, m, false);
        auto b = periods_of(A, w, m, true);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(same_subgroup(a[i], b[i]));
      });
    }
  }
  CHECK(scan_counters().uniqueness_violations == 0);
  CHECK(scan_counters().uniqueness_checks > 0);
}

TEST_CASE("count_aperiodic examples and oracle") {
  auto f = F2();
  Element e = identity(*f);
  Element ab = El(f, "a b"), ba = El(f, "b a");
  auto A = make_alphabet({power(ab, 5), power(ba, 5)}, e, 0.0, 0.01, false);
  CHECK(count_aperiodic(A, 1.0, 0) == 1);
  // lambda = 10: m = 60 exceeds every displacement up to radius 6.
  CHECK(count_aperiodic(A, 60.0, 6) == 127);
  std::uint64_t small = count_aperiodic(A, 1.0, 4);
  CHECK(small < 31);
  std::uint64_t brute = 0;
  all_words(2, 4, [&](const MonoidWord& w) { brute += oracle_aperiodic(A, w, 1.0); });
  CHECK(small == brute);
  Rng rng(53);
  for (auto g : {F2(), C5Z()}) {
    for (int it = 0; it < 10; ++it) {
      auto B = small_alphabet(*g, rng, 2 + rng() % 2);
      for (double m : {1.0, 2.0, 3.0}) {
        auto sph = aperiodic_sphere_counts(B, m, 4);
        std::vector<std::uint64_t> ref(5, 0);
        all_words(B.size(), 4, [&](const MonoidWord& w) {
          if (oracle_aperiodic(B, w, m)) ++ref[w.size()];
        });
        REQUIRE(sph == ref);
      }
    }
  }
}

TEST_CASE("growth and sphere recursions at m >= m1") {
  auto f = F2();
  Rng rng(59);
  for (int it = 0; it < 10; ++it) {
    ElementSet W;
    std::size_t k = 2 + rng() % 3;
    PowerSetParams pp;
    pp.size_min = pp.size_max = k;
    pp.K_min = 400;
    pp.K_max = 800;
    pp.conj_len_max = 0;
    W = random_power_set(*f, pp, rng);
    auto rep = check_reduced(W, identity(*f), 0.5, 1.0);
    if (rep.kind != ReducedKind::StronglyReduced) continue;
    auto A = make_alphabet(W, identity(*f), 0.5, 1.0);
    double m = period_thresholds(A).m1;
    auto sph = aperiodic_sphere_counts(A, m, 8);
    std::uint64_t ball = 0;
    std::vector<std::uint64_t> balls;
    for (auto s : sph) balls.push_back(ball += s);
    for (std::size_t r = 0; r + 1 < balls.size(); ++r)
      REQUIRE(2 * balls[r + 1] >= A.size() * balls[r]);
    for (std::size_t r = 0; r < sph.size(); ++r)
      REQUIRE(static_cast<double>(sph[r]) >=
              std::pow(static_cast<double>(A.size()) / 4.0, static_cast<double>(r)));
  }
}

TEST_CASE("contains_m_power_runs examples") {
  auto f = F2();
  CHECK(contains_m_power_runs(El(f, "a b a b a b"), 2.0, 0.1));
  CHECK_FALSE(contains_m_power_runs(El(f, "a b a b a b"), 3.0, 0.1));
  CHECK_FALSE(contains_m_power_runs(El(f, "a"), 1.0, 0.1));
  CHECK_FALSE(contains_m_power_runs(identity(*f), 1.0, 0.1));
  CHECK(contains_m_power_runs(El(f, "a^2"), 1.0, 0.1));
}

TEST_CASE("contains_m_power_geometric examples and agreement on short words") {
  auto f = F2();
  CHECK(contains_m_power_geometric(El(f, "a b a b a b"), 2.0, 0.1));
  CHECK_FALSE(contains_m_power_geometric(identity(*f), 1.0, 0.1));
  auto c = C5Z();
  // A finite-factor syllable is elliptic and gives no period.
  CHECK_FALSE(contains_m_power_geometric(El(c, "g^2"), 1.0, 0.1));
  CHECK_FALSE(contains_m_power_runs(El(c, "g^2"), 1.0, 0.1));
  CHECK(contains_m_power_geometric(El(c, "g h g h g h"), 2.0, 0.1));
  for (auto g : {F2(), C5Z()}) {
    std::size_t n = 0;
    walk_ball(*g, 7, [&](const Element& x) {
      for (double m : {1.0, 2.0, 3.0})
        REQUIRE(contains_m_power_runs(x, m, 0.1) == contains_m_power_geometric(x, m, 0.1));
      ++n;
      return true;
    });
    CHECK(n == ball_size(*g, 7));
  }
}

TEST_CASE("power detection with a positive neighbourhood radius") {
  // delta = 0.2 gives s = 1: runs get one letter of slack on each side. On a
  // tree the neighbourhood of a line meets the geodesic in a run; cycles in
  // finite factors break this, so only F2 is checked.
  for (auto g : {F2()}) {
    walk_ball(*g, 6, [&](const Element& x) {
      for (double m : {2.0, 3.0}) {
        bool runs = contains_m_power_runs(x, m, 0.2);
        bool geo = contains_m_power_geometric(x, m, 0.2);
        if (geo) REQUIRE(runs);
      }
      return true;
    });
  }
}

TEST_CASE("periodic image implies a strong period in the word") {
  auto f = F2();
  Rng rng(61);
  int premise = 0;
  for (int it = 0; it < 60; ++it) {
    PowerSetParams pp;
    pp.size_min = 2;
    pp.size_max = 3;
    pp.K_min = 40;
    pp.K_max = 80;
    pp.root_len_max = 2;
    pp.conj_len_max = 2;
    auto W = random_power_set(*f, pp, rng);
    const double delta = 0.1;
    if (check_reduced(W, identity(*f), 0.0, delta).kind != ReducedKind::StronglyReduced)
      continue;
    auto A = make_alphabet(W, identity(*f), 0.0, delta);
    double shift = 2 * static_cast<double>(A.lambda) + 20 * delta;
    all_words(A.size(), 4, [&](const MonoidWord& w) {
      Element x = image(A, w);
      for (double mp : {1.0, 2.0, 5.0}) {
        double m = mp + shift;
        if (!contains_m_power_runs(x, m, delta)) continue;
        ++premise;
        REQUIRE_FALSE(is_m_aperiodic(A, w, mp));
      }
    });
  }
  CHECK(premise > 0);
}

TEST_CASE("count_power_free examples") {
  auto f = F2();
  Element e = identity(*f);
  auto A = make_alphabet(S(f, {"a^1000", "b^1000"}), e, 0.0, 1.0);
  CHECK(count_power_free(A, e, 5000.0, 0) == 1);
  for (int r = 1; r <= 4; ++r) CHECK(count_power_free(A, e, 1e6, r) == (1u << r));
  // Small m: every product contains a long a- or b-run.
  CHECK(count_power_free(A, e, 10.0, 2) == 0);
  // Lower bound of the power-free corollary on the instance.
  double lam = 1000, U = 2;
  for (int r = 1; r <= 3; ++r) {
    double bound = std::pow(U / (4e6 * lam), r);
    CHECK(static_cast<double>(count_power_free(A, e, period_thresholds(A).m2, r)) >= bound);
  }
}

TEST_CASE("alphabet validation") {
  auto f = F2();
  CHECK_THROWS_AS(make_alphabet(S(f, {"a"}), identity(*f), 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(make_alphabet({}, identity(*f), 0.0, 1.0), DomainError);
  auto A = make_alphabet(S(f, {"a^1000", "b^1000"}), identity(*f), 0.0, 1.0);
  CHECK(A.lambda == 1000);
  auto th = period_thresholds(A);
  CHECK(th.D == doctest::Approx(100.0));
  CHECK(th.m0 == doctest::Approx(202.0));
  CHECK(th.m1 > th.m0);
  CHECK(th.m2 == doctest::Approx(th.m1 + 2020.0));
  CHECK_THROWS_AS(period_thresholds(A, -1.0, 0.7), ConfigError);
}
