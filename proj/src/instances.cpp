#include "pgrowth/instances.hpp"

#include <algorithm>
#include <unordered_set>

namespace pgrowth {

namespace {

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

}  // namespace

Element random_reduced_word(const GroupSpec& g, std::int64_t len, Rng& rng) {
  auto alphabet = alphabet_letters(g);
  Element x = identity(g);
  std::vector<Letter> ok;
  while (x.length() < len) {
    ok.clear();
    for (const auto& l : alphabet)
      if (extends_geodesically(x, l)) ok.push_back(l);
    const Letter& l = ok[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(ok.size()) - 1))];
    x.push_right(Syllable{l.factor, l.sign});
  }
  return x;
}

Element random_primitive_word(const GroupSpec& g, std::int64_t len, Rng& rng) {
  if (len < 1) throw DomainError("primitive word length must be positive");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Element x = random_reduced_word(g, len, rng);
    if (!is_cyclically_reduced(x) || is_elliptic(x)) continue;
    if (primitive_root(x).exponent != 1) continue;
    return x;
  }
  throw DomainError("no primitive hyperbolic word of the requested length");
}

ElementSet random_power_set(const GroupSpec& g, const PowerSetParams& prm, Rng& rng) {
  auto size = static_cast<std::size_t>(uniform(rng, static_cast<std::int64_t>(prm.size_min),
                                               static_cast<std::int64_t>(prm.size_max)));
  ElementSet out;
  std::unordered_set<Element, ElementHash> seen;
  while (out.size() < size) {
    Element x = random_primitive_word(g, uniform(rng, prm.root_len_min, prm.root_len_max), rng);
    std::int64_t K = uniform(rng, prm.K_min, prm.K_max);
    if (uniform(rng, 0, 1)) K = -K;
    Element c = random_reduced_word(g, uniform(rng, 0, prm.conj_len_max), rng);
    Element u = conjugate(c, power(x, K));
    if (seen.insert(u).second) out.push_back(u);
  }
  return out;
}

ElementSet concentrated_instance(const GroupSpec& g, Rng& rng) {
  if (g.rank() != 2 || g.factor(0).order != 101 || !g.factor(1).infinite())
    throw DomainError("concentrated instance lives in C_101 * Z");
  ElementSet out;
  for (std::int64_t i = -15; i <= 15; ++i)
    for (std::int64_t j = -4; j <= 4; ++j)
      if (j != 0) out.push_back(multiply(generator(g, 0, i), generator(g, 1, j)));
  std::unordered_set<Element, ElementHash> seen(out.begin(), out.end());
  while (out.size() < 248 + 2000) {
    Element f = random_reduced_word(g, uniform(rng, 25, 60), rng);
    if (seen.insert(f).second) out.push_back(f);
  }
  Element v = multiply(generator(g, 1, 5), random_reduced_word(g, 1195, rng));
  out.push_back(v);
  return out;
}

}  // namespace pgrowth
