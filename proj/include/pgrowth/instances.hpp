#pragma once

#include <cstdint>
#include <random>

#include "pgrowth/energy.hpp"

namespace pgrowth {

using Rng = std::mt19937_64;

// Random normal form of word length len, built letter by letter.
Element random_reduced_word(const GroupSpec& g, std::int64_t len, Rng& rng);
// Cyclically reduced, primitive and hyperbolic, of word length len >= 1.
Element random_primitive_word(const GroupSpec& g, std::int64_t len, Rng& rng);

struct PowerSetParams {
  std::size_t size_min = 8, size_max = 32;
  std::int64_t K_min = 5000, K_max = 20000;
  std::int64_t root_len_min = 1, root_len_max = 4;
  std::int64_t conj_len_max = 6;
};
// Distinct elements c x^(+-K) c^-1 with x primitive.
ElementSet random_power_set(const GroupSpec& g, const PowerSetParams& prm, Rng& rng);

// Instance in C_101 * Z whose energy is concentrated at the identity: g^i h^j
// short elements, fillers of length 25..60, and one long element.
ElementSet concentrated_instance(const GroupSpec& g, Rng& rng);

}  // namespace pgrowth
