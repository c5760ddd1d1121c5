#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "pgrowth/group.hpp"

namespace pgrowth {

struct MetricConfig {
  double delta = 1.0;
  double kappa = 100.0;
  std::int64_t acyl_N = 1;
  double rho = 10.0;
  // Throws ConfigError unless delta > 0 and kappa >= delta.
  void validate() const;
};

struct GeodesicWord {
  Element from;
  Element to;
  std::vector<Letter> letters;
};

std::int64_t dist(const Element& x, const Element& y);
// Twice the Gromov product (x,y)_base; always an integer on a graph.
std::int64_t gromov2(const Element& x, const Element& y, const Element& base);
double gromov_product(const Element& x, const Element& y, const Element& base);

GeodesicWord geodesic(const Element& x, const Element& y);

// Minimal displacement over all vertices: the cyclically reduced length.
std::int64_t translation_length(const Element& h);
// Zero for elliptic elements, the cyclically reduced length otherwise.
std::int64_t stable_translation_length(const Element& h);

// Distance from x to the bi-infinite path c * root^Z * (prefixes of root),
// root cyclically reduced and hyperbolic.
std::int64_t dist_to_line(const Element& x, const Element& c,
                          const Element& root);
// Distance from x to the axis through the cyclically reduced core of h.
std::int64_t dist_to_axis(const Element& x, const Element& h);

using Quadruple = std::array<Element, 4>;
// Least delta satisfying the four-point inequality on the samples.
double estimate_delta(const std::vector<Quadruple>& samples);
// Exhaustive version over all quadruples in the ball of radius <= 4 at e.
double estimate_delta_ball(const GroupSpec& g, int radius);

// Preorder walk of the ball of radius R at the identity in lex order.
// The visitor returns false to prune the subtree below the element.
void walk_ball(const GroupSpec& g, std::int64_t R,
               const std::function<bool(const Element&)>& visit);
std::vector<Element> ball(const GroupSpec& g, std::int64_t R);
std::vector<Element> sphere(const GroupSpec& g, std::int64_t R);
// Number of vertices in the ball of radius R (saturating at `cap`).
std::uint64_t ball_size(const GroupSpec& g, std::int64_t R,
                        std::uint64_t cap = UINT64_MAX);
// Whether x followed by the letter l is still a normal form of length |x|+1.
bool extends_geodesically(const Element& x, const Letter& l);
// Unit steps of the Cayley graph in code order.
std::vector<Letter> alphabet_letters(const GroupSpec& g);

}  // namespace pgrowth
