#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pgrowth/geometry.hpp"

namespace pgrowth {

using ElementSet = std::vector<Element>;

// |ux - x|
std::int64_t displacement(const Element& u, const Element& x);
std::int64_t energy_at(const ElementSet& U, const Element& x);

struct EnergyCertificate {
  Element basepoint;
  std::int64_t energy_value = 0;
  Element witness;
  std::int64_t search_radius = 0;
  bool exhaustive = true;
  // "exhaustive_ball" or "tree_convexity".
  std::string method;
  std::uint64_t visited = 0;
};

struct EnergyBudgetError : ResourceError {
  EnergyBudgetError(const std::string& what, EnergyCertificate b)
      : ResourceError(what), best(std::move(b)) {}
  EnergyCertificate best;
};

// Global minimiser of x -> energy_at(U, x). On trees the energy is convex
// along geodesics, so a descent followed by retraction towards e is exact and
// returns the minimiser closest to e; other groups scan the ball of radius
// energy_at(U, e) in lex preorder and keep the first minimiser.
EnergyCertificate find_energy_minimizer(const ElementSet& U,
                                        std::uint64_t budget = 2000000);

// Subset of a discretised sphere S(x, R): everything, a closed ball around a
// sphere point, or the complement of such a ball.
struct Sector {
  enum class Kind { All, Ball, Complement };
  Kind kind = Kind::All;
  Element center;
  double radius = 0.0;
  static Sector all() { return Sector{}; }
  static Sector ball(const Element& c, double r) { return Sector{Kind::Ball, c, r}; }
  static Sector complement(const Element& c, double r) {
    return Sector{Kind::Complement, c, r};
  }
};

// Direction data of U on the sphere S(x, round(1000 delta)). Free groups use
// closed-form prefix tests; other groups enumerate the sphere.
class SphereGeometry {
 public:
  SphereGeometry(const ElementSet& U, const Element& x, double delta,
                 std::uint64_t sphere_budget = 20000);

  bool tree_mode() const { return tree_; }
  const Element& base() const { return x_; }
  std::int64_t radius() const { return R_; }
  double delta() const { return delta_; }
  std::size_t size() const { return U_.size(); }
  const Element& element(std::size_t i) const { return U_[i]; }
  std::int64_t disp(std::size_t i) const { return disp_[i]; }
  // |x - ux| >= 4000 delta
  bool large(std::size_t i) const;

  // Some a in A with (x, ux)_a <= delta.
  bool meets_forward(std::size_t i, const Sector& A) const;
  // Some b in B with (u^-1 x, x)_b <= delta.
  bool meets_backward(std::size_t i, const Sector& B) const;
  // Indices of U_x(A, B).
  std::vector<std::size_t> direction_set(const Sector& A, const Sector& B) const;

  // Lex-least (by offset x^-1 a) sphere points realising the two conditions.
  Element forward_point(std::size_t i) const;
  Element backward_point(std::size_t i) const;

  struct Capture {
    std::size_t count = 0;
    Element y;  // lex-least sphere point with the maximal capture
  };
  // max over y in S of |U_x(y^{+100 delta})|.
  Capture heaviest_direction() const;
  // Lex-least y capturing more than 3/4 of U; count is 0 when there is none.
  Capture first_heavy_direction() const;

 private:
  bool meets(const std::vector<Letter>& pref, const std::vector<char>& mask,
             const Sector& A) const;
  std::int64_t lcp_with(const std::vector<Letter>& pref, const Element& y) const;

  ElementSet U_;
  Element x_;
  double delta_;
  std::int64_t R_;
  bool tree_;
  std::vector<std::int64_t> disp_;
  // Tree mode: first R letters of x^-1 u x and x^-1 u^-1 x.
  std::vector<std::vector<Letter>> fwd_, bwd_;
  // Sphere mode: sphere points (absolute) and per-element masks.
  std::vector<Element> S_;
  std::vector<std::vector<char>> fmask_, bmask_;
};

// Explicit-set form: A and B are arbitrary finite sets of points.
ElementSet direction_set(const ElementSet& U, const Element& x,
                         const ElementSet& A, const ElementSet& B, double delta);
ElementSet direction_set(const ElementSet& U, const Element& x,
                         const Sector& A, const Sector& B, double delta);

bool is_quasi_centre(const ElementSet& U, const Element& x, double delta);

struct QuasiCentreResult {
  Element p;
  std::int64_t steps = 0;
  std::vector<Element> path;  // x_0 = q, ..., x_steps = p
  std::int64_t start_energy = 0;
};
QuasiCentreResult find_quasi_centre(const ElementSet& U, const Element& q,
                                    double delta);

enum class EnergyKind { Diffuse, Concentrated };
struct EnergyClass {
  EnergyKind kind;
  // Diffuse: elements moving p more than 2 kappa; Concentrated: the rest.
  ElementSet witness;
};
EnergyClass classify_energy(const ElementSet& U, const Element& p, double kappa);

// Lex-least point of S(e, R) whose letters start with the given prefix.
Element lex_least_sphere_point(const GroupSpec& g, const std::vector<Letter>& prefix,
                               std::int64_t R);

}  // namespace pgrowth
