#pragma once

namespace pgrowth {

// A point of the hyperbolic cone of radius rho: radial coordinate r and
// position y on the base (arc length in the base space).
struct ConePoint {
  double r = 0.0;
  double y = 0.0;
};

// Cone angle between base positions: min(pi, |y - y'| / sinh(rho)).
double cone_angle(double y1, double y2, double rho);
double cone_dist(const ConePoint& p1, const ConePoint& p2, double rho);

// Distortion of the cone embedding, cosh form.
double mu(double t, double rho);
// Same value via 2 asinh(sinh(rho) sin(theta/2)).
double mu_half_angle(double t, double rho);

}  // namespace pgrowth
