#include "pgrowth/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pgrowth/errors.hpp"

namespace pgrowth {

namespace {

void check_rho(double rho) {
  if (!(rho > 0) || !std::isfinite(rho)) throw DomainError("cone radius must be positive");
}

// acosh(1 + x) without cancellation for small x.
double acosh1p(double x) {
  x = std::max(0.0, x);
  return std::log1p(x + std::sqrt(x * (x + 2)));
}

double theta_of(double t, double rho) {
  return std::min(std::numbers::pi, t / std::sinh(rho));
}

}  // namespace

double cone_angle(double y1, double y2, double rho) {
  check_rho(rho);
  return theta_of(std::fabs(y1 - y2), rho);
}

double cone_dist(const ConePoint& p1, const ConePoint& p2, double rho) {
  check_rho(rho);
  if (p1.r < 0 || p1.r > rho || p2.r < 0 || p2.r > rho)
    throw DomainError("cone radius coordinate outside [0, rho]");
  double th = cone_angle(p1.y, p2.y, rho);
  // cosh r cosh r' - sinh r sinh r' cos th, rewritten to avoid cancellation.
  double s = std::sin(th / 2);
  double h = std::sinh((p1.r - p2.r) / 2);
  return acosh1p(2 * h * h + 2 * std::sinh(p1.r) * std::sinh(p2.r) * s * s);
}

double mu(double t, double rho) {
  check_rho(rho);
  if (t < 0) throw DomainError("mu requires t >= 0");
  double s = std::sinh(rho) * std::sin(theta_of(t, rho) / 2);
  return acosh1p(2 * s * s);
}

double mu_half_angle(double t, double rho) {
  check_rho(rho);
  if (t < 0) throw DomainError("mu requires t >= 0");
  return 2 * std::asinh(std::sinh(rho) * std::sin(theta_of(t, rho) / 2));
}

}  // namespace pgrowth
