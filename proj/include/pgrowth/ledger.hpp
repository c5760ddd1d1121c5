#pragma once

#include <array>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace pgrowth {

using Big = boost::multiprecision::cpp_bin_float_50;
using Rational = boost::multiprecision::cpp_rational;

// mantissa * 2^exp2 with an exact rational mantissa; keeps astronomically
// large constants exact without materialising their digits.
struct ScaledRational {
  Rational mantissa;
  std::int64_t exp2 = 0;
  ScaledRational reciprocal() const;
  ScaledRational operator*(const ScaledRational& o) const;
  bool is_one() const;
  Big to_big() const;
};
ScaledRational to_scaled(const Big& x);

struct LedgerConfig {
  double delta1 = 0.001;
  double rho0 = 30000.0;
  double L0 = 600.0;
  std::int64_t n1 = 100;
  std::int64_t n = 0;  // exponent for epsilon_n; 0 means n1
  std::int64_t acyl_N = 100;
  double kappa = 0.0;  // 0 means A0
  double M0 = 1000.0;
  double delta0 = 1e-4;
  double Delta0 = 1e-3;
  double epsilon = 0.25;  // auxiliary epsilon of the aperiodic count
  void validate() const;
};

struct ParameterLedger {
  LedgerConfig config;
  Big delta1, kappa, acyl_N, rho0, L0, A0;
  Big tau;      // sqrt(rho0 L0 delta1 / (4 n1))
  Big alpha;    // max(1002 delta1, 25 kappa)
  Big lambda0;  // sqrt(n1) pi sinh(100 A0)
  Big m0, m1, m2;
  std::int64_t n1 = 0;
  Big xi, n2;
  Big epsilon_n;
  std::array<bool, 4> epsilon_conditions{};
  bool epsilon_sanity = false;  // epsilon_n >= 1/sqrt(n)
  ScaledRational M, a;
  bool a_times_M_is_one = false;
};

ParameterLedger compute_ledger(const LedgerConfig& cfg);

std::string format_big(const Big& x, int digits = 8);

}  // namespace pgrowth
