#include "pgrowth/ledger.hpp"

#include <iomanip>
#include <sstream>

#include "pgrowth/errors.hpp"

namespace pgrowth {

namespace {

const Big kPi = boost::multiprecision::atan(Big(1)) * 4;

}  // namespace

ScaledRational ScaledRational::reciprocal() const {
  if (mantissa == 0) throw DomainError("reciprocal of zero");
  return ScaledRational{Rational(1) / mantissa, -exp2};
}

ScaledRational ScaledRational::operator*(const ScaledRational& o) const {
  return ScaledRational{mantissa * o.mantissa, exp2 + o.exp2};
}

bool ScaledRational::is_one() const { return exp2 == 0 && mantissa == 1; }

Big ScaledRational::to_big() const {
  Big num(boost::multiprecision::numerator(mantissa));
  Big den(boost::multiprecision::denominator(mantissa));
  return boost::multiprecision::ldexp(num / den, static_cast<int>(exp2));
}

ScaledRational to_scaled(const Big& x) {
  int e = 0;
  Big f = boost::multiprecision::frexp(x, &e);
  // f carries at most 200 significant bits.
  constexpr int kBits = 200;
  boost::multiprecision::cpp_int num =
      static_cast<boost::multiprecision::cpp_int>(boost::multiprecision::ldexp(f, kBits));
  boost::multiprecision::cpp_int den = boost::multiprecision::cpp_int(1) << kBits;
  return ScaledRational{Rational(num, den), e};
}

void LedgerConfig::validate() const {
  if (!(delta1 > 0)) throw ConfigError("delta1 must be positive");
  if (!(rho0 > 0)) throw ConfigError("rho0 must be positive");
  if (!(L0 > 0)) throw ConfigError("L0 must be positive");
  if (n1 < 1) throw ConfigError("n1 must be positive");
  if (n < 0) throw ConfigError("n must be nonnegative");
  if (acyl_N < 1) throw ConfigError("N must be positive");
  if (kappa < 0) throw ConfigError("kappa must be nonnegative");
  if (!(M0 >= 1)) throw ConfigError("M0 must be at least 1");
  if (!(delta0 > 0) || !(Delta0 > 0)) throw ConfigError("delta0 and Delta0 must be positive");
  if (!(epsilon > 0 && epsilon < 0.5)) throw ConfigError("epsilon must lie in (0, 1/2)");
}

ParameterLedger compute_ledger(const LedgerConfig& cfg) {
  using boost::multiprecision::log;
  using boost::multiprecision::sinh;
  using boost::multiprecision::sqrt;
  cfg.validate();
  ParameterLedger L;
  L.config = cfg;
  L.delta1 = cfg.delta1;
  L.rho0 = cfg.rho0;
  L.L0 = cfg.L0;
  L.acyl_N = cfg.acyl_N;
  L.n1 = cfg.n1;
  Big d1 = L.delta1;
  L.A0 = std::max<Big>(6 * kPi * sinh(2 * L.L0 * d1), Big(50000) * d1);
  if (L.A0 < Big(50000) * d1 || L.A0 > L.rho0 / 500)
    throw ConfigError("A0 = " + format_big(L.A0) + " lies outside [5e4 delta1, rho0/500]");
  L.kappa = cfg.kappa > 0 ? Big(cfg.kappa) : L.A0;
  Big n = Big(cfg.n > 0 ? cfg.n : cfg.n1);
  L.epsilon_n = 8 * kPi * sinh(L.rho0) / sqrt(L.rho0 * L.L0 * d1) / sqrt(n);
  const Big& e = L.epsilon_n;
  L.epsilon_conditions[0] = e * d1 <= Big(cfg.delta0);
  L.epsilon_conditions[1] =
      e * (L.A0 + 118 * d1) <= std::min<Big>(Big(cfg.Delta0), kPi * sinh(2 * L.L0 * d1));
  L.epsilon_conditions[2] = e * L.rho0 * L.L0 * d1 / (16 * kPi * sinh(L.rho0)) <= d1;
  L.epsilon_conditions[3] = e < 1;
  L.epsilon_sanity = e >= 1 / sqrt(n);

  L.tau = sqrt(L.rho0 * L.L0 * d1 / (4 * Big(cfg.n1)));
  L.alpha = std::max<Big>(1002 * d1, 25 * L.kappa);
  L.lambda0 = sqrt(Big(cfg.n1)) * kPi * sinh(100 * L.A0);
  // Thresholds for the alphabet U v, whose energy is at most 2 lambda0.
  Big lamW = 2 * L.lambda0;
  Big D = L.alpha + 100 * d1;
  Big tau = L.tau;
  Big eps = cfg.epsilon;
  L.m0 = 2 + 2 * D / tau;
  Big m1a = L.m0 + 5 * lamW / tau;
  Big m1b = 2 * L.m0 * lamW / d1 + 3 * lamW / tau;
  Big m1c = (lamW / tau) *
            ((2 * L.m0 * tau / d1 + 3) * log(Big(2)) - log(eps / (4 * (1 - eps)))) /
            log(2 * (1 - eps));
  Big m1d = lamW / tau;
  L.m1 = std::max({m1a, m1b, m1c, m1d});
  L.m2 = L.m1 + (2 * L.lambda0 + 20 * d1) / tau;
  L.xi = Big(cfg.n1 + 1);
  L.n2 = std::max({Big(100), Big(50) * Big(cfg.n1), 2 * (L.m2 + L.xi)});

  Big Mv = std::max({Big(cfg.M0), 4 * L.A0 * L.acyl_N / d1,
                     4 * Big(1000000) * L.acyl_N * L.lambda0 / d1});
  L.M = to_scaled(Mv);
  L.a = L.M.reciprocal();
  L.a_times_M_is_one = (L.a * L.M).is_one();
  return L;
}

std::string format_big(const Big& x, int digits) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(digits) << x;
  return os.str();
}

}  // namespace pgrowth
