#pragma once

#include <cstdint>
#include <vector>

#include "pgrowth/energy.hpp"

namespace pgrowth {

// Letters of the free monoid W* are indices into Alphabet::images.
using MonoidWord = std::vector<int>;

struct Alphabet {
  ElementSet images;
  Element base;  // p
  double alpha = 0.0;
  double delta = 1.0;
  std::int64_t lambda = 0;  // max |up - p|

  std::size_t size() const { return images.size(); }
  const GroupSpec& group() const { return *images.front().group(); }
};

// Builds the alphabet and computes lambda. With validate set the images must be
// strongly reduced at (p, alpha), otherwise DomainError.
Alphabet make_alphabet(const ElementSet& W, const Element& p, double alpha,
                       double delta, bool validate = true);

// Maximal loxodromic subgroup <c r c^-1> with cylinder the line c * axis(r).
struct Period {
  Element root;        // primitive, cyclically reduced, hyperbolic
  Element conjugator;  // c
  std::int64_t tau() const { return root.length(); }
  Element generator() const;
  // Canonical generator of the subgroup: lex-least of g and g^-1.
  Element key() const;
};
// Period of the maximal loxodromic subgroup containing a hyperbolic h.
Period period_of(const Element& h);
bool same_subgroup(const Period& a, const Period& b);
std::int64_t dist_to_period(const Element& x, const Period& E);

Element image(const Alphabet& A, const MonoidWord& w);
// {p, u1 p, u1 u2 p, ..., w p}
std::vector<Element> trace(const Alphabet& A, const MonoidWord& w);

struct PeriodThresholds {
  double D = 0.0;        // alpha + 100 delta
  double tau_min = 1.0;  // least translation length of a hyperbolic element
  double m0 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double epsilon = 0.25;
};
// lambda_S is the energy of the original set (defaults to the alphabet's).
PeriodThresholds period_thresholds(const Alphabet& A, double lambda_S = -1.0,
                                   double epsilon = 0.25);

bool is_m_periodic(const Alphabet& A, const MonoidWord& w, const Period& E, double m);

// All subgroups E for which w is m-periodic. For trees with m >= m0 a single
// candidate (least period of the trimmed geodesic) is complete; exhaustive
// forces the subword enumeration.
std::vector<Period> periods_of(const Alphabet& A, const MonoidWord& w, double m,
                               bool exhaustive = false);

// Words of length <= radius that are m-periodic with period E while no proper
// prefix is. More than two results raise InvariantError.
std::vector<MonoidWord> find_minimal_periodic_prefixes(const Alphabet& A,
                                                       const Period& E, double m,
                                                       int radius,
                                                       std::uint64_t budget = 20000000);

bool is_m_aperiodic(const Alphabet& A, const MonoidWord& w, double m);

// Number of m-aperiodic words of length <= r.
std::uint64_t count_aperiodic(const Alphabet& A, double m, int r,
                              std::uint64_t budget = 20000000);
// Entry k: number of m-aperiodic words of length exactly k, for k = 0..r.
std::vector<std::uint64_t> aperiodic_sphere_counts(const Alphabet& A, double m, int r,
                                                   std::uint64_t budget = 20000000);

struct ScanCounters {
  std::uint64_t periodic_scans = 0;
  std::uint64_t uniqueness_checks = 0;
  std::uint64_t uniqueness_violations = 0;
  std::uint64_t minimal_scans = 0;
  std::uint64_t max_minimal_found = 0;
  std::uint64_t minimal_violations = 0;
};
ScanCounters& scan_counters();
void reset_scan_counters();

// Power detection along the geodesic [e, g]; the neighbourhood radius 5 delta
// is taken on vertices, s = floor(5 delta).
bool contains_m_power_runs(const Element& g, double m, double delta);
bool contains_m_power_geometric(const Element& g, double m, double delta);
// Largest diam / tau over candidate periods, as numerator/denominator pairs.
struct PowerWitness {
  std::int64_t diameter = 0;
  std::int64_t tau = 0;
};
std::vector<PowerWitness> power_witnesses_geometric(const Element& g, double delta);

// |{m-power-free elements of (W v)^r}|.
std::uint64_t count_power_free(const Alphabet& A, const Element& v, double m, int r,
                               std::uint64_t budget = 10000000);

}  // namespace pgrowth
