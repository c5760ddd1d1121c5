#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgrowth/energy.hpp"

namespace pgrowth {

enum class ReducedKind { Neither, Reduced, StronglyReduced };
const char* to_string(ReducedKind k);

struct ReducedSetReport {
  Element base;
  double alpha = 0.0;
  ReducedKind kind = ReducedKind::Neither;
  // First pair (u1, u2) breaking the strongest property that failed.
  std::optional<std::pair<Element, Element>> violating_pair;
  std::string violated;  // "gromov", "length", "strong" or empty
};

ReducedSetReport check_reduced(const ElementSet& U, const Element& p, double alpha,
                               double delta);

struct ExtensionReport {
  bool holds = true;
  std::uint64_t pairs_checked = 0;
  // Words as letter-index sequences over W.
  std::optional<std::pair<std::vector<int>, std::vector<int>>> violation;
};
// Exhaustive geodesic-extension check over all pairs of words of length at
// most `radius`: (p, w'p)_{wp} <= alpha + 145 delta forces w to prefix w'.
ExtensionReport check_geodesic_extension(const ElementSet& W, const Element& p,
                                         double alpha, double delta, int radius,
                                         std::uint64_t pair_budget = 50000000);

struct ReductionParams {
  double delta = 1.0;
  double kappa = 100.0;
  std::int64_t acyl_N = 1;
  double eta = 0.01;
};

struct ReductionResult {
  Element v;
  ElementSet U1;
  // "single", "aligned", "through_z0", "through_y0" or "split".
  std::string sector_case;
};
ReductionResult reduce_diffuse(const ElementSet& U, const Element& p,
                               const ReductionParams& prm);

struct DiffuseExtraction {
  ReductionResult reduction;
  ElementSet T;  // U1 v
  ElementSet W;
  double alpha = 0.0;
  std::size_t max_cover = 0;  // max |A_w| over w in T
  double cover_bound = 0.0;   // 2065 N lambda / delta
  bool covers_T = true;
};
// lambda is the certified energy of U.
DiffuseExtraction extract_strongly_reduced_diffuse(const ElementSet& U,
                                                   const Element& p,
                                                   const ReductionParams& prm,
                                                   double lambda);

struct ConcentratedExtraction {
  bool small_set = false;
  double M = 0.0;  // 2 kappa N / delta
  Element v;
  ElementSet U1, U2, W;
  std::optional<Element> removed;
  std::size_t max_B = 0;
  double alpha = 0.0;
};
ConcentratedExtraction extract_strongly_reduced_concentrated(
    const ElementSet& U, const Element& p, const ReductionParams& prm);

struct FreeSemigroupResult {
  bool small_set = false;
  double small_set_gate = 0.0;  // 400 kappa N / delta
  EnergyCertificate certificate;
  QuasiCentreResult quasi_centre;
  EnergyKind kind = EnergyKind::Diffuse;
  Element p;
  Element v;
  ElementSet W;
  double alpha = 0.0;
  std::int64_t lambda = 0;
  // ceil(|U| delta / (10^6 N lambda))
  std::int64_t cardinality_bound = 0;
  std::optional<DiffuseExtraction> diffuse;
  std::optional<ConcentratedExtraction> concentrated;
};
FreeSemigroupResult construct_free_semigroup(const ElementSet& U,
                                             const ReductionParams& prm,
                                             std::uint64_t energy_budget = 2000000);

struct InjectivityReport {
  bool injective = true;
  std::uint64_t words = 0;
  std::uint64_t fingerprint_collisions = 0;
  std::string method;  // "sl2_fingerprint" or "normal_form"
  std::optional<std::pair<std::vector<int>, std::vector<int>>> violation;
};
// Brute-force injectivity of W* -> G on words of length <= radius.
InjectivityReport check_injectivity(const ElementSet& W, int radius,
                                    std::uint64_t budget = 60000000);

// Product of the letters w[0] ... w[n-1] of W.
Element evaluate_word(const ElementSet& W, const std::vector<int>& w,
                      const GroupSpec& g);

}  // namespace pgrowth
