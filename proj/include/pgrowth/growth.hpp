#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgrowth/reduction.hpp"

namespace pgrowth {

// V^r: products of exactly r elements of V, deduplicated by normal form.
ElementSet product_set(const ElementSet& V, int r, std::uint64_t budget = 10000000);
// |V^0|, ..., |V^r_max|, exact; ResourceError once a layer exceeds the budget.
std::vector<std::uint64_t> product_set_sizes(const ElementSet& V, int r_max,
                                             std::uint64_t budget = 10000000);
// Certified lower bound min(|V^r|, target): a depth-first product enumeration
// counting distinct normal-form hashes, stopping once target are seen. Only the
// hashes are kept, so huge elements cost no memory; a hash collision can only
// lower the count.
std::uint64_t count_product_set_at_least(const ElementSet& V, int r,
                                         std::uint64_t target,
                                         std::uint64_t budget = 10000000);

// Least-squares slope of ys against xs.
double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);

inline std::int64_t half_ceil(std::int64_t r) { return (r + 1) / 2; }

struct GrowthRow {
  int r = 0;
  std::uint64_t count = 0;
  bool exact = true;  // false: count certifies only |U^r| >= count
  double corollary_bound = 0.0;
  std::uint64_t semigroup_bound = 0;  // |W|^[(r+1)/2]
  bool corollary_holds = false;
  bool semigroup_holds = false;
};

struct GrowthReport {
  std::string group;
  ElementSet V;
  // "verified", "failed", "skipped" or "small_set"
  std::string status;
  std::string note;
  std::int64_t lambda = 0;
  std::size_t W_size = 0;
  std::int64_t cardinality_bound = 0;
  std::vector<GrowthRow> rows;
  std::optional<FreeSemigroupResult> semigroup;
  double elapsed_ms = 0.0;
};

// Runs construct_free_semigroup and compares |U^r| with both lower bounds.
// Exact counts are used while |U|^r stays within exact_cap products and the
// stored layer within a fixed syllable volume; beyond that the count
// certifies the larger of the two bounds.
GrowthReport verify_growth_theorem(const ElementSet& U, int r_max,
                                   const ReductionParams& prm,
                                   std::uint64_t budget = 10000000,
                                   std::uint64_t exact_cap = 2000000);

struct OptimalityReport {
  std::int64_t n = 0;
  int r_max = 0;
  std::vector<int> Ns;
  // counts[i][r] = |V_N^r| for N = Ns[i]
  std::vector<std::vector<std::uint64_t>> counts;
  std::vector<double> slopes;     // index r, r = 1..r_max (slopes[0] unused)
  std::vector<double> expected;   // [(r+1)/2]
  std::vector<bool> within;       // |slope - expected| <= tolerance
  double tolerance = 0.25;
  std::vector<std::size_t> set_sizes;  // |V_N| as listed
  std::string note;
};
// V_N = {1, g, ..., g^N, h} in C_n * Z with g of order n.
OptimalityReport run_optimality_example(const std::vector<int>& Ns, std::int64_t n,
                                        int r_max, double tolerance = 0.25,
                                        std::uint64_t budget = 10000000);

// (1/r) ln |V^r|
double entropy_estimate(const ElementSet& V, int r, std::uint64_t budget = 10000000);

}  // namespace pgrowth
