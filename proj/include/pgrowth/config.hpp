#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pgrowth/geometry.hpp"
#include "pgrowth/ledger.hpp"

namespace pgrowth {

// File layout (TOML-style):
//   [group]       orders = [0, 0]   names = ["a", "b"]
//   [metric]      delta, kappa, N, rho, and the ledger inputs delta1, rho0,
//                 L0, n1, M0, delta0, Delta0
//   [experiment]  set = ["a^1000", "b^1000"], base, r_max, m, seed, budget,
//                 eta, order, N_sweep
struct ExperimentConfig {
  std::vector<std::int64_t> orders{0, 0};
  std::vector<std::string> names;
  MetricConfig metric;
  LedgerConfig ledger;
  std::vector<std::string> set;
  std::string base = "1";
  int r_max = 4;
  double m = 1.0;
  std::uint64_t seed = 1;
  std::uint64_t budget = 10000000;
  double eta = 0.01;
  std::int64_t order = 1009;  // n of C_n * Z in the optimality example
  std::vector<int> N_sweep{2, 3, 4, 5, 6, 7, 8};

  GroupPtr group() const;
  std::vector<Element> elements(const GroupSpec& g) const;
  void validate() const;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text);

}  // namespace pgrowth
