#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pgrowth/config.hpp"
#include "pgrowth/growth.hpp"
#include "pgrowth/instances.hpp"
#include "pgrowth/ledger.hpp"
#include "pgrowth/reduction.hpp"
#include "pgrowth/report.hpp"
#include "pgrowth/words.hpp"

using namespace pgrowth;

namespace {

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> budget;
  std::string report_out;
  std::string set_override;
  bool random_set = false;
  bool reduce_first = false;
};

struct Context {
  ExperimentConfig cfg;
  GroupPtr group;
  ElementSet set;
  Element base;
};

Context load(const Globals& g) {
  Context c;
  c.cfg = g.config_path.empty() ? ExperimentConfig{} : load_config(g.config_path);
  if (g.seed) c.cfg.seed = *g.seed;
  if (g.budget) c.cfg.budget = *g.budget;
  if (!g.set_override.empty()) {
    c.cfg.set.clear();
    std::stringstream ss(g.set_override);
    std::string tok;
    while (std::getline(ss, tok, ',')) c.cfg.set.push_back(tok);
  }
  c.group = c.cfg.group();
  c.set = c.cfg.elements(*c.group);
  c.base = parse_element(*c.group, c.cfg.base);
  if (g.random_set) {
    Rng rng(c.cfg.seed);
    c.set = random_power_set(*c.group, PowerSetParams{}, rng);
  }
  return c;
}

ReductionParams params(const ExperimentConfig& cfg) {
  return ReductionParams{cfg.metric.delta, cfg.metric.kappa, cfg.metric.acyl_N, cfg.eta};
}

void emit(const Globals& g, const Json& j, const std::string& csv = "") {
  if (g.report_out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    write_report(g.report_out, j, csv);
  }
}

void require_set(const Context& c) {
  if (c.set.empty()) throw ConfigError("the experiment set is empty");
}

int cmd_verify_growth(const Globals& g) {
  auto c = load(g);
  require_set(c);
  auto rep = verify_growth_theorem(c.set, c.cfg.r_max, params(c.cfg), c.cfg.budget);
  std::cerr << "verify-growth: " << rep.status << " |U|=" << c.set.size()
            << " |W|=" << rep.W_size << " lambda=" << rep.lambda << '\n';
  emit(g, to_json(rep), growth_csv(rep));
  return rep.status == "failed" ? 1 : 0;
}

int cmd_optimal(const Globals& g) {
  auto c = load(g);
  auto rep = run_optimality_example(c.cfg.N_sweep, c.cfg.order, c.cfg.r_max, 0.25, c.cfg.budget);
  for (int r = 1; r <= rep.r_max; ++r)
    std::cerr << "r=" << r << " slope=" << rep.slopes[static_cast<std::size_t>(r)]
              << " expected=" << rep.expected[static_cast<std::size_t>(r)] << '\n';
  emit(g, to_json(rep), optimality_csv(rep));
  return 0;
}

int cmd_energy(const Globals& g) {
  auto c = load(g);
  require_set(c);
  auto cert = find_energy_minimizer(c.set, c.cfg.budget);
  auto qc = find_quasi_centre(c.set, cert.basepoint, c.cfg.metric.delta);
  auto cls = classify_energy(c.set, qc.p, c.cfg.metric.kappa);
  Json j{{"minimizer", to_json(cert)},
         {"quasi_centre", to_json(qc)},
         {"is_quasi_centre", is_quasi_centre(c.set, qc.p, c.cfg.metric.delta)},
         {"kind", cls.kind == EnergyKind::Diffuse ? "diffuse" : "concentrated"}};
  emit(g, j);
  return 0;
}

int cmd_reduce(const Globals& g) {
  auto c = load(g);
  require_set(c);
  auto res = construct_free_semigroup(c.set, params(c.cfg));
  Json j = to_json(res);
  if (!res.small_set) {
    auto rr = check_reduced(res.W, res.p, res.alpha, c.cfg.metric.delta);
    j["check"] = to_string(rr.kind);
  }
  emit(g, j);
  return 0;
}

int cmd_aperiodic(const Globals& g) {
  auto c = load(g);
  require_set(c);
  Alphabet A;
  if (g.reduce_first) {
    auto res = construct_free_semigroup(c.set, params(c.cfg));
    if (res.small_set) throw DomainError("the set fell under the small-set gate");
    A = make_alphabet(res.W, res.p, res.alpha, c.cfg.metric.delta);
  } else {
    A = make_alphabet(c.set, c.base, 0.0, c.cfg.metric.delta, false);
  }
  auto th = period_thresholds(A);
  auto counts = aperiodic_sphere_counts(A, c.cfg.m, c.cfg.r_max, c.cfg.budget);
  Json rows = Json::array();
  std::uint64_t ball = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    ball += counts[k];
    rows.push_back(Json{{"r", k}, {"sphere", counts[k]}, {"ball", ball}});
  }
  emit(g, Json{{"m", c.cfg.m}, {"thresholds", to_json(th)}, {"rows", rows},
               {"counters", to_json(scan_counters())}});
  return 0;
}

constexpr std::int64_t kGeometricMaxLength = 256;

int cmd_power_scan(const Globals& g) {
  auto c = load(g);
  require_set(c);
  Json rows = Json::array();
  for (const auto& x : c.set) {
    bool runs = contains_m_power_runs(x, c.cfg.m, c.cfg.metric.delta);
    Json row{{"element", x.str()}, {"runs", runs}};
    // The geometric scan is cubic in the word length; past the limit only runs is reported.
    if (x.length() <= kGeometricMaxLength) {
      row["geometric"] = contains_m_power_geometric(x, c.cfg.m, c.cfg.metric.delta);
    } else {
      row["geometric"] = nullptr;
      row["note"] = "geometric scan skipped: length > " + std::to_string(kGeometricMaxLength);
    }
    rows.push_back(row);
  }
  emit(g, Json{{"m", c.cfg.m}, {"delta", c.cfg.metric.delta}, {"rows", rows}});
  return 0;
}

int cmd_ledger(const Globals& g) {
  auto c = load(g);
  emit(g, to_json(compute_ledger(c.cfg.ledger)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Growth of product sets in free products: experiments and checks"};
  Globals g;
  app.add_option("--config", g.config_path, "Experiment config file");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--budget", g.budget, "Resource budget");
  app.add_option("--report-out", g.report_out, "Write the JSON report (and CSV) here");
  app.add_option("--set", g.set_override, "Comma-separated elements overriding the config set");
  app.add_flag("--random-set", g.random_set, "Use a seeded random set of large powers");
  app.add_flag("--reduce", g.reduce_first,
               "aperiodic-count: use the strongly reduced set extracted from the set");
  app.require_subcommand(1);

  int rc = 0;
  auto add = [&](const char* name, const char* help, int (*fn)(const Globals&)) {
    app.add_subcommand(name, help)->callback([&rc, &g, fn] { rc = fn(g); });
  };
  add("verify-growth", "Check the product-set growth bounds", cmd_verify_growth);
  add("optimal-example", "Sweep V_N = {1, g, ..., g^N, h}", cmd_optimal);
  add("energy", "Energy minimiser and quasi-centre", cmd_energy);
  add("reduce", "Extract a strongly reduced set", cmd_reduce);
  add("aperiodic-count", "Count m-aperiodic words", cmd_aperiodic);
  add("power-scan", "Detect m-powers in the set elements", cmd_power_scan);
  add("ledger", "Evaluate the constant ledger", cmd_ledger);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 4;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 5;
  }
  return rc;
}
