#include "pgrowth/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace pgrowth {

namespace {

const char* kind_name(EnergyKind k) {
  return k == EnergyKind::Diffuse ? "diffuse" : "concentrated";
}

}  // namespace

Json element_list(const ElementSet& V) {
  Json a = Json::array();
  for (const auto& v : V) a.push_back(v.str());
  return a;
}

Json to_json(const EnergyCertificate& c) {
  return Json{{"basepoint", c.basepoint.str()},
              {"energy", c.energy_value},
              {"witness", c.witness.str()},
              {"search_radius", c.search_radius},
              {"exhaustive", c.exhaustive},
              {"method", c.method},
              {"visited", c.visited}};
}

Json to_json(const QuasiCentreResult& q) {
  return Json{{"p", q.p.str()}, {"steps", q.steps}, {"start_energy", q.start_energy},
              {"path", element_list(q.path)}};
}

Json to_json(const FreeSemigroupResult& r) {
  Json j{{"small_set", r.small_set},
         {"small_set_gate", r.small_set_gate},
         {"energy", to_json(r.certificate)},
         {"quasi_centre", to_json(r.quasi_centre)},
         {"kind", kind_name(r.kind)},
         {"p", r.p.str()},
         {"v", r.v.str()},
         {"alpha", r.alpha},
         {"lambda", r.lambda},
         {"cardinality_bound", r.cardinality_bound},
         {"W_size", r.W.size()},
         {"W", element_list(r.W)}};
  if (r.diffuse) {
    j["diffuse"] = Json{{"sector_case", r.diffuse->reduction.sector_case},
                        {"U1_size", r.diffuse->reduction.U1.size()},
                        {"max_cover", r.diffuse->max_cover},
                        {"cover_bound", r.diffuse->cover_bound}};
  }
  if (r.concentrated) {
    j["concentrated"] = Json{{"M", r.concentrated->M},
                             {"U1_size", r.concentrated->U1.size()},
                             {"U2_size", r.concentrated->U2.size()},
                             {"max_B", r.concentrated->max_B},
                             {"removed", r.concentrated->removed
                                             ? Json(r.concentrated->removed->str())
                                             : Json(nullptr)}};
  }
  return j;
}

Json to_json(const GrowthReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"r", row.r},
                        {"count", row.count},
                        {"exact", row.exact},
                        {"corollary_bound", row.corollary_bound},
                        {"semigroup_bound", row.semigroup_bound},
                        {"corollary_holds", row.corollary_holds},
                        {"semigroup_holds", row.semigroup_holds}});
  }
  Json j{{"group", r.group},
         {"set", element_list(r.V)},
         {"status", r.status},
         {"note", r.note},
         {"lambda", r.lambda},
         {"W_size", r.W_size},
         {"cardinality_bound", r.cardinality_bound},
         {"rows", rows}};
  if (r.semigroup) j["semigroup"] = to_json(*r.semigroup);
  return j;
}

Json to_json(const OptimalityReport& r) {
  Json sweep = Json::array();
  for (std::size_t i = 0; i < r.Ns.size(); ++i)
    sweep.push_back(Json{{"N", r.Ns[i]}, {"set_size", r.set_sizes[i]}, {"counts", r.counts[i]}});
  Json fits = Json::array();
  for (int k = 1; k <= r.r_max; ++k) {
    auto i = static_cast<std::size_t>(k);
    fits.push_back(Json{{"r", k},
                        {"slope", r.slopes[i]},
                        {"expected", r.expected[i]},
                        {"within_tolerance", static_cast<bool>(r.within[i])}});
  }
  return Json{{"n", r.n}, {"r_max", r.r_max}, {"tolerance", r.tolerance},
              {"sweep", sweep}, {"fits", fits}, {"note", r.note}};
}

Json to_json(const ParameterLedger& L) {
  auto b = [](const Big& x) { return format_big(x); };
  Json conds = Json::array();
  for (bool c : L.epsilon_conditions) conds.push_back(c);
  return Json{{"delta1", b(L.delta1)},
              {"kappa", b(L.kappa)},
              {"N", b(L.acyl_N)},
              {"rho0", b(L.rho0)},
              {"L0", b(L.L0)},
              {"A0", b(L.A0)},
              {"tau", b(L.tau)},
              {"alpha", b(L.alpha)},
              {"lambda0", b(L.lambda0)},
              {"m0", b(L.m0)},
              {"m1", b(L.m1)},
              {"m2", b(L.m2)},
              {"n1", L.n1},
              {"xi", b(L.xi)},
              {"n2", b(L.n2)},
              {"epsilon_n", b(L.epsilon_n)},
              {"epsilon_conditions", conds},
              {"epsilon_sanity", L.epsilon_sanity},
              {"M", b(L.M.to_big())},
              {"a", b(L.a.to_big())},
              {"a_times_M_is_one", L.a_times_M_is_one}};
}

Json to_json(const PeriodThresholds& t) {
  return Json{{"D", t.D}, {"tau_min", t.tau_min}, {"m0", t.m0},
              {"m1", t.m1}, {"m2", t.m2}, {"epsilon", t.epsilon}};
}

Json to_json(const ScanCounters& c) {
  return Json{{"periodic_scans", c.periodic_scans},
              {"uniqueness_checks", c.uniqueness_checks},
              {"uniqueness_violations", c.uniqueness_violations},
              {"minimal_scans", c.minimal_scans},
              {"max_minimal_found", c.max_minimal_found},
              {"minimal_violations", c.minimal_violations}};
}

std::string growth_csv(const GrowthReport& r) {
  std::ostringstream os;
  os << "radius,count,bound,margin\n";
  for (const auto& row : r.rows) {
    auto bound = static_cast<double>(row.semigroup_bound);
    os << row.r << ',' << row.count << ',' << row.semigroup_bound << ','
       << std::setprecision(12) << static_cast<double>(row.count) - bound << '\n';
  }
  return os.str();
}

std::string optimality_csv(const OptimalityReport& r) {
  std::ostringstream os;
  os << "N,radius,count,bound,margin\n";
  for (std::size_t i = 0; i < r.Ns.size(); ++i) {
    for (int k = 0; k <= r.r_max; ++k) {
      double bound = std::pow(static_cast<double>(r.Ns[i]), static_cast<double>(half_ceil(k)));
      auto c = r.counts[i][static_cast<std::size_t>(k)];
      os << r.Ns[i] << ',' << k << ',' << c << ',' << bound << ','
         << std::setprecision(12) << static_cast<double>(c) - bound << '\n';
    }
  }
  return os.str();
}

void write_report(const std::string& path, const Json& j, const std::string& csv) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write report " + path);
  f << j.dump(2) << '\n';
  if (!csv.empty()) {
    std::string p = path;
    auto dot = p.rfind('.');
    if (dot != std::string::npos && p.find('/', dot) == std::string::npos) p = p.substr(0, dot);
    std::ofstream c(p + ".csv");
    if (!c) throw ConfigError("cannot write report " + p + ".csv");
    c << csv;
  }
}

}  // namespace pgrowth
