#pragma once

#include <string>

#include "json.hpp"
#include "pgrowth/growth.hpp"
#include "pgrowth/ledger.hpp"
#include "pgrowth/words.hpp"

namespace pgrowth {

using Json = nlohmann::ordered_json;

Json element_list(const ElementSet& V);
Json to_json(const EnergyCertificate& c);
Json to_json(const QuasiCentreResult& q);
Json to_json(const FreeSemigroupResult& r);
Json to_json(const GrowthReport& r);
Json to_json(const OptimalityReport& r);
Json to_json(const ParameterLedger& L);
Json to_json(const PeriodThresholds& t);
Json to_json(const ScanCounters& c);

// CSV with columns radius,count,bound,margin.
std::string growth_csv(const GrowthReport& r);
std::string optimality_csv(const OptimalityReport& r);

// Writes JSON to path; a ".csv" sibling is written when csv is nonempty.
void write_report(const std::string& path, const Json& j, const std::string& csv = "");

}  // namespace pgrowth
