#include "pgrowth/config.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"

namespace pgrowth {

namespace {

std::string join_inputs(const CLI::ConfigItem& it) {
  std::string out;
  for (const auto& s : it.inputs) {
    if (!out.empty()) out += ',';
    out += s;
  }
  return out;
}

std::string one(const CLI::ConfigItem& it) {
  if (it.inputs.size() != 1)
    throw ConfigError("key " + it.fullname() + " expects a single value");
  return it.inputs.front();
}

double to_double(const CLI::ConfigItem& it) {
  try {
    std::size_t pos = 0;
    std::string s = one(it);
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw ConfigError("bad number for " + it.fullname());
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError("bad number for " + it.fullname());
  }
}

std::int64_t to_int(const CLI::ConfigItem& it) {
  try {
    std::size_t pos = 0;
    std::string s = one(it);
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw ConfigError("bad integer for " + it.fullname());
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError("bad integer for " + it.fullname());
  }
}

std::vector<std::string> to_list(const CLI::ConfigItem& it) {
  std::vector<std::string> out;
  for (const auto& s : it.inputs) {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      auto b = tok.find_first_not_of(" \t\"");
      auto e = tok.find_last_not_of(" \t\"");
      if (b != std::string::npos) out.push_back(tok.substr(b, e - b + 1));
    }
  }
  return out;
}

ExperimentConfig from_items(const std::vector<CLI::ConfigItem>& items) {
  ExperimentConfig c;
  for (const auto& it : items) {
    if (it.name == "++" || it.name == "--") continue;
    std::string sec = it.parents.empty() ? "" : it.parents.front();
    const std::string& k = it.name;
    if (sec == "group") {
      if (k == "orders") {
        c.orders.clear();
        for (const auto& s : to_list(it)) {
          try {
            c.orders.push_back(std::stoll(s));
          } catch (const std::logic_error&) {
            throw ConfigError("bad factor order '" + s + "'");
          }
        }
      } else if (k == "names") {
        c.names = to_list(it);
      } else {
        throw ConfigError("unknown key group." + k);
      }
    } else if (sec == "metric") {
      if (k == "delta") c.metric.delta = to_double(it);
      else if (k == "kappa") c.metric.kappa = to_double(it);
      else if (k == "N") c.metric.acyl_N = to_int(it), c.ledger.acyl_N = c.metric.acyl_N;
      else if (k == "rho") c.metric.rho = to_double(it);
      else if (k == "delta1") c.ledger.delta1 = to_double(it);
      else if (k == "rho0") c.ledger.rho0 = to_double(it);
      else if (k == "L0") c.ledger.L0 = to_double(it);
      else if (k == "n1") c.ledger.n1 = to_int(it);
      else if (k == "n") c.ledger.n = to_int(it);
      else if (k == "M0") c.ledger.M0 = to_double(it);
      else if (k == "delta0") c.ledger.delta0 = to_double(it);
      else if (k == "Delta0") c.ledger.Delta0 = to_double(it);
      else if (k == "A_kappa") c.ledger.kappa = to_double(it);
      else throw ConfigError("unknown key metric." + k);
    } else if (sec == "experiment") {
      if (k == "set") c.set = to_list(it);
      else if (k == "base") c.base = one(it);
      else if (k == "r_max") c.r_max = static_cast<int>(to_int(it));
      else if (k == "m") c.m = to_double(it);
      else if (k == "seed") c.seed = static_cast<std::uint64_t>(to_int(it));
      else if (k == "budget") c.budget = static_cast<std::uint64_t>(to_int(it));
      else if (k == "eta") c.eta = to_double(it);
      else if (k == "order") c.order = to_int(it);
      else if (k == "N_sweep") {
        c.N_sweep.clear();
        for (const auto& s : to_list(it)) c.N_sweep.push_back(std::stoi(s));
      } else {
        throw ConfigError("unknown key experiment." + k);
      }
    } else {
      throw ConfigError("unknown section or key '" + join_inputs(it) + "' at " + it.fullname());
    }
  }
  c.validate();
  return c;
}

}  // namespace

GroupPtr ExperimentConfig::group() const { return make_group(orders, names); }

std::vector<Element> ExperimentConfig::elements(const GroupSpec& g) const {
  std::vector<Element> out;
  for (const auto& s : set) out.push_back(parse_element(g, s));
  return out;
}

void ExperimentConfig::validate() const {
  metric.validate();
  ledger.validate();
  if (r_max < 0) throw ConfigError("r_max must be nonnegative");
  if (!(m > 0)) throw ConfigError("m must be positive");
  if (budget == 0) throw ConfigError("budget must be positive");
  if (!(eta > 0 && eta < 1)) throw ConfigError("eta must lie in (0, 1)");
  auto g = group();
  for (const auto& s : set) parse_element(*g, s);
  parse_element(*g, base);
}

ExperimentConfig parse_config(const std::string& text) {
  std::istringstream in(text);
  try {
    return from_items(CLI::ConfigTOML().from_config(in));
  } catch (const CLI::Error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace pgrowth
