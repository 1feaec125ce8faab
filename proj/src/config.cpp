#include "emt/config.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "emt/errors.hpp"
#include "emt/export.hpp"

namespace emt {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const std::string& expected) {
  throw ConfigError(key + ": expected " + expected + ", got '" + value + "'");
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) bad_value(key, v, "a non-negative integer");
  try {
    return std::stoull(v);
  } catch (const std::out_of_range&) {
    bad_value(key, v, "a non-negative integer");
  }
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::logic_error&) {
    bad_value(key, v, "a number");
  }
  if (pos != v.size()) bad_value(key, v, "a number");
  return d;
}

double to_probability(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (!(d >= 0.0 && d <= 1.0)) throw ConfigError(key + ": " + v + " is outside [0, 1]");
  return d;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(key, v, "true or false");
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "test_case",  "instance",   "solver",      "seed",        "reps",          "jobs",
      "out",        "instance_dir", "control",   "population",  "grid_rows",     "grid_cols",
      "budget",     "rmp",        "rmp_initial", "mutation_probability", "delta_inc", "delta_dec",
      "rmp_frozen", "adaptive_frequency", "p_same_task"};
  return keys;
}

void set_config_value(CliConfig& c, const std::string& key, const std::string& value) {
  auto& s = c.solver_config;
  if (key == "format_version") {
    if (to_uint(key, value) != static_cast<std::uint64_t>(kFormatVersion))
      throw ConfigError("format_version: unsupported version " + value);
  } else if (key == "test_case") {
    c.test_case = value;
  } else if (key == "instance") {
    c.instances.push_back(value);
  } else if (key == "solver") {
    c.solver = value;
  } else if (key == "seed") {
    c.seed = to_uint(key, value);
  } else if (key == "reps") {
    c.reps = to_uint(key, value);
    if (c.reps == 0) throw ConfigError("reps: must be >= 1");
  } else if (key == "jobs") {
    c.jobs = to_uint(key, value);
    if (c.jobs == 0) throw ConfigError("jobs: must be >= 1");
  } else if (key == "out") {
    c.out_dir = value;
  } else if (key == "instance_dir") {
    c.instance_dir = value;
  } else if (key == "control") {
    c.control = value;
  } else {
    if (key == "population") {
      s.population = to_uint(key, value);
    } else if (key == "grid_rows") {
      s.grid_rows = to_uint(key, value);
    } else if (key == "grid_cols") {
      s.grid_cols = to_uint(key, value);
    } else if (key == "budget") {
      s.budget = to_uint(key, value);
    } else if (key == "rmp") {
      s.rmp = to_probability(key, value);
    } else if (key == "rmp_initial") {
      s.rmp_initial = to_probability(key, value);
    } else if (key == "mutation_probability") {
      s.mutation_probability = to_probability(key, value);
    } else if (key == "delta_inc") {
      s.delta_inc = to_probability(key, value);
    } else if (key == "delta_dec") {
      s.delta_dec = to_probability(key, value);
    } else if (key == "rmp_frozen") {
      s.rmp_frozen = to_bool(key, value);
    } else if (key == "adaptive_frequency") {
      s.adaptive_frequency = to_uint(key, value);
      if (s.adaptive_frequency == 0) throw ConfigError("adaptive_frequency: must be >= 1");
    } else if (key == "p_same_task") {
      s.p_same_task = to_probability(key, value);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
    c.overridden.insert(key);
  }
}

void read_config(std::istream& in, CliConfig& config) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", lineno);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    try {
      set_config_value(config, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

CliConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  CliConfig c;
  try {
    read_config(in, c);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return c;
}

SolverConfig resolve_solver_config(const CliConfig& config, SizeClass size) {
  auto s = config.solver_config;
  const auto d = default_config(size);
  if (!config.overridden.count("population")) s.population = d.population;
  if (!config.overridden.count("grid_rows")) s.grid_rows = d.grid_rows;
  if (!config.overridden.count("grid_cols")) s.grid_cols = d.grid_cols;
  s.seed = config.seed;
  return s;
}

std::string effective_config_text(const CliConfig& c, const SolverConfig& s) {
  std::ostringstream out;
  out << "# emt effective configuration\n";
  out << "format_version = " << kFormatVersion << '\n';
  out << "# subcommand: " << c.subcommand << '\n';
  if (c.test_case) out << "test_case = " << *c.test_case << '\n';
  for (const auto& i : c.instances) out << "instance = " << i << '\n';
  out << "solver = " << c.solver << '\n';
  out << "seed = " << c.seed << '\n';
  out << "reps = " << c.reps << '\n';
  out << "jobs = " << c.jobs << '\n';
  if (!c.instance_dir.empty()) out << "instance_dir = " << c.instance_dir << '\n';
  if (c.control) out << "control = " << *c.control << '\n';
  out << "population = " << s.population << '\n';
  out << "grid_rows = " << s.grid_rows << '\n';
  out << "grid_cols = " << s.grid_cols << '\n';
  out << "budget = " << s.budget << '\n';
  out << "rmp = " << num(s.rmp) << '\n';
  out << "rmp_initial = " << num(s.rmp_initial) << '\n';
  out << "mutation_probability = " << num(s.mutation_probability) << '\n';
  out << "delta_inc = " << num(s.delta_inc) << '\n';
  out << "delta_dec = " << num(s.delta_dec) << '\n';
  out << "rmp_frozen = " << (s.rmp_frozen ? "true" : "false") << '\n';
  out << "adaptive_frequency = " << s.adaptive_frequency << '\n';
  out << "p_same_task = " << num(s.p_same_task) << '\n';
  return out.str();
}

}  // namespace emt
