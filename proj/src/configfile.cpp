#include "wavetr/configfile.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace wavetr {

namespace {

const std::set<std::string> kKnownKeys = {
    "k0",  "L",   "R_m", "rho_0", "sigma", "l_c",  "grid_n",         "grid_extent",
    "n_steps", "y_x", "y_y", "b_x",   "b_y",   "seed", "n_realizations", "epsilon"};

const std::set<std::string> kRequiredKeys = {"k0",     "L",      "R_m",         "rho_0",
                                             "sigma",  "l_c",    "grid_n",      "grid_extent",
                                             "n_steps", "seed"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  auto [p, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || p != last)
    throw UsageError("config key '" + key + "': cannot parse '" + v + "' as a number");
  return out;
}

long long parse_int(const std::string& key, const std::string& v) {
  long long out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw UsageError("config key '" + key + "': cannot parse '" + v + "' as an integer");
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw UsageError("config key '" + key + "': cannot parse '" + v + "' as an unsigned integer");
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!kKnownKeys.count(key))
      throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (kv.count(key))
      throw UsageError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv[key] = value;
  }
  for (const auto& req : kRequiredKeys)
    if (!kv.count(req)) throw UsageError("config: missing required key '" + req + "'");

  ExperimentConfig cfg;
  cfg.k0 = parse_double("k0", kv.at("k0"));
  cfg.L = parse_double("L", kv.at("L"));
  cfg.mirror = derive_mirror(parse_double("R_m", kv.at("R_m")),
                             parse_double("rho_0", kv.at("rho_0")));
  cfg.medium = make_medium(parse_double("sigma", kv.at("sigma")),
                           parse_double("l_c", kv.at("l_c")));
  cfg.grid = TransverseGrid(static_cast<int>(parse_int("grid_n", kv.at("grid_n"))),
                            parse_double("grid_extent", kv.at("grid_extent")));
  cfg.n_steps = static_cast<int>(parse_int("n_steps", kv.at("n_steps")));
  cfg.master_seed = parse_u64("seed", kv.at("seed"));
  auto opt = [&](const char* key, double def) {
    return kv.count(key) ? parse_double(key, kv.at(key)) : def;
  };
  cfg.source_offset = {opt("y_x", 0.0), opt("y_y", 0.0)};
  cfg.shift_phase = {opt("b_x", 0.0), opt("b_y", 0.0)};
  cfg.epsilon = opt("epsilon", 1.0);
  cfg.n_realizations =
      kv.count("n_realizations")
          ? static_cast<int>(parse_int("n_realizations", kv.at("n_realizations")))
          : 100;
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

std::string write_config_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "k0 = " << format_double(cfg.k0) << "\n";
  out << "L = " << format_double(cfg.L) << "\n";
  out << "R_m = " << format_double(cfg.mirror.R_m) << "\n";
  out << "rho_0 = " << format_double(cfg.mirror.rho0) << "\n";
  out << "sigma = " << format_double(cfg.medium.sigma) << "\n";
  out << "l_c = " << format_double(cfg.medium.l_c) << "\n";
  out << "grid_n = " << cfg.grid.n << "\n";
  out << "grid_extent = " << format_double(cfg.grid.extent) << "\n";
  out << "n_steps = " << cfg.n_steps << "\n";
  out << "y_x = " << format_double(cfg.source_offset.x) << "\n";
  out << "y_y = " << format_double(cfg.source_offset.y) << "\n";
  out << "b_x = " << format_double(cfg.shift_phase.x) << "\n";
  out << "b_y = " << format_double(cfg.shift_phase.y) << "\n";
  out << "seed = " << cfg.master_seed << "\n";
  out << "n_realizations = " << cfg.n_realizations << "\n";
  out << "epsilon = " << format_double(cfg.epsilon) << "\n";
  return out.str();
}

}  // namespace wavetr
