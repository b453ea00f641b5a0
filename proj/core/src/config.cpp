#include "prh/config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "prh/errors.hpp"

namespace prh {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct KeyValue {
  std::string value;
  int line = 0;
  bool consumed = false;
};

using Table = std::map<std::string, KeyValue>;

class Reader {
 public:
  Reader(Table table, std::string file)
      : table_(std::move(table)), file_(std::move(file)) {}

  bool has(const std::string& key) { return table_.count(key) != 0; }

  std::string raw(const std::string& key) {
    auto it = table_.find(key);
    if (it == table_.end()) {
      throw ConfigError(file_ + ": missing required key '" + key + "'");
    }
    it->second.consumed = true;
    return it->second.value;
  }

  std::string raw_or(const std::string& key, const std::string& dflt) {
    return has(key) ? raw(key) : dflt;
  }

  double number(const std::string& key) { return to_number(key, raw(key)); }

  double number_or(const std::string& key, double dflt) {
    return has(key) ? number(key) : dflt;
  }

  int integer(const std::string& key) {
    const double v = number(key);
    const int i = static_cast<int>(v);
    if (i != v) {
      throw ConfigError(file_ + ": key '" + key + "' must be an integer");
    }
    return i;
  }

  bool flag_or(const std::string& key, bool dflt) {
    if (!has(key)) return dflt;
    const std::string v = raw(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(file_ + ": key '" + key + "' must be a boolean");
  }

  std::vector<double> numbers(const std::string& key) {
    std::istringstream ss(raw(key));
    std::vector<double> out;
    std::string tok;
    while (ss >> tok) out.push_back(to_number(key, tok));
    if (out.empty()) {
      throw ConfigError(file_ + ": key '" + key + "' must list numbers");
    }
    return out;
  }

  std::vector<Vec3> points(const std::string& key) {
    // semicolon-separated triples: "0 0 0 ; 2 0 0"
    const std::string v = raw(key);
    std::vector<Vec3> out;
    std::size_t pos = 0;
    while (pos <= v.size()) {
      const std::size_t end = std::min(v.find(';', pos), v.size());
      std::istringstream ss(v.substr(pos, end - pos));
      Vec3 p;
      if (!(ss >> p[0] >> p[1] >> p[2])) {
        throw ConfigError(file_ + ": key '" + key +
                          "' must list x y z triples separated by ';'");
      }
      std::string rest;
      if (ss >> rest) {
        throw ConfigError(file_ + ": key '" + key +
                          "': trailing tokens in point '" + rest + "'");
      }
      out.push_back(p);
      if (end == v.size()) break;
      pos = end + 1;
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, kv] : table_) {
      if (!kv.consumed) {
        throw ConfigError(file_ + ":" + std::to_string(kv.line) +
                          ": unknown key '" + key + "'");
      }
    }
  }

 private:
  double to_number(const std::string& key, const std::string& tok) const {
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ConfigError(file_ + ": key '" + key + "': bad number '" + tok +
                        "'");
    }
  }

  Table table_;
  std::string file_;
};

}  // namespace

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());

  Table table;
  std::string section, line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                          ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": expected key = value");
    }
    const std::string key = section + "." + trim(line.substr(0, eq));
    if (table.count(key)) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
    }
    table[key] = {trim(line.substr(eq + 1)), lineno, false};
  }

  Reader r(std::move(table), path.string());
  RunConfig cfg;
  cfg.n = r.integer("grid.n");
  cfg.L = r.number("grid.L");
  cfg.m = r.number("physics.m");
  if (r.has("physics.a_fraction")) {
    cfg.a_fractions = {r.number("physics.a_fraction")};
  }
  if (r.has("physics.a_fractions")) {
    if (!cfg.a_fractions.empty()) {
      throw ConfigError(path.string() +
                        ": give either a_fraction or a_fractions, not both");
    }
    cfg.a_fractions = r.numbers("physics.a_fractions");
  }
  if (r.has("potential.points")) {
    cfg.trap_points = r.points("potential.points");
    cfg.trap_exponents = r.numbers("potential.exponents");
  }
  cfg.tol = r.number("solver.tol");
  cfg.max_iter = r.integer("solver.max_iter");
  const std::string tau0 = r.raw_or("solver.tau0", "auto");
  if (tau0 != "auto") {
    std::istringstream ss(tau0);
    if (!(ss >> cfg.tau0) || !(cfg.tau0 > 0)) {
      throw ConfigError(path.string() +
                        ": solver.tau0 must be 'auto' or a positive number");
    }
  }
  cfg.directory = r.raw_or("outputs.directory", "out");
  cfg.dump_fields = r.flag_or("outputs.dump_fields", false);
  cfg.qstate = r.raw_or("inputs.qstate", "");
  if (r.has("trial.R_values")) cfg.R_values = r.numbers("trial.R_values");
  cfg.delta = r.number_or("trial.delta", 0);
  cfg.box_scale = r.number_or("sweep.box_scale", 0);
  cfg.L_min = r.number_or("sweep.L_min", 0);
  cfg.fit_lo = r.number_or("analyze.fit_lo", 0.8);
  cfg.fit_hi = r.number_or("analyze.fit_hi", 0.98);
  cfg.profile_box = r.number_or("analyze.profile_box", 0);
  cfg.profile_n = static_cast<int>(r.number_or("analyze.profile_n", 0));
  r.finish();

  validate_config(cfg);
  return cfg;
}

void validate_config(const RunConfig& cfg) {
  if (cfg.n < 8 || cfg.n % 2 != 0) {
    throw ConfigError("config: grid.n must be even and >= 8");
  }
  if (!(cfg.L > 0)) throw ConfigError("config: grid.L must be positive");
  if (!(cfg.tol > 0)) throw ConfigError("config: solver.tol must be positive");
  if (cfg.max_iter <= 0) {
    throw ConfigError("config: solver.max_iter must be positive");
  }
  for (double f : cfg.a_fractions) {
    if (f < 0 || f > 2) {
      throw ConfigError("config: coupling fractions must lie in [0, 2]");
    }
  }
  if (cfg.trap_points.size() != cfg.trap_exponents.size()) {
    throw ConfigError(
        "config: potential.points and potential.exponents disagree");
  }
  for (const auto& pt : cfg.trap_points) {
    for (double c : pt) {
      if (std::abs(c) > 0.75 * cfg.L) {
        throw ConfigError(
            "config: trap point outside the box margin (|x| <= 3L/4)");
      }
    }
  }
  for (double pexp : cfg.trap_exponents) {
    if (!(pexp > 0)) {
      throw ConfigError("config: potential exponents must be positive");
    }
  }
}

}  // namespace prh
