#include "pmdyn/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "pmdyn/errors.hpp"

namespace pmdyn {

double TimeGrid::at(int i) const {
  if (points <= 1) return t_start;
  return t_start + (t_end - t_start) * static_cast<double>(i) / (points - 1);
}

namespace {

const std::set<std::string> kPhysicsKeys = {"J",  "chi",    "B",      "b",     "D",
                                            "T1", "T2",     "gamma1", "gamma2",
                                            "gamma0"};
const std::set<std::string> kRunKeys = {"initial_state", "t_start", "t_end",
                                        "t_points", "geometry"};
const std::set<std::string> kCustomStateKeys = {"rho_00",    "rho_11",   "rho_22",
                                                "rho_33",    "rho_03_re", "rho_03_im",
                                                "rho_12_re", "rho_12_im"};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value, int line) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("line " + std::to_string(line) + ": value for '" + key +
                      "' is not a number: '" + value + "'");
  }
  return out;
}

int parse_int(const std::string& key, const std::string& value, int line) {
  int out = 0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("line " + std::to_string(line) + ": value for '" + key +
                      "' is not an integer: '" + value + "'");
  }
  return out;
}

}  // namespace

Scenario parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::map<std::string, int> kv_line;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    }
    if (!kPhysicsKeys.count(key) && !kRunKeys.count(key) &&
        !kCustomStateKeys.count(key)) {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key +
                        "'");
    }
    if (kv.count(key)) {
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key +
                        "' (first set on line " + std::to_string(kv_line[key]) + ")");
    }
    kv[key] = value;
    kv_line[key] = lineno;
  }

  for (const auto& key : kPhysicsKeys) {
    if (!kv.count(key)) {
      throw ConfigError("missing required parameter '" + key + "'");
    }
  }

  auto num = [&](const std::string& key) {
    return parse_double(key, kv.at(key), kv_line.at(key));
  };

  Scenario sc;
  sc.system = SystemParams{num("J"), num("chi"), num("B"), num("b"), num("D")};
  sc.baths = BathParams{num("T1"), num("T2"), num("gamma1"), num("gamma2"),
                        num("gamma0")};

  // Fail fast on out-of-domain physics, with the offending key context.
  validate_params(sc.system);
  validate_baths(sc.baths);

  if (kv.count("initial_state")) {
    const std::string& v = kv.at("initial_state");
    if (v == "bell_psi_plus") {
      sc.initial = InitialStateKind::bell_psi_plus;
    } else if (v == "separable_nonzero_discord") {
      sc.initial = InitialStateKind::separable_nonzero_discord;
    } else if (v == "custom") {
      sc.initial = InitialStateKind::custom;
    } else {
      throw ConfigError("initial_state must be bell_psi_plus, "
                        "separable_nonzero_discord or custom; got '" + v + "'");
    }
  }

  if (sc.initial == InitialStateKind::custom) {
    for (const auto& key : kCustomStateKeys) {
      if (!kv.count(key)) {
        throw ConfigError("custom initial state: missing '" + key + "'");
      }
    }
    Matrix4c rho = Matrix4c::Zero();
    rho(0, 0) = num("rho_00");
    rho(1, 1) = num("rho_11");
    rho(2, 2) = num("rho_22");
    rho(3, 3) = num("rho_33");
    rho(0, 3) = Complex(num("rho_03_re"), num("rho_03_im"));
    rho(3, 0) = std::conj(rho(0, 3));
    rho(1, 2) = Complex(num("rho_12_re"), num("rho_12_im"));
    rho(2, 1) = std::conj(rho(1, 2));
    StateCheck c = check_density_matrix(rho);
    if (!c.ok) {
      throw ConfigError("custom initial state is not a density matrix (trace error " +
                        std::to_string(c.trace_error) + ", min eigenvalue " +
                        std::to_string(c.min_eigenvalue) + ")");
    }
    sc.custom_rho = rho;
  } else {
    for (const auto& key : kCustomStateKeys) {
      if (kv.count(key)) {
        throw ConfigError("'" + key + "' requires initial_state = custom");
      }
    }
  }

  bool has_end = kv.count("t_end"), has_pts = kv.count("t_points");
  if (has_end != has_pts) {
    throw ConfigError("t_end and t_points must be given together");
  }
  if (has_end) {
    TimeGrid g;
    g.t_start = kv.count("t_start") ? num("t_start") : 0.0;
    g.t_end = num("t_end");
    g.points = parse_int("t_points", kv.at("t_points"), kv_line.at("t_points"));
    if (g.points < 1 || g.t_end < g.t_start) {
      throw ConfigError("time grid needs t_end >= t_start and t_points >= 1");
    }
    sc.grid = g;
  } else if (kv.count("t_start")) {
    throw ConfigError("t_start requires t_end and t_points");
  }

  if (kv.count("geometry")) {
    const std::string& v = kv.at("geometry");
    if (v == "direct") {
      sc.geometry = Geometry::direct;
    } else if (v == "indirect") {
      sc.geometry = Geometry::indirect;
    } else {
      throw ConfigError("geometry must be direct or indirect; got '" + v + "'");
    }
    double product = sc.system.b * sc.baths.delta_temperature();
    if (sc.geometry == Geometry::direct && !(product > 0.0)) {
      throw ConfigError("geometry = direct requires b * (T1 - T2) > 0");
    }
    if (sc.geometry == Geometry::indirect && !(product < 0.0)) {
      throw ConfigError("geometry = indirect requires b * (T1 - T2) < 0");
    }
  }
  return sc;
}

Scenario parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

DensityMatrix initial_state(const Scenario& sc) {
  if (!sc.initial) {
    throw ConfigError("scenario has no initial_state");
  }
  DensityMatrix rho;
  rho.basis = Basis::standard;
  switch (*sc.initial) {
    case InitialStateKind::bell_psi_plus: {
      // (|01> + |10>)/sqrt(2)
      rho.mat = Matrix4c::Zero();
      rho.mat(1, 1) = 0.5;
      rho.mat(2, 2) = 0.5;
      rho.mat(1, 2) = 0.5;
      rho.mat(2, 1) = 0.5;
      break;
    }
    case InitialStateKind::separable_nonzero_discord: {
      // Werner mixture p |psi+><psi+| + (1-p) I/4 at p = 0.3: X-shaped,
      // separable (p <= 1/3) and carries discord of about 0.13 bits.
      const double p = 0.3;
      rho.mat = Matrix4c::Identity() * ((1.0 - p) / 4.0);
      rho.mat(1, 1) += 0.5 * p;
      rho.mat(2, 2) += 0.5 * p;
      rho.mat(1, 2) += 0.5 * p;
      rho.mat(2, 1) += 0.5 * p;
      break;
    }
    case InitialStateKind::custom:
      rho.mat = sc.custom_rho;
      break;
  }
  return rho;
}

namespace {

const std::vector<Preset> kPresets = {
    {"bell_weak_memory",
     "entangled input, weak-memory regime (gamma0/mean coupling = 200), D below "
     "the critical value",
     "# two-qubit trajectory, entangled input\n"
     "J = 1.0\n"
     "chi = 0.9\n"
     "B = 2.0\n"
     "b = 1.0\n"
     "D = 1.0\n"
     "T1 = 1.25\n"
     "T2 = 0.75\n"
     "# mean coupling 0.01; gamma0 = 200 * mean coupling\n"
     "gamma1 = 0.01\n"
     "gamma2 = 0.01\n"
     "gamma0 = 2.0\n"
     "initial_state = bell_psi_plus\n"
     "t_end = 300.0\n"
     "t_points = 601\n"},
    {"separable_weak_memory",
     "separable discordant input (Werner p = 0.3) in the same regime as bell_weak_memory",
     "# two-qubit trajectory, separable discordant input\n"
     "J = 1.0\n"
     "chi = 0.9\n"
     "B = 2.0\n"
     "b = 1.0\n"
     "D = 1.0\n"
     "T1 = 1.25\n"
     "T2 = 0.75\n"
     "gamma1 = 0.01\n"
     "gamma2 = 0.01\n"
     "gamma0 = 2.0\n"
     "initial_state = separable_nonzero_discord\n"
     "t_end = 300.0\n"
     "t_points = 601\n"},
    {"bell_strong_memory",
     "entangled input with a long-memory environment (gamma0/mean coupling = 2)",
     "# two-qubit trajectory, strong memory\n"
     "J = 1.0\n"
     "chi = 0.9\n"
     "B = 2.0\n"
     "b = 1.0\n"
     "D = 1.0\n"
     "T1 = 1.25\n"
     "T2 = 0.75\n"
     "gamma1 = 0.01\n"
     "gamma2 = 0.01\n"
     "gamma0 = 0.02\n"
     "initial_state = bell_psi_plus\n"
     "t_end = 300.0\n"
     "t_points = 601\n"},
    {"equal_temperature_sweep",
     "base point for the equal-temperature sweep of the stationary correlations",
     "# stationary-state sweep base; use: asymptotic --axis T\n"
     "J = 1.0\n"
     "chi = 0.9\n"
     "B = 2.0\n"
     "b = 2.0\n"
     "D = 2.0\n"
     "T1 = 1.0\n"
     "T2 = 1.0\n"
     "gamma1 = 0.01\n"
     "gamma2 = 0.01\n"
     "gamma0 = 2.0\n"},
    {"inhomogeneous_field_sweep",
     "unequal bath temperatures for the field-inhomogeneity sweep (direct geometry)",
     "# stationary-state sweep base; use: asymptotic --axis b\n"
     "J = 1.0\n"
     "chi = 0.9\n"
     "B = 2.0\n"
     "b = 2.0\n"
     "D = 2.0\n"
     "T1 = 1.25\n"
     "T2 = 0.75\n"
     "gamma1 = 0.01\n"
     "gamma2 = 0.01\n"
     "gamma0 = 2.0\n"
     "geometry = direct\n"}};

}  // namespace

const std::vector<Preset>& preset_registry() { return kPresets; }

const Preset& find_preset(const std::string& name) {
  for (const auto& p : kPresets) {
    if (p.name == name) return p;
  }
  throw ConfigError("unknown preset '" + name + "' (see 'preset list')");
}

}  // namespace pmdyn
