#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pmdyn/dissipator.hpp"
#include "pmdyn/model.hpp"
#include "pmdyn/types.hpp"

namespace pmdyn {

enum class InitialStateKind { bell_psi_plus, separable_nonzero_discord, custom };
enum class Geometry { unspecified, direct, indirect };

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 0.0;
  int points = 0;

  double at(int i) const;
};

// One fully-specified run: system + baths, optionally an initial state and a
// time grid (required for evolution runs, unused for asymptotic sweeps).
struct Scenario {
  SystemParams system;
  BathParams baths;
  std::optional<InitialStateKind> initial;
  Matrix4c custom_rho = Matrix4c::Zero();  // standard basis, used when custom
  std::optional<TimeGrid> grid;
  Geometry geometry = Geometry::unspecified;
};

// Flat `key = value` configuration, one pair per line, `#` comments. All
// physical parameters are required; unknown or duplicate keys are errors.
Scenario parse_config_text(const std::string& text);
Scenario parse_config_file(const std::string& path);

// Builds the initial density matrix of a scenario in the standard basis.
// The separable preset needs the spectrum only for documentation symmetry;
// see the preset registry in scenario.cpp.
DensityMatrix initial_state(const Scenario& sc);

struct Preset {
  std::string name;
  std::string description;
  std::string config_text;
};

const std::vector<Preset>& preset_registry();
const Preset& find_preset(const std::string& name);  // throws ConfigError

}  // namespace pmdyn
