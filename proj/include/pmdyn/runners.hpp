#pragma once

#include <string>

#include "pmdyn/correlations.hpp"
#include "pmdyn/oracle.hpp"
#include "pmdyn/scenario.hpp"

namespace pmdyn {

// CSV conventions shared by all runners: header row, comma separator,
// 12 significant digits, '\n' line ends, one trailing `flag` column that is
// empty unless a state check failed on that row.

// Trajectory of correlation measures over the scenario's time grid.
std::string run_evolve_csv(const Scenario& sc, const OptimizerConfig& opt = {});

enum class SweepAxis { T, b, dT };

// Asymptotic-state sweep along one axis. axis T sets T1 = T2 = value,
// axis b replaces the field inhomogeneity, axis dT holds the mean
// temperature from the scenario and sets T1,2 = TM +- value/2.
std::string run_asymptotic_csv(const Scenario& sc, SweepAxis axis, double from,
                               double to, int points,
                               const OptimizerConfig& opt = {});

struct ValidationReport {
  bool ok = true;
  std::string text;
};

// Cross-checks the closed-form paths against the independent oracles on the
// scenario's parameters: propagator arbitration, full-state evolution versus
// the integro-differential integrator, and the discord optimizer versus the
// dense grid.
ValidationReport run_validate(const Scenario& sc, const OracleConfig& cfg);

// 12-significant-digit, locale-independent number formatting used for CSV.
std::string format_number(double v);

}  // namespace pmdyn
