// Command-line front end: trajectory runs, stationary-state sweeps, oracle
// validation and the preset registry. Exit codes: 0 success, 2 configuration
// error, 3 physics-domain error, 4 validation failure.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pmdyn/errors.hpp"
#include "pmdyn/runners.hpp"
#include "pmdyn/scenario.hpp"

namespace {

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw pmdyn::ConfigError("cannot open output file '" + out_path + "'");
  }
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pmdyn: closed-form dynamics and quantum correlations of two "
               "dissipative qubits with a short-memory environment"};
  app.require_subcommand(1);

  std::string config_path, out_path;

  auto* evolve = app.add_subcommand("evolve", "correlation measures along a trajectory");
  evolve->add_option("--config", config_path, "scenario config file")->required();
  evolve->add_option("--out", out_path, "output CSV path (default stdout)");

  std::string axis_str;
  double sweep_from = 0.0, sweep_to = 0.0;
  int sweep_points = 0;
  auto* asymptotic =
      app.add_subcommand("asymptotic", "stationary-state correlation sweep");
  asymptotic->add_option("--config", config_path, "scenario config file")->required();
  asymptotic->add_option("--axis", axis_str, "sweep axis: T, b or dT")->required();
  asymptotic->add_option("--from", sweep_from, "first axis value")->required();
  asymptotic->add_option("--to", sweep_to, "last axis value")->required();
  asymptotic->add_option("--points", sweep_points, "number of sweep points")->required();
  asymptotic->add_option("--out", out_path, "output CSV path (default stdout)");

  std::string mode_str = "outside";
  auto* validate = app.add_subcommand("validate", "cross-check closed forms "
                                      "against the numerical oracles");
  validate->add_option("--config", config_path, "scenario config file")->required();
  validate->add_option("--mode", mode_str,
                       "commutator placement for the oracle: outside or inside")
      ->check(CLI::IsMember({"outside", "inside"}));

  auto* preset = app.add_subcommand("preset", "list or print built-in scenarios");
  std::string preset_action, preset_name;
  preset->add_option("action", preset_action, "list | show")->required();
  preset->add_option("name", preset_name, "preset name (for show)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (evolve->parsed()) {
      pmdyn::Scenario sc = pmdyn::parse_config_file(config_path);
      write_output(pmdyn::run_evolve_csv(sc), out_path);
    } else if (asymptotic->parsed()) {
      pmdyn::SweepAxis axis;
      if (axis_str == "T") {
        axis = pmdyn::SweepAxis::T;
      } else if (axis_str == "b") {
        axis = pmdyn::SweepAxis::b;
      } else if (axis_str == "dT") {
        axis = pmdyn::SweepAxis::dT;
      } else {
        throw pmdyn::ConfigError("--axis must be T, b or dT; got '" + axis_str + "'");
      }
      pmdyn::Scenario sc = pmdyn::parse_config_file(config_path);
      write_output(
          pmdyn::run_asymptotic_csv(sc, axis, sweep_from, sweep_to, sweep_points),
          out_path);
    } else if (validate->parsed()) {
      pmdyn::Scenario sc = pmdyn::parse_config_file(config_path);
      pmdyn::OracleConfig cfg;
      cfg.mode = mode_str == "inside" ? pmdyn::CommutatorPlacement::inside
                                      : pmdyn::CommutatorPlacement::outside;
      pmdyn::ValidationReport rep = pmdyn::run_validate(sc, cfg);
      std::cout << rep.text;
      if (!rep.ok) {
        std::cout << "validation FAILED\n";
        return 4;
      }
      std::cout << "validation passed\n";
    } else if (preset->parsed()) {
      if (preset_action == "list") {
        for (const auto& p : pmdyn::preset_registry()) {
          std::cout << p.name << "  -  " << p.description << "\n";
        }
      } else if (preset_action == "show") {
        if (preset_name.empty()) {
          throw pmdyn::ConfigError("preset show needs a name");
        }
        std::cout << pmdyn::find_preset(preset_name).config_text;
      } else {
        throw pmdyn::ConfigError("preset action must be list or show");
      }
    }
  } catch (const pmdyn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const pmdyn::PhysicsError& e) {
    std::cerr << "physics error: " << e.what() << "\n";
    return 3;
  } catch (const pmdyn::NonConvergence& e) {
    std::cerr << "oracle did not converge: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
