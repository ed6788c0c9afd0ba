#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pmdyn/correlations.hpp"
#include "pmdyn/errors.hpp"
#include "pmdyn/runners.hpp"
#include "pmdyn/scenario.hpp"

using namespace pmdyn;

namespace {

const char* kMinimalConfig =
    "J = 1.0\n"
    "chi = 0.9\n"
    "B = 2.0\n"
    "b = 1.0\n"
    "D = 1.0\n"
    "T1 = 1.25\n"
    "T2 = 0.75\n"
    "gamma1 = 0.01\n"
    "gamma2 = 0.01\n"
    "gamma0 = 2.0\n";

std::string with_lines(const std::string& extra) {
  return std::string(kMinimalConfig) + extra;
}

}  // namespace

TEST_SUITE_BEGIN("scenario");

TEST_CASE("minimal config parses") {
  Scenario sc = parse_config_text(kMinimalConfig);
  CHECK(sc.system.J == 1.0);
  CHECK(sc.system.chi == 0.9);
  CHECK(sc.baths.T2 == 0.75);
  CHECK_FALSE(sc.initial.has_value());
  CHECK_FALSE(sc.grid.has_value());
  CHECK(sc.geometry == Geometry::unspecified);
}

TEST_CASE("comments, blanks and spacing are tolerated") {
  Scenario sc = parse_config_text(
      "# header comment\n\n  J=1.0\nchi = 0.9   # trailing comment\nB = 2.0\n"
      "b = 1.0\nD = 1.0\nT1 = 1.25\nT2 = 0.75\ngamma1 = 0.01\ngamma2 = 0.01\n"
      "gamma0 = 2.0\n");
  CHECK(sc.system.chi == 0.9);
}

TEST_CASE("config errors carry the offending key") {
  SUBCASE("missing required key") {
    std::string cfg = kMinimalConfig;
    size_t pos = cfg.find("T1 = 1.25\n");
    cfg.erase(pos, 10);
    try {
      parse_config_text(cfg);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("T1") != std::string::npos);
    }
  }
  SUBCASE("unknown key") {
    try {
      parse_config_text(with_lines("Tx = 3\n"));
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("Tx") != std::string::npos);
    }
  }
  SUBCASE("duplicate key") {
    CHECK_THROWS_AS(parse_config_text(with_lines("J = 2.0\n")), ConfigError);
  }
  SUBCASE("malformed number") {
    std::string cfg = kMinimalConfig;
    size_t pos = cfg.find("2.0");
    cfg.replace(pos, 3, "two");
    CHECK_THROWS_AS(parse_config_text(cfg), ConfigError);
  }
  SUBCASE("out-of-domain anisotropy surfaces as a physics error") {
    std::string cfg = kMinimalConfig;
    size_t pos = cfg.find("chi = 0.9");
    cfg.replace(pos, 9, "chi = 1.5");
    CHECK_THROWS_AS(parse_config_text(cfg), InvalidAnisotropy);
  }
  SUBCASE("degenerate spin-orbit value is rejected") {
    std::string cfg = kMinimalConfig;
    size_t pos = cfg.find("D = 1.0");
    cfg.replace(pos, 7, "D = 1.6763054461");
    CHECK_THROWS_AS(parse_config_text(cfg), DegenerateSpectrum);
  }
}

TEST_CASE("time grid parsing") {
  Scenario sc = parse_config_text(with_lines("t_end = 10\nt_points = 11\n"));
  REQUIRE(sc.grid.has_value());
  CHECK(sc.grid->t_start == 0.0);
  CHECK(sc.grid->at(10) == 10.0);
  CHECK(sc.grid->at(3) == doctest::Approx(3.0));
  CHECK_THROWS_AS(parse_config_text(with_lines("t_end = 10\n")), ConfigError);
  CHECK_THROWS_AS(parse_config_text(with_lines("t_start = 1\n")), ConfigError);
  CHECK_THROWS_AS(
      parse_config_text(with_lines("t_end = -1\nt_points = 5\n")), ConfigError);
}

TEST_CASE("geometry declaration is checked against the parameters") {
  // b = 1 > 0, dT = 0.5 > 0: direct
  Scenario sc = parse_config_text(with_lines("geometry = direct\n"));
  CHECK(sc.geometry == Geometry::direct);
  CHECK_THROWS_AS(parse_config_text(with_lines("geometry = indirect\n")), ConfigError);
  CHECK_THROWS_AS(parse_config_text(with_lines("geometry = sideways\n")), ConfigError);
}

TEST_CASE("initial states") {
  SUBCASE("bell preset") {
    Scenario sc = parse_config_text(with_lines("initial_state = bell_psi_plus\n"));
    DensityMatrix rho = initial_state(sc);
    CHECK((rho.mat - testing::bell_psi_plus()).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("separable preset is X-shaped, separable and discordant") {
    Scenario sc = parse_config_text(
        with_lines("initial_state = separable_nonzero_discord\n"));
    DensityMatrix rho = initial_state(sc);
    CHECK(is_x_shaped(rho.mat));
    CHECK(check_density_matrix(rho.mat).ok);
    CHECK(concurrence(rho) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(discord(rho.mat, Side::B) > 0.05);
  }
  SUBCASE("custom X state") {
    Scenario sc = parse_config_text(with_lines(
        "initial_state = custom\nrho_00 = 0.4\nrho_11 = 0.3\nrho_22 = 0.2\n"
        "rho_33 = 0.1\nrho_03_re = 0.1\nrho_03_im = 0.05\nrho_12_re = 0.0\n"
        "rho_12_im = 0.1\n"));
    DensityMatrix rho = initial_state(sc);
    CHECK(rho.mat(0, 3) == Complex(0.1, 0.05));
    CHECK(rho.mat(3, 0) == Complex(0.1, -0.05));
    CHECK(check_density_matrix(rho.mat).ok);
  }
  SUBCASE("custom keys demand custom mode") {
    CHECK_THROWS_AS(parse_config_text(with_lines("rho_00 = 0.25\n")), ConfigError);
  }
  SUBCASE("non-positive custom state is rejected") {
    CHECK_THROWS_AS(parse_config_text(with_lines(
                        "initial_state = custom\nrho_00 = 0.5\nrho_11 = 0.0\n"
                        "rho_22 = 0.0\nrho_33 = 0.5\nrho_03_re = 0.6\n"
                        "rho_03_im = 0.0\nrho_12_re = 0.0\nrho_12_im = 0.0\n")),
                    ConfigError);
  }
}

TEST_CASE("presets parse through the regular path") {
  for (const auto& p : preset_registry()) {
    Scenario sc = parse_config_text(p.config_text);
    CHECK(sc.baths.gamma0 > 0.0);
  }
  CHECK_THROWS_AS(find_preset("nope"), ConfigError);
  CHECK(find_preset("bell_weak_memory").config_text.find("bell_psi_plus") != std::string::npos);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.5819767068693265) == "0.581976706869");
  CHECK(format_number(1e-300) == "1e-300");
}

TEST_CASE("evolve runner emits a deterministic CSV") {
  Scenario sc = parse_config_text(with_lines(
      "initial_state = bell_psi_plus\nt_end = 2.0\nt_points = 3\n"));
  OptimizerConfig quick;
  quick.grid_theta = 16;
  quick.grid_phi = 32;
  std::string csv1 = run_evolve_csv(sc, quick);
  std::string csv2 = run_evolve_csv(sc, quick);
  CHECK(csv1 == csv2);

  // header + 3 rows
  CHECK(csv1.rfind("t,concurrence,discord_A,discord_B,mutual_info,purity,"
                   "min_eigenvalue,trace_error,flag\n", 0) == 0);
  CHECK(std::count(csv1.begin(), csv1.end(), '\n') == 4);
  // the t = 0 row of a Bell input: concurrence 1, both discords 1
  std::string row0 = csv1.substr(csv1.find('\n') + 1);
  row0 = row0.substr(0, row0.find('\n'));
  CHECK(row0.rfind("0,1,1,1,2,1,", 0) == 0);

  CHECK_THROWS_AS(run_evolve_csv(parse_config_text(kMinimalConfig), quick),
                  ConfigError);
}

TEST_CASE("asymptotic runner sweeps an axis") {
  Scenario sc = parse_config_text(kMinimalConfig);
  OptimizerConfig quick;
  quick.grid_theta = 16;
  quick.grid_phi = 32;
  std::string csv = run_asymptotic_csv(sc, SweepAxis::T, 0.5, 1.5, 3, quick);
  CHECK(csv.rfind("T,concurrence,discord_A,discord_B,discord_gap,flag\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

  // a sweep point landing on the degenerate b value is flagged, the run
  // itself keeps going
  double b_c = std::sqrt(2.81);  // xi(b) = eta for these parameters
  std::string csv_b =
      run_asymptotic_csv(sc, SweepAxis::b, b_c - 1.0, b_c + 1.0, 3, quick);
  CHECK(std::count(csv_b.begin(), csv_b.end(), '\n') == 4);
  CHECK(csv_b.find("nan") != std::string::npos);
  CHECK(csv_b.find("degenerate") != std::string::npos);

  CHECK_THROWS_AS(run_asymptotic_csv(sc, SweepAxis::b, b_c, b_c, 1, quick),
                  PhysicsError);
}

TEST_SUITE_END();
