// zcwell: design zero-energy states of delta-decorated wells, analyze
// their observables, build SUSY partners, tune asymmetric wells, and
// verify everything against the finite-difference oracle.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zcwell/analysis.hpp"
#include "zcwell/asymwell.hpp"
#include "zcwell/designer.hpp"
#include "zcwell/errors.hpp"
#include "zcwell/io.hpp"
#include "zcwell/oracle.hpp"
#include "zcwell/susy.hpp"

namespace {

using namespace zcwell;

struct UnitOverride {
  bool active = false;
  double hbar = 1.0;
  double mass = 1.0;
  double width = 1.0;
};

UnitOverride read_unit_env() {
  UnitOverride out;
  const char* env = std::getenv("ZCWELL_UNITS");
  if (env == nullptr) return out;
  double hbar, mass, width;
  char extra = 0;
  if (std::sscanf(env, "%lf,%lf,%lf%c", &hbar, &mass, &width, &extra) != 3)
    throw ValidationError("BadUnitsEnv",
                          "ZCWELL_UNITS must be \"hbar,mass,a\"");
  out.active = true;
  out.hbar = hbar;
  out.mass = mass;
  out.width = width;
  return out;
}

UnitSystem resolve_units(const UnitOverride& env, const UnitSystem& base) {
  return env.active ? make_units(env.hbar, env.mass) : base;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty())
    std::cout << text;
  else
    write_file(path, text);
}

std::string csv_stem(const std::string& name) {
  if (name.size() > 4 && name.substr(name.size() - 4) == ".csv")
    return name.substr(0, name.size() - 4);
  return name;
}

void require_distinct(const std::string& input, const std::string& output) {
  if (input.empty() || output.empty()) return;
  namespace fs = std::filesystem;
  if (fs::absolute(input).lexically_normal() ==
      fs::absolute(output).lexically_normal())
    throw ValidationError("OutputCollision",
                          "output path must differ from the input path");
}

ZcDesign load_design_with_units(const std::string& path,
                                const UnitOverride& env) {
  DesignFile file = load_design(path);
  file.units = resolve_units(env, file.units);
  return design_from_file(file);
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::AboveStep: return "above_step";
    case Regime::BelowStep: return "below_step";
    case Regime::Threshold: return "threshold";
  }
  return "?";
}

int run(int argc, char** argv) {
  CLI::App app{
      "zcwell: zero-curvature eigenstates of wells with delta spikes"};
  app.require_subcommand(1);
  const UnitOverride env = read_unit_env();

  // ---- design ----------------------------------------------------------
  auto* design_cmd = app.add_subcommand(
      "design", "compute critical spike strengths for a waveform");
  std::string design_input, design_shape, design_output;
  double design_c = 0.5, design_width = 1.0;
  design_cmd->add_option("--input", design_input,
                         "design JSON with the waveform");
  design_cmd->add_option(
      "--shape", design_shape,
      "triangle | twin-symmetric | twin-antisymmetric");
  design_cmd->add_option("--c", design_c, "triangle peak position");
  design_cmd->add_option("--width", design_width, "well width for shapes");
  design_cmd->add_option("--output", design_output,
                         "output path (default: stdout)");

  // ---- analyze ---------------------------------------------------------
  auto* analyze_cmd = app.add_subcommand(
      "analyze", "energies, momentum density and moments of a design");
  std::string analyze_input, analyze_pgrid = "-40:40:801", analyze_csv;
  int analyze_xcount = 801;
  double analyze_tail_tol = 1e-6;
  analyze_cmd->add_option("--input", analyze_input, "design JSON")
      ->required();
  analyze_cmd->add_option("--pgrid", analyze_pgrid,
                          "momentum grid lo:hi:count");
  analyze_cmd->add_option("--out-csv", analyze_csv,
                          "stem for <stem>_x.csv and <stem>_p.csv");
  analyze_cmd->add_option("--xgrid", analyze_xcount,
                          "sample count for the x CSV");
  analyze_cmd->add_option("--tail-tol", analyze_tail_tol,
                          "relative tail budget of the <p^2> quadrature");

  // ---- susy ------------------------------------------------------------
  auto* susy_cmd = app.add_subcommand(
      "susy", "supersymmetric partner potential of a nodeless design");
  std::string susy_input, susy_output;
  susy_cmd->add_option("--input", susy_input, "design JSON")->required();
  susy_cmd->add_option("--out", susy_output,
                       "partner JSON path (default: stdout)");

  // ---- asym ------------------------------------------------------------
  auto* asym_cmd = app.add_subcommand(
      "asym", "asymmetric well spectra and zero-curvature tuning");
  double asym_a = 1.0, asym_b = 1.0, asym_v0 = 0.0;
  int asym_levels = 8;
  std::string asym_csv;
  asym_cmd->add_option("--a", asym_a, "left region width");
  asym_cmd->add_option("--b", asym_b, "right region width");
  asym_cmd->add_option("--v0", asym_v0, "step height");
  asym_cmd->add_option("--levels", asym_levels, "number of levels");
  asym_cmd->add_option("--out-csv", asym_csv, "levels CSV path");

  auto* tune_cmd = asym_cmd->add_subcommand(
      "tune", "step height putting a zero-curvature state at E = V0");
  double tune_a = 1.0, tune_b = 1.0;
  int tune_branch = 0;
  std::string tune_csv;
  int tune_samples = 1001;
  tune_cmd->add_option("--a", tune_a, "left region width");
  tune_cmd->add_option("--b", tune_b, "right region width");
  tune_cmd->add_option("--branch", tune_branch, "branch index n >= 0");
  tune_cmd->add_option("--out-csv", tune_csv, "wave CSV path");
  tune_cmd->add_option("--samples", tune_samples, "wave CSV sample count");

  // ---- verify ----------------------------------------------------------
  auto* verify_cmd = app.add_subcommand(
      "verify", "finite-difference confirmation of a zero-energy design");
  std::string verify_input, verify_ladder = "599,1199,2399", verify_out;
  int verify_k = 5;
  verify_cmd->add_option("--input", verify_input, "design JSON")
      ->required();
  verify_cmd->add_option("--ladder", verify_ladder,
                         "comma-separated interior grid sizes");
  verify_cmd->add_option("--k", verify_k, "eigenvalues per rung");
  verify_cmd->add_option("--out", verify_out,
                         "report JSON path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (design_cmd->parsed()) {
    require_distinct(design_input, design_output);
    std::optional<ZcDesign> design;
    if (!design_input.empty()) {
      DesignFile file = load_design(design_input);
      const UnitSystem units = resolve_units(env, file.units);
      design = critical_strengths(file.wave, units);
    } else if (design_shape == "triangle") {
      const double width = env.active ? env.width : design_width;
      design = triangle_design(design_c, width,
                               resolve_units(env, UnitSystem{}));
    } else if (design_shape == "twin-symmetric" ||
               design_shape == "twin-antisymmetric") {
      const double width = env.active ? env.width : design_width;
      auto pair = twin_designs(width, resolve_units(env, UnitSystem{}));
      design = design_shape == "twin-symmetric" ? pair.first : pair.second;
    } else {
      throw ValidationError(
          "BadArguments",
          "design needs --input or --shape "
          "triangle|twin-symmetric|twin-antisymmetric");
    }
    emit(format_design(design->units, design->wave,
                       &design->potential.spikes()),
         design_output);
    return 0;
  }

  if (analyze_cmd->parsed()) {
    const ZcDesign design = load_design_with_units(analyze_input, env);
    const EnergyBreakdown e = energy_breakdown(design);
    std::cout << "potential: " << format_double(e.potential) << "\n"
              << "kinetic (gradient form): "
              << format_double(e.kinetic_gradient) << "\n"
              << "kinetic (distributional form): "
              << format_double(e.kinetic_distributional) << "\n"
              << "total energy: " << format_double(e.total) << "\n";

    if (design.wave.domain().boundary != Boundary::Dirichlet) {
      std::cout << "momentum-space analysis skipped: defined for "
                   "Dirichlet wells only\n";
      return 0;
    }

    const MomentumMoments m = momentum_moments(design, analyze_tail_tol);
    std::cout << "<p>: " << format_double(m.p_mean) << "\n"
              << "<p^2> analytic: " << format_double(m.p2_analytic)
              << "\n"
              << "<p^2> quadrature: " << format_double(m.p2_quadrature)
              << "\n"
              << "Delta p: " << format_double(m.p_spread) << "\n";
    const double parseval = parseval_integral(design, 1e-6);
    std::cout << "parseval: " << format_double(parseval)
              << " (|1 - integral| = "
              << format_double(std::abs(1.0 - parseval)) << ")\n";

    if (!analyze_csv.empty()) {
      const std::string stem = csv_stem(analyze_csv);
      require_distinct(analyze_input, stem + "_x.csv");
      require_distinct(analyze_input, stem + "_p.csv");
      std::vector<std::vector<double>> xrows;
      const double width = design.wave.width();
      for (int i = 0; i < analyze_xcount; ++i) {
        const double x = i + 1 == analyze_xcount
                             ? width
                             : width * i / (analyze_xcount - 1);
        xrows.push_back({x, design.wave.eval(x)});
      }
      write_csv(stem + "_x.csv", "x,psi", xrows);

      const std::vector<double> ps = parse_grid_spec(analyze_pgrid);
      const auto sweep = momentum_sweep(design, ps);
      std::vector<std::vector<double>> prows;
      for (const auto& s : sweep) prows.push_back({s.p, s.density});
      write_csv(stem + "_p.csv", "p,phi2", prows);
      std::cout << "wrote " << stem << "_x.csv and " << stem << "_p.csv\n";
    }
    return 0;
  }

  if (susy_cmd->parsed()) {
    require_distinct(susy_input, susy_output);
    const ZcDesign design = load_design_with_units(susy_input, env);
    emit(format_partner(partner_potential(design)), susy_output);
    return 0;
  }

  if (asym_cmd->parsed()) {
    const UnitSystem units = resolve_units(env, UnitSystem{});
    if (tune_cmd->parsed()) {
      const ZcTuning tuning = solve_zc_v0(tune_a, tune_b, tune_branch,
                                          units);
      std::cout << "chi: " << format_double(tuning.chi) << "\n"
                << "V0: " << format_double(tuning.v0) << "\n";
      if (!tune_csv.empty()) {
        const auto wave = zc_wave(
            make_asymmetric_well(tune_a, tune_b, tuning.v0), units);
        std::vector<std::vector<double>> rows;
        const double total = tune_a + tune_b;
        for (int i = 0; i < tune_samples; ++i) {
          const double x = i + 1 == tune_samples
                               ? total
                               : total * i / (tune_samples - 1);
          rows.push_back({x, wave.eval(x)});
        }
        write_csv(tune_csv, "x,psi", rows);
        std::cout << "wrote " << tune_csv << "\n";
      }
      return 0;
    }
    const auto well = make_asymmetric_well(asym_a, asym_b, asym_v0);
    const auto levels = solve_levels(well, asym_levels, units);
    std::string csv = "n,E,regime\n";
    for (const auto& l : levels) {
      csv += std::to_string(l.index) + "," + format_double(l.energy) +
             "," + regime_name(l.regime) + "\n";
      std::cout << l.index << "  " << format_double(l.energy) << "  "
                << regime_name(l.regime) << "\n";
    }
    if (!asym_csv.empty()) write_file(asym_csv, csv);
    return 0;
  }

  if (verify_cmd->parsed()) {
    require_distinct(verify_input, verify_out);
    const ZcDesign design = load_design_with_units(verify_input, env);
    const std::vector<int> ladder = parse_ladder(verify_ladder);
    const SpectralReport report = verify_design(design, ladder, verify_k);
    emit(format_spectral_report(report, ladder), verify_out);
    std::cerr << (report.ok ? "verification ok\n"
                            : "verification FAILED\n");
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const NumericError& e) {
    std::cerr << "zcwell: error [" << e.code() << "]: " << e.what()
              << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "zcwell: error [" << e.code() << "]: " << e.what()
              << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "zcwell: error [DomainError]: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "zcwell: error [InvalidArgument]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "zcwell: error: " << e.what() << "\n";
    return 2;
  }
}
