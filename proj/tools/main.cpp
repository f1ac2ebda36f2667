// Command line front end: single-point gate evaluation, parameter sweeps,
// optimum calculators and the fiber-mode solver.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "fibergate/fidelity.hpp"
#include "fibergate/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitPhysics = 3;
constexpr int kExitSolver = 4;

struct CommonOpts {
  std::string scenario_path;
  std::string out_dir;
  std::string format = "csv";
  int threads = 0;
  unsigned long seed = 1;
};

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." :
                         path.parent_path());
  std::ofstream out(path);
  if (!out) throw fibergate::Error("cannot write " + path.string());
  out << content;
}

int run_gate(const CommonOpts& opts, int haar_samples) {
  const fibergate::ScenarioDoc doc =
      fibergate::ScenarioDoc::parse_file(opts.scenario_path);
  const fibergate::Scenario sc = fibergate::bind_scenario(doc);
  fibergate::GateReport rep = fibergate::evaluate_gate(sc);
  if (haar_samples > 0)
    fibergate::attach_monte_carlo(rep, haar_samples, opts.seed);
  if (opts.format == "json") {
    std::cout << fibergate::report_json(rep) << "\n";
  } else {
    std::cout << fibergate::report_text(rep);
  }
  if (!opts.out_dir.empty()) {
    write_file(fs::path(opts.out_dir) / "report.json",
               fibergate::report_json(rep));
    std::cerr << "wrote " << (fs::path(opts.out_dir) / "report.json").string()
              << "\n";
  }
  return 0;
}

int run_sweep_cmd(const CommonOpts& opts) {
  const fibergate::ScenarioDoc doc =
      fibergate::ScenarioDoc::parse_file(opts.scenario_path);
  const fibergate::SweepResult result =
      fibergate::run_sweep(doc, opts.threads);
  const fs::path dir = opts.out_dir.empty() ? fs::path(".")
                                            : fs::path(opts.out_dir);
  std::ostringstream csv;
  fibergate::write_sweep_csv(csv, result, doc);
  write_file(dir / "sweep.csv", csv.str());
  write_file(dir / "summary.json", fibergate::sweep_summary_json(result));
  std::cout << "wrote " << (dir / "sweep.csv").string() << " ("
            << result.rows.size() << " points) and "
            << (dir / "summary.json").string() << "\n";
  return 0;
}

int run_optimum(double kappa_r, double kappa_t, double kappa_m, double gamma,
                double qubit_splitting, double excited_shift,
                double dipole_ratio_sq, double target_fidelity,
                const std::string& format) {
  using namespace fibergate;
  const double kappa = kappa_r + kappa_t + kappa_m;
  const double ratio = kappa_r / kappa;
  json j;
  std::ostringstream text;
  text.precision(8);
  text << "loss ratio kappa_r/kappa = " << ratio << "\n";
  j["loss_ratio"] = ratio;

  bool analytic_ok = ratio > 0.5;
  if (analytic_ok) {
    const auto coop = optimum_cooperativity(kappa_r, kappa, gamma);
    const auto perf = performance_from_loss_ratio(ratio);
    text << "analytic optimum: C* = " << coop.cooperativity
         << ", g* = " << coop.g_star << ", F_max = " << perf.f_max
         << ", p_s* = " << perf.p_success << "\n";
    j["analytic"] = {{"cooperativity", coop.cooperativity},
                     {"g_star", coop.g_star},
                     {"f_max", perf.f_max},
                     {"p_success", perf.p_success}};

    // numeric cross-check of the maximum position
    const CavitySpec cav{kappa_r, kappa_t, kappa_m};
    const auto fidelity = [&](double g) {
      return analytic_local_fidelity_simple(
          simplified_reflection(0, g, cav, gamma),
          simplified_reflection(1, g, cav, gamma),
          simplified_reflection(2, g, cav, gamma));
    };
    const double located =
        golden_section_max(fidelity, coop.g_star / 4.0, 4.0 * coop.g_star);
    text << "numeric maximum: g = " << located << " (deviation "
         << 100.0 * std::fabs(located - coop.g_star) / coop.g_star << "%)\n";
    j["numeric"] = {{"g_located", located},
                    {"relative_deviation",
                     std::fabs(located - coop.g_star) / coop.g_star}};
  } else {
    text << "analytic branch unavailable (kappa_r/kappa <= 1/2); "
            "numeric search only\n";
    const CavitySpec cav{kappa_r, kappa_t, kappa_m};
    const auto fidelity = [&](double g) {
      return analytic_local_fidelity_simple(
          simplified_reflection(0, g, cav, gamma),
          simplified_reflection(1, g, cav, gamma),
          simplified_reflection(2, g, cav, gamma));
    };
    const double located = golden_section_max(fidelity, 0.1, 100.0);
    text << "numeric maximum: g = " << located
         << ", F = " << fidelity(located) << "\n";
    j["numeric"] = {{"g_located", located}, {"f_at_maximum", fidelity(located)}};
  }

  const double splitting = qubit_splitting - excited_shift;
  const SplittingOptimum ceiling =
      splitting_limited_optimum(gamma, splitting, dipole_ratio_sq, kappa);
  text << "splitting-limited ceiling: 1 - F = " << ceiling.infidelity
       << " at loss ratio " << ceiling.ceiling_loss_ratio << "\n";
  text << "to reach it: kappa_r/kappa = " << ceiling.required_ratio
       << ", C* = " << ceiling.cooperativity << "\n";
  text << "closed-form floor estimate: "
       << qubit_splitting_floor(gamma, splitting, dipole_ratio_sq) << "\n";
  j["splitting_limited"] = {{"infidelity_ceiling", ceiling.infidelity},
                            {"f_ceiling", ceiling.f_ceiling},
                            {"required_loss_ratio", ceiling.required_ratio},
                            {"cooperativity", ceiling.cooperativity},
                            {"floor_estimate",
                             qubit_splitting_floor(gamma, splitting,
                                                   dipole_ratio_sq)}};

  if (target_fidelity > 0.0) {
    const double req = required_loss_ratio(target_fidelity);
    const auto coop = optimum_cooperativity(req, 1.0, gamma);
    text << "target F = " << target_fidelity
         << ": kappa_r/kappa = " << req << ", C* = " << coop.cooperativity
         << "\n";
    j["target"] = {{"f_max", target_fidelity},
                   {"required_loss_ratio", req},
                   {"cooperativity", coop.cooperativity}};
  }

  if (format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text.str();
  return 0;
}

int run_fiber(double radius_nm, double core_index, double cladding_index,
              double wavenumber, double length_m, double r_min_nm,
              double r_max_nm, int steps, const CommonOpts& opts) {
  using namespace fibergate;
  FiberSpec fiber;
  fiber.radius_um = radius_nm * 1e-3;
  fiber.core_index = core_index;
  fiber.cladding_index = cladding_index;
  fiber.wavenumber = wavenumber;
  fiber.cavity_length_m = length_m;

  const CouplingModel model(fiber);
  const ModeSolution& mode = model.mode();
  std::cout.precision(8);
  std::cout << "fiber volume v = " << mode.v << "\n"
            << "transverse wavenumbers u = " << mode.u << ", w = " << mode.w
            << "\n"
            << "propagation constant beta = " << mode.beta << " 1/um\n"
            << "field parameter s = " << mode.s << "\n"
            << "mode volume (quasi-linear) = "
            << model.mode_volume(QuasiLinear{0.0}) << " um^3\n"
            << "g at 300 nm (quasi-linear, on axis) = "
            << model.g_linear_parallel(0.3) << " 2pi MHz\n";

  std::ostringstream csv;
  csv << "# guided-mode coupling profile\n";
  csv << "r_nm,g_circular_2pi_mhz,g_linear_parallel_2pi_mhz,"
         "g_linear_orthogonal_2pi_mhz\n";
  for (int i = 0; i < steps; ++i) {
    const double r_nm =
        r_min_nm + (r_max_nm - r_min_nm) * i / std::max(steps - 1, 1);
    const double r_um = r_nm * 1e-3;
    csv << format_double(r_nm) << ',' << format_double(model.g_circular(r_um))
        << ',' << format_double(model.g_linear_parallel(r_um)) << ','
        << format_double(model.g_linear_orthogonal(r_um)) << '\n';
  }
  const fs::path dir = opts.out_dir.empty() ? fs::path(".")
                                            : fs::path(opts.out_dir);
  write_file(dir / "coupling_profile.csv", csv.str());
  std::cout << "wrote " << (dir / "coupling_profile.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"photon-mediated CZ gates in nanofiber cavity networks"};
  app.require_subcommand(1);

  CommonOpts opts;
  int haar_samples = 0;

  auto* gate = app.add_subcommand("gate", "evaluate one scenario");
  gate->add_option("--scenario", opts.scenario_path, "scenario file")
      ->required();
  gate->add_option("--out", opts.out_dir, "output directory");
  gate->add_option("--format", opts.format, "csv|json");
  gate->add_option("--threads", opts.threads, "worker threads");
  gate->add_option("--seed", opts.seed, "sampling seed");
  gate->add_option("--haar-samples", haar_samples,
                   "optional Monte-Carlo fidelity check");

  auto* sweep = app.add_subcommand("sweep", "run the scenario's sweep grid");
  sweep->add_option("--scenario", opts.scenario_path, "scenario file")
      ->required();
  sweep->add_option("--out", opts.out_dir, "output directory");
  sweep->add_option("--format", opts.format, "csv|json");
  sweep->add_option("--threads", opts.threads, "worker threads");
  sweep->add_option("--seed", opts.seed, "sampling seed");

  double kappa_r = 2.5, kappa_t = 0.1, kappa_m = 0.1, gamma = 2.6;
  double qubit_splitting = fibergate::constants::kCsClockSplitting;
  double excited_shift = fibergate::constants::kCsExcitedHyperfineShift;
  double dipole_ratio_sq = fibergate::constants::kCsDipoleRatioSq;
  double target_fidelity = 0.0;
  std::string opt_format = "text";
  auto* optimum =
      app.add_subcommand("optimum", "analytic and numeric gate optima");
  optimum->add_option("--kappa-r", kappa_r, "input mirror rate, 2pi MHz");
  optimum->add_option("--kappa-t", kappa_t, "transmission rate");
  optimum->add_option("--kappa-m", kappa_m, "mirror scattering rate");
  optimum->add_option("--gamma", gamma, "half atomic linewidth");
  optimum->add_option("--qubit-splitting", qubit_splitting,
                      "qubit splitting, 2pi MHz");
  optimum->add_option("--excited-shift", excited_shift,
                      "excited-state hyperfine shift, 2pi MHz");
  optimum->add_option("--dipole-ratio-sq", dipole_ratio_sq,
                      "squared dipole ratio of the weak transition");
  optimum->add_option("--target-fidelity", target_fidelity,
                      "invert for the required loss ratio");
  optimum->add_option("--format", opt_format, "text|json");

  double radius_nm = 200.0, core_index = 1.45, cladding_index = 1.0;
  double wavenumber = fibergate::constants::kCsD2Wavenumber, length_m = 0.12;
  double r_min_nm = 220.0, r_max_nm = 2000.0;
  int profile_steps = 90;
  auto* fiber = app.add_subcommand("fiber", "guided mode and coupling profile");
  fiber->add_option("--radius-nm", radius_nm, "fiber radius");
  fiber->add_option("--core-index", core_index, "core refractive index");
  fiber->add_option("--cladding-index", cladding_index, "cladding index");
  fiber->add_option("--wavenumber", wavenumber, "vacuum wavenumber, 1/um");
  fiber->add_option("--length-m", length_m, "cavity length, m");
  fiber->add_option("--r-min-nm", r_min_nm, "profile start");
  fiber->add_option("--r-max-nm", r_max_nm, "profile end");
  fiber->add_option("--steps", profile_steps, "profile points");
  fiber->add_option("--out", opts.out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gate->parsed()) return run_gate(opts, haar_samples);
    if (sweep->parsed()) return run_sweep_cmd(opts);
    if (optimum->parsed())
      return run_optimum(kappa_r, kappa_t, kappa_m, gamma, qubit_splitting,
                         excited_shift, dipole_ratio_sq, target_fidelity,
                         opt_format);
    if (fiber->parsed())
      return run_fiber(radius_nm, core_index, cladding_index, wavenumber,
                       length_m, r_min_nm, r_max_nm, profile_steps, opts);
  } catch (const fibergate::ParseError& err) {
    std::cerr << "parse error: " << err.what() << "\n";
    return kExitParse;
  } catch (const fibergate::PhysicsError& err) {
    std::cerr << "physics precondition violated: " << err.what() << "\n";
    return kExitPhysics;
  } catch (const fibergate::SolverError& err) {
    std::cerr << "solver failure: " << err.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
