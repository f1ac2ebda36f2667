#pragma once

#include <iosfwd>
#include <optional>

#include "fibergate/fidelity.hpp"
#include "fibergate/pauli.hpp"
#include "fibergate/scenario.hpp"

namespace fibergate {

/// Everything the gate evaluation produces for one parameter point.
struct GateReport {
  Scenario scenario;
  double g_target = 0.0;
  double g_nontarget = 0.0;
  double fidelity_avg = 0.0;            ///< Choi-based average fidelity
  double fidelity_superposition = 0.0;  ///< superposition-input estimate
  double fidelity_analytic = 0.0;       ///< closed form, NaN if inapplicable
  double fidelity_analytic_full = 0.0;  ///< overlap-matrix form, NaN for remote
  double success_probability = 0.0;
  PauliChannel pauli;
  std::optional<double> monte_carlo_fidelity;
  std::optional<double> monte_carlo_error;
  std::optional<int> monte_carlo_samples;
};

/// Evaluates a scenario end to end. A prepared CouplingModel may be passed
/// to avoid re-solving the fiber mode.
GateReport evaluate_gate(const Scenario& scenario,
                         const CouplingModel* model = nullptr);

/// Haar-average state fidelity of the trace-preserving (total) channel,
/// attached to the report as an independent sampling check.
void attach_monte_carlo(GateReport& report, int samples, unsigned long seed);

std::string report_text(const GateReport& report);
std::string report_json(const GateReport& report);

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<SweepAxis> axes;
  std::vector<std::vector<double>> rows;  ///< row-major over the axes
};

/// Evaluates the scenario over its sweep grid, parallelized over points
/// with a deterministic gather. threads <= 0 uses the hardware count.
SweepResult run_sweep(const ScenarioDoc& doc, int threads = 0);

void write_sweep_csv(std::ostream& out, const SweepResult& result,
                     const ScenarioDoc& echo);
std::string sweep_summary_json(const SweepResult& result);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

}  // namespace fibergate
