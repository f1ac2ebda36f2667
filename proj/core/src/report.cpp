#include "fibergate/report.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace fibergate {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json json_value(double v) {
  if (std::isfinite(v)) return v;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return "nan";
}

// All targeted and non-targeted couplings equal and on resonance makes the
// closed-form expressions exact.
bool closed_form_applies(const Scenario& sc, const NodeLayout& layout) {
  const double g0 = layout.atoms[0].atom.g;
  for (const PlacedAtom& pa : layout.atoms) {
    if (std::fabs(pa.atom.g - g0) > 1e-12) return false;
    if (std::fabs(pa.atom.delta) > 1e-12) return false;
  }
  return !sc.residual.enabled;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

GateReport evaluate_gate(const Scenario& scenario,
                         const CouplingModel* model) {
  GateReport rep;
  rep.scenario = scenario;
  const NodeLayout layout = build_layout(scenario, model);
  rep.g_target = layout.atoms[static_cast<size_t>(layout.control)].atom.g;
  rep.g_nontarget = rep.g_target;
  for (int q = 0; q < layout.qubit_count(); ++q)
    if (q != layout.control && q != layout.target)
      rep.g_nontarget = layout.atoms[static_cast<size_t>(q)].atom.g;

  const SchurChannel channel = gate_channel(layout, scenario.probe_detuning,
                                            scenario.kind, scenario.flavor);
  const Eigen::VectorXcd ideal = ideal_phase_diagonal(scenario.kind, layout);
  const int d = layout.dim();

  rep.fidelity_avg =
      average_fidelity(entanglement_fidelity(channel, ideal), d);
  rep.fidelity_superposition = superposition_fidelity(channel, ideal);
  rep.success_probability =
      success_probability(layout, scenario.probe_detuning, scenario.kind);
  rep.pauli = error_rates(
      pauli_transfer_diagonal(channel, ideal, layout.qubit_count()),
      layout.qubit_count(), layout.control, layout.target);

  // Closed-form references; meaningful on resonance with equal couplings.
  rep.fidelity_analytic = kNaN;
  rep.fidelity_analytic_full = kNaN;
  if (closed_form_applies(scenario, layout)) {
    CavitySpec cav = scenario.cavity;
    const double g = rep.g_target;
    const Complex r0 = simplified_reflection(0, g, cav, scenario.gamma);
    const Complex r1 = simplified_reflection(1, g, cav, scenario.gamma);
    const Complex r2 = simplified_reflection(2, g, cav, scenario.gamma);
    rep.fidelity_analytic = scenario.kind == GateKind::local
                                ? analytic_local_fidelity_simple(r0, r1, r2)
                                : analytic_remote_fidelity(r0, r1);
  }
  if (scenario.kind == GateKind::local) {
    const GMatrix g = build_g_matrix(
        layout, layout.atoms[static_cast<size_t>(layout.control)].cavity,
        scenario.probe_detuning,
        scenario.flavor == Flavor::post_selected ? Flavor::post_selected
                                                 : Flavor::total);
    rep.fidelity_analytic_full =
        analytic_local_fidelity_full(g, layout.control, layout.target);
  }
  return rep;
}

void attach_monte_carlo(GateReport& report, int samples, unsigned long seed) {
  const Scenario& sc = report.scenario;
  const NodeLayout layout = build_layout(sc);
  const SchurChannel channel =
      gate_channel(layout, sc.probe_detuning, sc.kind, Flavor::total);
  const Eigen::VectorXcd ideal = ideal_phase_diagonal(sc.kind, layout);
  const int d = layout.dim();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  double sum = 0.0, sum_sq = 0.0;
  Eigen::VectorXcd psi(d);
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < d; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
    psi.normalize();
    const Eigen::MatrixXcd out = channel.apply(psi * psi.adjoint());
    const Eigen::VectorXcd target = ideal.cwiseProduct(psi);
    const Complex overlap = target.adjoint() * out * target;
    const double f = overlap.real();
    sum += f;
    sum_sq += f * f;
  }
  const double mean = sum / samples;
  const double var = std::max(sum_sq / samples - mean * mean, 0.0);
  report.monte_carlo_fidelity = mean;
  report.monte_carlo_error = std::sqrt(var / samples);
  report.monte_carlo_samples = samples;
}

std::string report_text(const GateReport& rep) {
  const Scenario& sc = rep.scenario;
  std::ostringstream out;
  out.precision(10);
  out << "gate: " << (sc.kind == GateKind::local ? "local" : "remote")
      << " CZ, " << sc.total_atoms << " atoms, "
      << (sc.flavor == Flavor::post_selected ? "post-selected" : "total")
      << "\n";
  out << "cavity: kappa_r=" << sc.cavity.kappa_r
      << " kappa_t=" << sc.cavity.kappa_t << " kappa_m=" << sc.cavity.kappa_m
      << "  (2pi MHz)\n";
  out << "couplings: g_target=" << rep.g_target;
  if (sc.total_atoms > 2)
    out << " g_nontarget=" << rep.g_nontarget
        << " delta_nontarget=" << sc.nontargets.delta;
  out << "  (2pi MHz)\n";
  out << "probe detuning: " << sc.probe_detuning << "\n";
  out << "residual coupling: " << (sc.residual.enabled ? "on" : "off") << "\n";
  out << "\n";
  out << "fidelity_avg (choi):        " << rep.fidelity_avg << "\n";
  out << "fidelity (superposition):   " << rep.fidelity_superposition << "\n";
  if (std::isfinite(rep.fidelity_analytic))
    out << "fidelity (closed form):     " << rep.fidelity_analytic << "\n";
  if (std::isfinite(rep.fidelity_analytic_full))
    out << "fidelity (overlap matrix):  " << rep.fidelity_analytic_full
        << "\n";
  out << "success probability:        " << rep.success_probability << "\n";
  out << "pauli success sum:          " << rep.pauli.success_probability
      << "\n";
  out << "noise bias:                 ";
  if (std::isinf(rep.pauli.bias))
    out << "inf\n";
  else
    out << rep.pauli.bias << "\n";
  out << "\ntwo-qubit error rates (target,control):\n";
  for (int i = 0; i < 16; ++i) {
    const double raw = rep.pauli.marginal[static_cast<size_t>(i)];
    const double shown = std::fabs(raw) < 1e-12 ? 0.0 : raw;
    out << "  p_" << marginal_label(i) << " = " << shown << "\n";
  }
  if (rep.monte_carlo_fidelity) {
    out << "\nmonte-carlo fidelity (total flavor, " << *rep.monte_carlo_samples
        << " samples): " << *rep.monte_carlo_fidelity << " +- "
        << *rep.monte_carlo_error << "\n";
  }
  return out.str();
}

std::string report_json(const GateReport& rep) {
  const Scenario& sc = rep.scenario;
  json j;
  j["gate"]["kind"] = sc.kind == GateKind::local ? "local" : "remote";
  j["gate"]["total_atoms"] = sc.total_atoms;
  j["gate"]["control_qubit"] = sc.control + 1;
  j["gate"]["target_qubit"] = sc.target + 1;
  j["gate"]["post_selected"] = sc.flavor == Flavor::post_selected;
  j["gate"]["probe_detuning_2pi_mhz"] = sc.probe_detuning;
  j["gate"]["residual_coupling"] = sc.residual.enabled;
  j["cavity"]["kappa_r_2pi_mhz"] = sc.cavity.kappa_r;
  j["cavity"]["kappa_t_2pi_mhz"] = sc.cavity.kappa_t;
  j["cavity"]["kappa_m_2pi_mhz"] = sc.cavity.kappa_m;
  j["atoms"]["gamma_2pi_mhz"] = sc.gamma;
  j["atoms"]["g_target_2pi_mhz"] = rep.g_target;
  j["atoms"]["g_nontarget_2pi_mhz"] = rep.g_nontarget;
  j["atoms"]["target_delta_2pi_mhz"] = sc.targets.delta;
  j["atoms"]["nontarget_delta_2pi_mhz"] = sc.nontargets.delta;
  j["metrics"]["fidelity_avg_choi"] = rep.fidelity_avg;
  j["metrics"]["fidelity_superposition"] = rep.fidelity_superposition;
  j["metrics"]["fidelity_analytic"] = json_value(rep.fidelity_analytic);
  j["metrics"]["fidelity_analytic_full"] =
      json_value(rep.fidelity_analytic_full);
  j["metrics"]["success_probability"] = rep.success_probability;
  j["metrics"]["noise_bias"] = json_value(rep.pauli.bias);
  json marg = json::object();
  for (int i = 0; i < 16; ++i)
    marg[marginal_label(i)] = rep.pauli.marginal[static_cast<size_t>(i)];
  j["pauli"]["marginal"] = marg;
  j["pauli"]["success_probability"] = rep.pauli.success_probability;
  if (rep.pauli.n_qubits <= 4) {
    std::vector<double> rates(rep.pauli.rates.data(),
                              rep.pauli.rates.data() + rep.pauli.rates.size());
    j["pauli"]["rates"] = rates;
  }
  if (rep.monte_carlo_fidelity) {
    j["monte_carlo"]["fidelity"] = *rep.monte_carlo_fidelity;
    j["monte_carlo"]["standard_error"] = *rep.monte_carlo_error;
    j["monte_carlo"]["samples"] = *rep.monte_carlo_samples;
  }
  return j.dump(2);
}

SweepResult run_sweep(const ScenarioDoc& doc, int threads) {
  const SweepSpec sweep = bind_sweep(doc);
  SweepResult result;
  result.axes = sweep.axes;
  for (const SweepAxis& ax : sweep.axes)
    result.columns.push_back(ax.section + "." + ax.key);
  const std::vector<std::string> metric_cols = {
      "fidelity_avg_choi", "fidelity_superposition", "fidelity_analytic",
      "success_probability", "p_ii", "p_iz", "p_zi", "p_zz",
      "noise_bias", "nontarget_power_mw"};
  result.columns.insert(result.columns.end(), metric_cols.begin(),
                        metric_cols.end());

  const int n1 = sweep.axes[0].steps;
  const int n2 = sweep.axes.size() > 1 ? sweep.axes[1].steps : 1;
  const int total = n1 * n2;
  result.rows.assign(static_cast<size_t>(total), {});

  // The fiber solve is shared across points unless the sweep touches it.
  bool fiber_swept = false;
  for (const SweepAxis& ax : sweep.axes)
    if (ax.section == "fiber") fiber_swept = true;
  std::optional<CouplingModel> shared_model;
  if (!fiber_swept) {
    const Scenario base = bind_scenario(doc);
    if (base.needs_fiber()) shared_model.emplace(*base.fiber);
  }

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  const auto worker = [&] {
    for (;;) {
      const int idx = next.fetch_add(1);
      if (idx >= total || failed.load()) return;
      const int i1 = idx / n2;
      const int i2 = idx % n2;
      try {
        ScenarioDoc point = doc;
        point.set_number(sweep.axes[0].section, sweep.axes[0].key,
                         sweep.axes[0].value_at(i1));
        if (sweep.axes.size() > 1)
          point.set_number(sweep.axes[1].section, sweep.axes[1].key,
                           sweep.axes[1].value_at(i2));
        const Scenario sc = bind_scenario(point);
        const GateReport rep =
            evaluate_gate(sc, shared_model ? &*shared_model : nullptr);
        std::vector<double> row;
        row.reserve(result.columns.size());
        row.push_back(sweep.axes[0].value_at(i1));
        if (sweep.axes.size() > 1) row.push_back(sweep.axes[1].value_at(i2));
        row.push_back(rep.fidelity_avg);
        row.push_back(rep.fidelity_superposition);
        row.push_back(rep.fidelity_analytic);
        row.push_back(rep.success_probability);
        row.push_back(rep.pauli.marginal_rate('I', 'I'));
        row.push_back(rep.pauli.marginal_rate('I', 'Z'));
        row.push_back(rep.pauli.marginal_rate('Z', 'I'));
        row.push_back(rep.pauli.marginal_rate('Z', 'Z'));
        row.push_back(rep.pauli.bias);
        row.push_back(
            power_for_shift_mw(sc.beam, std::fabs(sc.nontargets.delta)));
        result.rows[static_cast<size_t>(idx)] = std::move(row);
      } catch (const std::exception& ex) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) error_message = ex.what();
      }
    }
  };

  int n_threads = threads > 0
                      ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min(n_threads, total));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (failed.load()) throw Error("sweep failed: " + error_message);
  return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result,
                     const ScenarioDoc& echo) {
  out << "# photon-mediated CZ gate parameter sweep\n";
  for (const auto& [section, entries] : echo.sections) {
    for (const auto& [key, entry] : entries)
      out << "# [" << section << "] " << key << " = " << entry.value << "\n";
  }
  for (size_t c = 0; c < result.columns.size(); ++c)
    out << result.columns[c] << (c + 1 < result.columns.size() ? ',' : '\n');
  for (const auto& row : result.rows) {
    for (size_t c = 0; c < row.size(); ++c)
      out << format_double(row[c]) << (c + 1 < row.size() ? ',' : '\n');
  }
}

std::string sweep_summary_json(const SweepResult& result) {
  json j;
  json axes = json::array();
  for (const SweepAxis& ax : result.axes) {
    axes.push_back({{"field", ax.section + "." + ax.key},
                    {"min", ax.lo},
                    {"max", ax.hi},
                    {"steps", ax.steps},
                    {"scale", ax.log_scale ? "log" : "linear"}});
  }
  j["axes"] = axes;
  j["columns"] = result.columns;
  j["points"] = result.rows.size();

  const size_t n_axes = result.axes.size();
  json argmax = json::object();
  json argmin = json::object();
  for (size_t c = n_axes; c < result.columns.size(); ++c) {
    double best_hi = -std::numeric_limits<double>::infinity();
    double best_lo = std::numeric_limits<double>::infinity();
    size_t idx_hi = 0, idx_lo = 0;
    bool seen = false;
    for (size_t r = 0; r < result.rows.size(); ++r) {
      const double v = result.rows[r][c];
      if (!std::isfinite(v)) continue;
      seen = true;
      if (v > best_hi) {
        best_hi = v;
        idx_hi = r;
      }
      if (v < best_lo) {
        best_lo = v;
        idx_lo = r;
      }
    }
    if (!seen) continue;
    const auto location = [&](size_t row_idx, double value) {
      json loc;
      loc["value"] = value;
      for (size_t a = 0; a < n_axes; ++a)
        loc[result.columns[a]] = result.rows[row_idx][a];
      return loc;
    };
    argmax[result.columns[c]] = location(idx_hi, best_hi);
    argmin[result.columns[c]] = location(idx_lo, best_lo);
  }
  j["argmax"] = argmax;
  j["argmin"] = argmin;
  return j.dump(2);
}

}  // namespace fibergate
