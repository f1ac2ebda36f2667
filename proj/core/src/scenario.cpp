#include "fibergate/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace fibergate {

namespace {

std::string trim(std::string_view sv) {
  size_t b = 0, e = sv.size();
  while (b < e && std::isspace(static_cast<unsigned char>(sv[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(sv[e - 1]))) --e;
  return std::string(sv.substr(b, e - b));
}

double parse_number(const ScenarioDoc::Entry& entry, const std::string& key) {
  const std::string& s = entry.value;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("expected a number for '" + key + "', got '" + s + "'",
                     entry.line);
  return out;
}

int parse_int(const ScenarioDoc::Entry& entry, const std::string& key) {
  const double v = parse_number(entry, key);
  const double r = std::round(v);
  if (std::fabs(v - r) > 1e-9)
    throw ParseError("expected an integer for '" + key + "'", entry.line);
  return static_cast<int>(r);
}

bool parse_bool(const ScenarioDoc::Entry& entry, const std::string& key) {
  if (entry.value == "true") return true;
  if (entry.value == "false") return false;
  throw ParseError("expected true/false for '" + key + "'", entry.line);
}

// Per-section key schemas; anything else is rejected.
const std::set<std::string> kGateKeys = {
    "kind",           "total_atoms",
    "control_qubit",  "target_qubit",
    "probe_detuning_2pi_mhz", "post_selected",
    "residual_coupling",      "residual_dipole_ratio_sq",
    "residual_splitting_2pi_mhz"};
const std::set<std::string> kCavityKeys = {"kappa_r_2pi_mhz",
                                           "kappa_t_2pi_mhz",
                                           "kappa_m_2pi_mhz"};
const std::set<std::string> kAtomKeys = {
    "gamma_2pi_mhz",        "target_g_2pi_mhz",
    "target_r_nm",          "target_delta_2pi_mhz",
    "nontarget_g_2pi_mhz",  "nontarget_r_nm",
    "nontarget_delta_2pi_mhz", "beam_wavelength_nm",
    "beam_waist_um",        "beam_polarizability_au"};
const std::set<std::string> kFiberKeys = {
    "radius_nm",     "core_index",       "cladding_index",
    "wavenumber_inv_um", "cavity_length_m", "polarization"};
const std::set<std::string> kSweepKeys = {
    "axis1", "axis1_min", "axis1_max", "axis1_steps", "axis1_scale",
    "axis2", "axis2_min", "axis2_max", "axis2_steps", "axis2_scale"};

void reject_unknown_keys(const ScenarioDoc& doc, const std::string& section,
                         const std::set<std::string>& allowed) {
  const auto it = doc.sections.find(section);
  if (it == doc.sections.end()) return;
  for (const auto& [key, entry] : it->second) {
    if (!allowed.count(key))
      throw ParseError("unknown key '" + key + "' in [" + section + "]",
                       entry.line);
  }
}

}  // namespace

ScenarioDoc ScenarioDoc::parse(std::string_view text) {
  ScenarioDoc doc;
  std::string current;
  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t eol = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;
    const size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("malformed section header", lineno);
      current = trim(std::string_view(line).substr(1, line.size() - 2));
      if (current.empty()) throw ParseError("empty section name", lineno);
      doc.sections[current];  // a section may legitimately stay empty
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", lineno);
    if (current.empty())
      throw ParseError("key outside of any section", lineno);
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", lineno);
    if (value.empty()) throw ParseError("empty value for '" + key + "'", lineno);
    auto [it, inserted] = doc.sections[current].emplace(key, Entry{value, lineno});
    if (!inserted)
      throw ParseError("duplicate key '" + key + "'", lineno);
  }
  return doc;
}

ScenarioDoc ScenarioDoc::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

bool ScenarioDoc::has(const std::string& section,
                      const std::string& key) const {
  const auto it = sections.find(section);
  return it != sections.end() && it->second.count(key) > 0;
}

void ScenarioDoc::set_number(const std::string& section,
                             const std::string& key, double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  sections[section][key] = Entry{out.str(), 0};
}

double SweepAxis::value_at(int index) const {
  if (steps < 2) return lo;
  const double t = static_cast<double>(index) / (steps - 1);
  if (log_scale) return lo * std::pow(hi / lo, t);
  return lo + (hi - lo) * t;
}

Scenario bind_scenario(const ScenarioDoc& doc) {
  for (const auto& [name, keys] : doc.sections) {
    if (name != "gate" && name != "cavity" && name != "atoms" &&
        name != "fiber" && name != "sweep")
      throw ParseError("unknown section [" + name + "]",
                       keys.empty() ? 0 : keys.begin()->second.line);
  }
  reject_unknown_keys(doc, "gate", kGateKeys);
  reject_unknown_keys(doc, "cavity", kCavityKeys);
  reject_unknown_keys(doc, "atoms", kAtomKeys);
  reject_unknown_keys(doc, "fiber", kFiberKeys);
  reject_unknown_keys(doc, "sweep", kSweepKeys);

  const auto entry = [&](const std::string& sec,
                         const std::string& key) -> const ScenarioDoc::Entry* {
    const auto sit = doc.sections.find(sec);
    if (sit == doc.sections.end()) return nullptr;
    const auto kit = sit->second.find(key);
    return kit == sit->second.end() ? nullptr : &kit->second;
  };
  const auto number = [&](const std::string& sec, const std::string& key,
                          double dflt) {
    const auto* e = entry(sec, key);
    return e ? parse_number(*e, key) : dflt;
  };
  const auto integer = [&](const std::string& sec, const std::string& key,
                           int dflt) {
    const auto* e = entry(sec, key);
    return e ? parse_int(*e, key) : dflt;
  };
  const auto boolean = [&](const std::string& sec, const std::string& key,
                           bool dflt) {
    const auto* e = entry(sec, key);
    return e ? parse_bool(*e, key) : dflt;
  };

  Scenario sc;
  if (const auto* e = entry("gate", "kind")) {
    if (e->value == "local")
      sc.kind = GateKind::local;
    else if (e->value == "remote")
      sc.kind = GateKind::remote;
    else
      throw ParseError("kind must be 'local' or 'remote'", e->line);
  }
  sc.total_atoms = integer("gate", "total_atoms", 2);
  sc.control = integer("gate", "control_qubit", 1) - 1;  // files are 1-based
  sc.target = integer("gate", "target_qubit", 2) - 1;
  sc.probe_detuning = number("gate", "probe_detuning_2pi_mhz", 0.0);
  sc.flavor = boolean("gate", "post_selected", true) ? Flavor::post_selected
                                                     : Flavor::total;
  sc.residual.enabled = boolean("gate", "residual_coupling", false);
  sc.residual.dipole_ratio_sq = number("gate", "residual_dipole_ratio_sq",
                                       constants::kCsDipoleRatioSq);
  sc.residual.splitting = number("gate", "residual_splitting_2pi_mhz",
                                 constants::kCsResidualSplitting);

  if (!entry("cavity", "kappa_r_2pi_mhz"))
    throw ParseError("missing required key kappa_r_2pi_mhz in [cavity]");
  sc.cavity.kappa_r = number("cavity", "kappa_r_2pi_mhz", 0.0);
  sc.cavity.kappa_t = number("cavity", "kappa_t_2pi_mhz", 0.1);
  sc.cavity.kappa_m = number("cavity", "kappa_m_2pi_mhz", 0.1);

  sc.gamma = number("atoms", "gamma_2pi_mhz", constants::kCsHalfLinewidth);
  if (const auto* e = entry("atoms", "target_g_2pi_mhz"))
    sc.targets.g = parse_number(*e, "target_g_2pi_mhz");
  if (const auto* e = entry("atoms", "target_r_nm"))
    sc.targets.r_nm = parse_number(*e, "target_r_nm");
  sc.targets.delta = number("atoms", "target_delta_2pi_mhz", 0.0);
  if (const auto* e = entry("atoms", "nontarget_g_2pi_mhz"))
    sc.nontargets.g = parse_number(*e, "nontarget_g_2pi_mhz");
  if (const auto* e = entry("atoms", "nontarget_r_nm"))
    sc.nontargets.r_nm = parse_number(*e, "nontarget_r_nm");
  sc.nontargets.delta = number("atoms", "nontarget_delta_2pi_mhz", 0.0);
  sc.beam.wavelength_nm =
      number("atoms", "beam_wavelength_nm", constants::kBeamWavelengthNm);
  sc.beam.waist_um = number("atoms", "beam_waist_um", constants::kBeamWaistUm);
  sc.beam.polarizability_au = number("atoms", "beam_polarizability_au",
                                     constants::kBeamPolarizabilityAu);

  if (doc.sections.count("fiber")) {
    FiberSpec fiber;
    fiber.radius_um = number("fiber", "radius_nm", 200.0) * 1e-3;
    fiber.core_index = number("fiber", "core_index", 1.45);
    fiber.cladding_index = number("fiber", "cladding_index", 1.0);
    fiber.wavenumber =
        number("fiber", "wavenumber_inv_um", constants::kCsD2Wavenumber);
    fiber.cavity_length_m = number("fiber", "cavity_length_m", 0.12);
    sc.fiber = fiber;
    if (const auto* e = entry("fiber", "polarization")) {
      if (e->value == "linear_parallel")
        sc.polarization = QuasiLinear{0.0};
      else if (e->value == "linear_orthogonal")
        sc.polarization = QuasiLinear{0.5 * std::numbers::pi};
      else if (e->value == "circular")
        sc.polarization = Circular{};
      else
        throw ParseError(
            "polarization must be linear_parallel, linear_orthogonal or "
            "circular",
            e->line);
    }
  }

  sc.validate();  // physics violations keep their own error type
  return sc;
}

bool has_sweep(const ScenarioDoc& doc) {
  return doc.sections.count("sweep") > 0 &&
         !doc.sections.at("sweep").empty();
}

SweepSpec bind_sweep(const ScenarioDoc& doc) {
  if (!has_sweep(doc)) throw ParseError("scenario has no [sweep] section");
  reject_unknown_keys(doc, "sweep", kSweepKeys);
  const auto& section = doc.sections.at("sweep");
  SweepSpec spec;
  for (const std::string axis_name : {"axis1", "axis2"}) {
    const auto it = section.find(axis_name);
    if (it == section.end()) {
      if (axis_name == "axis1")
        throw ParseError("sweep needs at least axis1");
      break;
    }
    SweepAxis axis;
    const std::string& path = it->second.value;
    const size_t dot = path.find('.');
    if (dot == std::string::npos)
      throw ParseError("sweep axis must be 'section.key'", it->second.line);
    axis.section = path.substr(0, dot);
    axis.key = path.substr(dot + 1);
    const auto need = [&](const std::string& suffix) {
      const auto kit = section.find(axis_name + suffix);
      if (kit == section.end())
        throw ParseError("missing " + axis_name + suffix + " in [sweep]");
      return kit->second;
    };
    axis.lo = parse_number(need("_min"), axis_name + "_min");
    axis.hi = parse_number(need("_max"), axis_name + "_max");
    axis.steps = parse_int(need("_steps"), axis_name + "_steps");
    if (axis.steps < 2)
      throw ParseError(axis_name + "_steps must be at least 2");
    const auto sit = section.find(axis_name + "_scale");
    if (sit != section.end()) {
      if (sit->second.value == "log")
        axis.log_scale = true;
      else if (sit->second.value != "linear")
        throw ParseError("scale must be linear or log", sit->second.line);
    }
    if (axis.log_scale && (axis.lo <= 0.0 || axis.hi <= 0.0))
      throw ParseError("log-scale axes need positive bounds");
    spec.axes.push_back(axis);
  }
  return spec;
}

}  // namespace fibergate
