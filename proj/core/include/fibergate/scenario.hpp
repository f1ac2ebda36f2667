#pragma once

#include <map>
#include <string>
#include <vector>

#include "fibergate/addressing.hpp"

namespace fibergate {

/// Raw scenario file: ordered sections of key/value pairs. Parsing is
/// strict; unknown sections or keys are rejected when the document is
/// bound to a Scenario.
struct ScenarioDoc {
  struct Entry {
    std::string value;
    int line = 0;
  };
  using Section = std::map<std::string, Entry>;
  std::map<std::string, Section> sections;

  static ScenarioDoc parse(std::string_view text);
  static ScenarioDoc parse_file(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  /// Replaces (or inserts) a numeric value, used by the sweep driver.
  void set_number(const std::string& section, const std::string& key,
                  double value);
};

struct SweepAxis {
  std::string section;
  std::string key;
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
  bool log_scale = false;

  double value_at(int index) const;
};

struct SweepSpec {
  std::vector<SweepAxis> axes;  // one or two
};

/// Binds the [gate], [cavity], [atoms] and optional [fiber] sections into
/// a Scenario. Unknown keys raise ParseError.
Scenario bind_scenario(const ScenarioDoc& doc);

/// Binds the [sweep] section; throws if it is absent or malformed.
SweepSpec bind_sweep(const ScenarioDoc& doc);
bool has_sweep(const ScenarioDoc& doc);

}  // namespace fibergate
