#pragma once

#include <string>
#include <vector>

#include "xtalk/bus.hpp"

namespace xtalk {

/// A batch run description: bus, transition patterns (or the directive
/// "worst-per-class"), evaluator tags, output format.
struct Scenario {
  BusSpec bus;
  std::vector<std::string> pattern_specs;  // pattern strings or directives
  std::vector<std::string> models;         // baseline, three-wire, five-wire, profile,
                                           // profile-table, simulator
  std::string output = "table";            // table | csv | json

  /// Expands directives and parses the pattern strings against the bus width.
  std::vector<TransitionPattern> resolve_patterns() const;
};

Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& scenario);
Scenario load_scenario(const std::string& path);

/// 45nm reference bus: 13.75 ohm/mm, 8.263 fF/mm ground and
/// 101.136 fF/mm coupling capacitance, 5 mm long, 100 ohm driver,
/// 100 segments.
BusSpec reference_bus(int wires);
Scenario default_scenario();

}  // namespace xtalk
