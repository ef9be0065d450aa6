#include "xtalk/scenario.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "xtalk/models.hpp"

namespace xtalk {

std::vector<TransitionPattern> Scenario::resolve_patterns() const {
  std::vector<TransitionPattern> out;
  for (const std::string& s : pattern_specs) {
    if (s == "worst-per-class") {
      WindowModel model;
      switch (bus.wire_count) {
        case 3: model = WindowModel::three_wire; break;
        case 4: model = WindowModel::boundary2; break;
        case 5: model = WindowModel::five_wire; break;
        default:
          throw InvalidPatternError(
              "worst-per-class directive needs a 3-, 4-, or 5-wire bus");
      }
      for (int i = 0; i <= 4; ++i) out.push_back(worst_pattern(CrosstalkClass(i), model));
      continue;
    }
    TransitionPattern p = TransitionPattern::parse(s);
    if (p.width() != bus.wire_count)
      throw InvalidPatternError("pattern '" + s + "' does not match the bus width");
    out.push_back(p);
  }
  return out;
}

namespace {

BusSpec bus_from_json(const nlohmann::json& j) {
  BusSpec bus;
  bus.wire_count = j.at("wire_count").get<int>();
  bus.r = j.at("resistance_ohm_per_meter").get<double>();
  bus.c = j.at("capacitance_farad_per_meter").get<double>();
  bus.cc = j.at("coupling_farad_per_meter").get<double>();
  bus.length = j.at("length_meter").get<double>();
  bus.driver_resistance = j.value("driver_resistance_ohm", 0.0);
  bus.load_capacitance = j.value("load_capacitance_farad", 0.0);
  bus.segments = j.value("segments", 100);
  bus.validate();
  return bus;
}

nlohmann::json bus_to_json(const BusSpec& bus) {
  return nlohmann::json{{"wire_count", bus.wire_count},
                        {"resistance_ohm_per_meter", bus.r},
                        {"capacitance_farad_per_meter", bus.c},
                        {"coupling_farad_per_meter", bus.cc},
                        {"length_meter", bus.length},
                        {"driver_resistance_ohm", bus.driver_resistance},
                        {"load_capacitance_farad", bus.load_capacitance},
                        {"segments", bus.segments}};
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  Scenario s;
  s.bus = bus_from_json(j.at("bus"));
  if (j.contains("patterns"))
    for (const auto& p : j.at("patterns")) s.pattern_specs.push_back(p.get<std::string>());
  if (j.contains("models"))
    for (const auto& m : j.at("models")) s.models.push_back(m.get<std::string>());
  s.output = j.value("output", std::string("table"));
  return s;
}

std::string scenario_to_json(const Scenario& scenario) {
  nlohmann::json j{{"bus", bus_to_json(scenario.bus)},
                   {"patterns", scenario.pattern_specs},
                   {"models", scenario.models},
                   {"output", scenario.output}};
  return j.dump(2);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

BusSpec reference_bus(int wires) {
  BusSpec bus;
  bus.wire_count = wires;
  bus.r = 13.75e3;       // 13.75 ohm/mm
  bus.c = 8.263e-12;     // 8.263 fF/mm
  bus.cc = 101.136e-12;  // 101.136 fF/mm
  bus.length = 5e-3;     // 5 mm
  bus.driver_resistance = 100.0;
  bus.load_capacitance = 0.0;
  bus.segments = 100;
  return bus;
}

Scenario default_scenario() {
  Scenario s;
  s.bus = reference_bus(3);
  s.pattern_specs = {"worst-per-class"};
  s.models = {"baseline", "profile"};
  return s;
}

}  // namespace xtalk
