#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>

#include "xtalk/cac.hpp"
#include "xtalk/models.hpp"
#include "xtalk/report.hpp"
#include "xtalk/scenario.hpp"
#include "xtalk/search.hpp"
#include "xtalk/simulator.hpp"

namespace {

using namespace xtalk;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream os(out_path);
  if (!os) throw Error("cannot open output file: " + out_path);
  os << text;
}

struct CommonOpts {
  std::string scenario_path;
  std::string format = "table";
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--scenario", opts.scenario_path, "scenario JSON file");
  cmd->add_option("--format", opts.format, "table, csv, or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  cmd->add_option("--out", opts.out_path, "write the report to a file");
}

Scenario resolve_scenario(const CommonOpts& opts, int wires_override,
                          const std::vector<std::string>& patterns,
                          const std::vector<std::string>& models) {
  Scenario s = opts.scenario_path.empty() ? default_scenario()
                                          : load_scenario(opts.scenario_path);
  if (wires_override > 0) s.bus.wire_count = wires_override;
  if (!patterns.empty()) s.pattern_specs = patterns;
  if (!models.empty()) s.models = models;
  return s;
}

double model_value(const std::string& model, const TransitionPattern& pattern, int wire,
                   const BusSpec& spec) {
  const DeltaVector delta = delta_of(pattern);
  if (model == "baseline") return baseline_delay(delta, wire, spec).value;
  ProfileOptions opts;
  if (model == "profile") {
    opts.buffered = true;
  } else if (model == "profile-table") {
    opts.buffered = true;
    opts.paper_table = true;
  } else if (model == "profile-unbuffered") {
    opts.buffered = false;
  } else if (model == "profile-table-unbuffered") {
    opts.buffered = false;
    opts.paper_table = true;
  } else {
    throw ModelError("unknown model tag: " + model);
  }
  for (const DelayEstimate& est : bus_delay_profile(pattern, spec, opts))
    if (est.wire == wire) return est.value;
  throw NoTransitionError("wire does not transition");
}

DelayOracle make_oracle(const std::string& kind, const BusSpec& spec,
                        std::shared_ptr<StepResponseBank>& bank) {
  if (kind == "simulator") {
    bank = std::make_shared<StepResponseBank>(spec);
    return [bank](const std::vector<int>& d, int victim) { return bank->delay(d, victim); };
  }
  if (kind == "analytic") {
    return [spec](const std::vector<int>& d, int victim) {
      DeltaVector dv;
      dv.deltas = d;
      const TransitionPattern p = TransitionPattern::from_delta(dv);
      for (const DelayEstimate& est : bus_delay_profile(p, spec))
        if (est.wire == victim) return est.value;
      throw NoTransitionError("victim does not transition");
    };
  }
  throw ModelError("unknown oracle: " + kind);
}

CrosstalkClass parse_class(const std::string& label) {
  if (label.size() == 2 && label[1] == 'C' && label[0] >= '0' && label[0] <= '4')
    return CrosstalkClass(label[0] - '0');
  throw ModelError("bad class label (expected 0C..4C): " + label);
}

int cmd_classify(const std::string& pattern_text, const CommonOpts& opts) {
  const TransitionPattern p = TransitionPattern::parse(pattern_text);
  const BusClassification c = classify_bus(delta_of(p));
  if (opts.format == "json") {
    nlohmann::json j;
    j["pattern"] = p.arrows();
    j["classes"] = nlohmann::json::array();
    for (const CrosstalkClass& cls : c.per_wire) j["classes"].push_back(cls.label());
    j["max"] = c.max.label();
    emit(j.dump(2), opts.out_path);
    return 0;
  }
  std::string line;
  for (size_t i = 0; i < c.per_wire.size(); ++i) {
    if (i) line += ' ';
    line += c.per_wire[i].label();
  }
  line += "\nmax: " + c.max.label() + "\n";
  emit(line, opts.out_path);
  return 0;
}

int cmd_delay(const Scenario& scenario, const CommonOpts& opts) {
  ReportTable table;
  table.header = {"pattern", "wire", "class"};
  for (const std::string& m : scenario.models) table.header.push_back(m + "_ps");

  for (const TransitionPattern& p : scenario.resolve_patterns()) {
    const DeltaVector delta = delta_of(p);
    const BusClassification classes = classify_bus(delta);
    for (int k = 0; k < p.width(); ++k) {
      if (delta.deltas[k] == 0) continue;
      std::vector<std::string> row{p.arrows(), std::to_string(k + 1),
                                   classes.per_wire[k].label()};
      for (const std::string& m : scenario.models) {
        try {
          row.push_back(format_ps(model_value(m, p, k, scenario.bus)));
        } catch (const Error& e) {
          row.push_back(std::string("error: ") + e.what());
        }
      }
      table.rows.push_back(std::move(row));
    }
  }
  emit(table.render(opts.format), opts.out_path);
  return 0;
}

int cmd_simulate(const Scenario& scenario, const CommonOpts& opts,
                 const std::string& trace_prefix, const std::string& spice_path,
                 bool summary) {
  if (summary) {
    emit(network_summary_json(scenario.bus), opts.out_path);
    return 0;
  }
  ReportTable table;
  table.header = {"pattern", "wire", "class", "simulated_ps"};
  const auto patterns = scenario.resolve_patterns();
  int index = 0;
  for (const TransitionPattern& p : patterns) {
    ++index;
    if (!spice_path.empty()) {
      std::string path = spice_path;
      if (patterns.size() > 1) path += "." + std::to_string(index);
      std::ofstream os(path);
      if (!os) throw Error("cannot open netlist file: " + path);
      write_spice_netlist(scenario.bus, p, os);
    }
    const DeltaVector delta = delta_of(p);
    bool any = false;
    for (int d : delta.deltas) any |= d != 0;
    if (!any) {
      table.rows.push_back({p.arrows(), "-", "-", "no transitions"});
      continue;
    }
    Network net(scenario.bus);
    const Trace trace = simulate(net, p);
    if (!trace_prefix.empty()) {
      std::string path = trace_prefix;
      if (patterns.size() > 1) path += "." + std::to_string(index);
      std::ofstream os(path);
      if (!os) throw Error("cannot open trace file: " + path);
      write_trace_csv(trace, os);
    }
    const BusClassification classes = classify_bus(delta);
    for (int k = 0; k < p.width(); ++k) {
      if (delta.deltas[k] == 0) continue;
      table.rows.push_back({p.arrows(), std::to_string(k + 1), classes.per_wire[k].label(),
                            format_ps(extract_crossing(trace, k))});
    }
  }
  emit(table.render(opts.format), opts.out_path);
  return 0;
}

int cmd_compare(const Scenario& scenario, const CommonOpts& opts) {
  std::vector<std::string> models;
  for (const std::string& m : scenario.models)
    if (m != "simulator") models.push_back(m);
  if (models.empty()) throw ModelError("compare needs at least one analytical model");

  ReportTable table;
  table.header = {"pattern", "wire", "class", "simulated_ps"};
  for (const std::string& m : models) {
    table.header.push_back(m + "_ps");
    table.header.push_back(m + "_err");
  }

  for (const TransitionPattern& p : scenario.resolve_patterns()) {
    const DeltaVector delta = delta_of(p);
    const BusClassification classes = classify_bus(delta);
    const auto sim = worst_delay_sim(p, scenario.bus);
    for (const DelayEstimate& s : sim) {
      std::vector<std::string> row{p.arrows(), std::to_string(s.wire + 1),
                                   classes.per_wire[s.wire].label(), format_ps(s.value)};
      for (const std::string& m : models) {
        try {
          const double v = model_value(m, p, s.wire, scenario.bus);
          row.push_back(format_ps(v));
          row.push_back(format_percent((v - s.value) / s.value));
        } catch (const Error& e) {
          row.push_back(std::string("error: ") + e.what());
          row.push_back("-");
        }
      }
      table.rows.push_back(std::move(row));
    }
  }
  emit(table.render(opts.format), opts.out_path);
  return 0;
}

int cmd_worst(const Scenario& scenario, const CommonOpts& opts, int wires,
              const std::string& cls_label, const std::string& method,
              const std::string& oracle_kind) {
  BusSpec bus = scenario.bus;
  if (wires > 0) bus.wire_count = wires;
  const CrosstalkClass cls = parse_class(cls_label);
  std::shared_ptr<StepResponseBank> bank;
  const DelayOracle oracle = make_oracle(oracle_kind, bus, bank);
  const std::vector<int> middle = class_representative_middle(cls);

  SearchReport rep;
  if (method == "alg1") {
    rep = alg1(bus.wire_count, cls, middle, oracle);
  } else if (method == "exhaustive") {
    rep = exhaustive(bus.wire_count, cls, middle, oracle);
  } else if (method == "symmetric") {
    rep = symmetric_enumerate(bus.wire_count, cls, middle, oracle);
  } else {
    throw ModelError("unknown method: " + method);
  }

  if (opts.format == "json") {
    nlohmann::json j;
    j["class"] = rep.cls.label();
    j["pattern"] = rep.pattern.arrows();
    j["delay_seconds"] = rep.delay;
    j["delay_ps"] = format_ps(rep.delay);
    j["oracle_calls"] = rep.iterations;
    j["trajectory"] = nlohmann::json::array();
    for (size_t i = 0; i < rep.trajectory.size(); ++i)
      j["trajectory"].push_back({{"pattern", rep.trajectory[i].arrows()},
                                 {"delay_seconds", rep.trajectory_delays[i]}});
    emit(j.dump(2), opts.out_path);
    return 0;
  }
  std::string text = "class " + rep.cls.label() + "  pattern " + rep.pattern.arrows() +
                     "  delay " + format_ps(rep.delay) + " ps  oracle calls " +
                     std::to_string(rep.iterations) + "\n";
  for (size_t i = 0; i < rep.trajectory.size(); ++i)
    text += "  step " + std::to_string(i) + ": " + rep.trajectory[i].arrows() + "  " +
            format_ps(rep.trajectory_delays[i]) + " ps\n";
  emit(text, opts.out_path);
  return 0;
}

int cmd_cac(const Scenario& scenario, const CommonOpts& opts, int width,
            const std::string& family, const std::string& evaluator,
            const std::string& export_path, bool do_certify) {
  Codebook book;
  if (family == "olc") {
    book = generate_codebook(width, CrosstalkClass(1));
  } else if (family == "fpc") {
    book = fpc_set(width);
  } else if (family == "foc") {
    book = generate_codebook(width, CrosstalkClass(3));
  } else {
    book = generate_codebook(width, parse_class(family));
  }

  if (!export_path.empty()) {
    std::ofstream os(export_path);
    if (!os) throw Error("cannot open export file: " + export_path);
    os << codebook_to_json(book);
  }
  if (do_certify) {
    emit(certification_json(book), opts.out_path);
    return 0;
  }

  std::string text = "family " + family + "  width " + std::to_string(width) +
                     "  codewords " + std::to_string(book.codewords.size()) +
                     "  transitions " + std::to_string(book.transition_count()) +
                     (book.optimal ? "" : "  (budget hit, not proven optimal)") + "\n";

  if (evaluator != "none") {
    BusSpec bus = scenario.bus;
    bus.wire_count = width;
    WireDelayFn fn;
    std::shared_ptr<StepResponseBank> bank;
    if (evaluator == "simulator") {
      bank = std::make_shared<StepResponseBank>(bus);
      fn = [bank, bus](const TransitionPattern& p) {
        const DeltaVector delta = delta_of(p);
        const BusClassification classes = classify_bus(delta);
        std::vector<DelayEstimate> out;
        for (int k = 0; k < p.width(); ++k) {
          if (delta.deltas[k] == 0) continue;
          DelayEstimate est;
          est.wire = k;
          est.source = "simulator";
          est.cls = classes.per_wire[k];
          est.value = bank->delay(delta.deltas, k);
          out.push_back(est);
        }
        return out;
      };
    } else if (evaluator == "analytic") {
      fn = [bus](const TransitionPattern& p) { return bus_delay_profile(p, bus); };
    } else {
      throw ModelError("unknown evaluator: " + evaluator);
    }
    const CodebookDelayReport rep = codebook_worst_delays(book, fn);
    ReportTable table;
    table.header = {"wire", "worst_ps", "from", "to"};
    for (const WireWorst& w : rep.per_wire)
      table.rows.push_back({std::to_string(w.wire + 1), format_ps(w.delay),
                            codeword_string(w.from, width), codeword_string(w.to, width)});
    text += table.render(opts.format == "json" ? "json" : opts.format);
    text += "overall worst " + format_ps(rep.overall.delay) + " ps on wire " +
            std::to_string(rep.overall.wire + 1) + "\n";
  }
  emit(text, opts.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crosstalk-delay toolkit for capacitively coupled buses"};
  app.require_subcommand(1);

  CommonOpts classify_opts, delay_opts, simulate_opts, compare_opts, worst_opts, cac_opts;
  std::string classify_pattern;
  auto* classify = app.add_subcommand("classify", "per-wire crosstalk classes of a pattern");
  classify->add_option("pattern", classify_pattern, "pattern, e.g. ududdd or 101>010")
      ->required();
  add_common(classify, classify_opts);

  std::vector<std::string> delay_patterns, delay_models;
  int delay_wires = 0;
  auto* delay = app.add_subcommand("delay", "analytical delay models");
  add_common(delay, delay_opts);
  delay->add_option("--patterns", delay_patterns, "pattern strings or worst-per-class");
  delay->add_option("--models", delay_models,
                    "baseline, profile, profile-table, profile-unbuffered");
  delay->add_option("--wires", delay_wires, "override the bus width");

  std::vector<std::string> sim_patterns;
  int sim_wires = 0;
  std::string trace_prefix, spice_path;
  bool sim_summary = false;
  auto* simulate = app.add_subcommand("simulate", "transient RC simulation");
  add_common(simulate, simulate_opts);
  simulate->add_option("--patterns", sim_patterns, "pattern strings or worst-per-class");
  simulate->add_option("--wires", sim_wires, "override the bus width");
  simulate->add_option("--trace", trace_prefix, "write far-end waveforms to CSV");
  simulate->add_option("--spice", spice_path, "write the segmented network as a netlist");
  simulate->add_flag("--summary", sim_summary, "print the network summary JSON and exit");

  std::vector<std::string> cmp_patterns, cmp_models;
  int cmp_wires = 0;
  auto* compare = app.add_subcommand("compare", "models vs transient simulation");
  add_common(compare, compare_opts);
  compare->add_option("--patterns", cmp_patterns, "pattern strings or worst-per-class");
  compare->add_option("--models", cmp_models, "analytical models to compare");
  compare->add_option("--wires", cmp_wires, "override the bus width");

  int worst_wires = 0;
  std::string worst_class = "4C", worst_method = "alg1", worst_oracle = "simulator";
  auto* worst = app.add_subcommand("worst", "worst-case pattern search");
  add_common(worst, worst_opts);
  worst->add_option("--wires", worst_wires, "bus width")->required();
  worst->add_option("--class", worst_class, "crosstalk class 0C..4C");
  worst->add_option("--method", worst_method, "alg1, exhaustive, or symmetric");
  worst->add_option("--oracle", worst_oracle, "simulator or analytic");

  int cac_width = 8;
  std::string cac_family = "fpc", cac_eval = "none", cac_export;
  bool cac_certify = false;
  auto* cac = app.add_subcommand("cac", "codebook generation and certification");
  add_common(cac, cac_opts);
  cac->add_option("--width", cac_width, "bus width");
  cac->add_option("--family", cac_family, "olc, fpc, foc, or a class cap like 2C");
  cac->add_option("--evaluate", cac_eval, "none, simulator, or analytic");
  cac->add_option("--export", cac_export, "write the codebook JSON to a file");
  cac->add_flag("--certify", cac_certify, "print the pairwise certification report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) return cmd_classify(classify_pattern, classify_opts);
    if (delay->parsed())
      return cmd_delay(resolve_scenario(delay_opts, delay_wires, delay_patterns, delay_models),
                       delay_opts);
    if (simulate->parsed())
      return cmd_simulate(resolve_scenario(simulate_opts, sim_wires, sim_patterns, {}),
                          simulate_opts, trace_prefix, spice_path, sim_summary);
    if (compare->parsed())
      return cmd_compare(resolve_scenario(compare_opts, cmp_wires, cmp_patterns, cmp_models),
                         compare_opts);
    if (worst->parsed())
      return cmd_worst(resolve_scenario(worst_opts, 0, {}, {}), worst_opts, worst_wires,
                       worst_class, worst_method, worst_oracle);
    if (cac->parsed())
      return cmd_cac(resolve_scenario(cac_opts, 0, {}, {}), cac_opts, cac_width, cac_family,
                     cac_eval, cac_export, cac_certify);
  } catch (const std::exception& e) {
    nlohmann::json err{{"error", {{"type", typeid(e).name()}, {"message", e.what()}}}};
    std::cerr << err.dump() << std::endl;
    return 1;
  }
  return 0;
}
