#pragma once

#include <Eigen/Sparse>
#include <iosfwd>
#include <vector>

#include "xtalk/bus.hpp"

namespace xtalk {

/// Segmented distributed-RC network of an m-wire bus: N sections per
/// wire, ground capacitance on every internal node, lateral coupling
/// capacitance between adjacent wires, load capacitance at the far end,
/// and a series driver resistance per wire (eliminated as a Dirichlet
/// boundary when zero).
class Network {
 public:
  explicit Network(const BusSpec& spec);

  const BusSpec& spec() const { return spec_; }
  int node_count() const { return static_cast<int>(conductance_.rows()); }
  bool driver_eliminated() const { return driver_eliminated_; }

  /// Row index of node j on wire i (j = 0 is the driver node; when the
  /// driver is eliminated, unknowns start at j = 1).
  int node_index(int wire, int section) const;
  int far_node(int wire) const { return node_index(wire, spec_.segments); }

  const Eigen::SparseMatrix<double>& conductance() const { return conductance_; }
  const Eigen::SparseMatrix<double>& capacitance() const { return capacitance_; }
  /// Column i maps the step source of wire i into the node equations.
  const Eigen::SparseMatrix<double>& input_map() const { return input_map_; }

 private:
  BusSpec spec_;
  bool driver_eliminated_ = false;
  Eigen::SparseMatrix<double> conductance_;
  Eigen::SparseMatrix<double> capacitance_;
  Eigen::SparseMatrix<double> input_map_;
};

/// Sampled node voltages, normalized to a unit supply.
struct Trace {
  std::vector<double> times;
  std::vector<std::vector<double>> voltages;  // [wire][sample], far-end nodes
  std::vector<double> dc_targets;             // final codeword per wire
};

struct SimOptions {
  double dt = 0.0;     // 0: tau0_intrinsic / 500
  double t_end = 0.0;  // 0: 60 (1 + 3 lambda) tau
  double record_interval = 0.0;  // 0: t_end / 65536 (floored at dt)
  bool early_stop = true;        // stop once all nodes sit within 1e-5 of DC
};

/// Trapezoidal transient response to ideal steps applied at t = 0 from
/// the initial codeword. The system matrix is factored once per call.
Trace simulate(const Network& net, const TransitionPattern& pattern, const SimOptions& opts = {});

/// Last threshold crossing by scan plus linear interpolation. Requires
/// the trace to have settled within 1e-4 of its DC target.
double extract_crossing(const Trace& trace, int wire, double threshold = 0.5);

/// Pointwise weighted sum; grids must match exactly.
Trace superpose(const std::vector<const Trace*>& traces, const std::vector<double>& weights);

/// Simulated 50% delay of every transitioning wire.
std::vector<DelayEstimate> worst_delay_sim(const TransitionPattern& pattern, const BusSpec& spec,
                                           const SimOptions& opts = {});

/// Unit-step responses of every wire from the all-zero state, combined
/// linearly to evaluate arbitrary patterns without re-simulation.
/// Mirror symmetry halves the number of transient runs.
class StepResponseBank {
 public:
  StepResponseBank(const BusSpec& spec, const SimOptions& opts = {});

  /// 50% delay of the victim under the given per-wire directions.
  double delay(const std::vector<int>& deltas, int victim, double threshold = 0.5) const;

  /// Superposed far-end trace of one wire.
  std::vector<double> victim_samples(const std::vector<int>& deltas, int victim) const;
  const std::vector<double>& times() const { return times_; }

 private:
  int wires_;
  std::vector<double> times_;
  std::vector<Trace> unit_;  // unit_[k]: wire k rises alone
};

/// Plain-text netlist of the identical segmented network for external
/// cross-validation; node names W{i}N{j}.
void write_spice_netlist(const BusSpec& spec, const TransitionPattern& pattern,
                         std::ostream& os);

/// JSON summary: node counts, per-wire totals, coupling factor.
std::string network_summary_json(const BusSpec& spec);

}  // namespace xtalk
