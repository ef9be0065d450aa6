#include "xtalk/simulator.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

namespace xtalk {

Network::Network(const BusSpec& spec) : spec_(spec) {
  spec_.validate();
  const int m = spec_.wire_count;
  const int N = spec_.segments;
  driver_eliminated_ = spec_.driver_resistance == 0.0;

  // Unknowns: node j of wire i at row j*m + i (j starts at 1 when the
  // driver node is a Dirichlet boundary). Wire-major numbering keeps the
  // bandwidth at m+1.
  const int levels = driver_eliminated_ ? N : N + 1;
  const int n = levels * m;

  const double g_seg = N / (spec_.r * spec_.length);
  const double c_ground = spec_.c * spec_.length / N;
  const double c_couple = spec_.cc * spec_.length / N;

  std::vector<Eigen::Triplet<double>> tg, tc, tb;
  auto row = [&](int wire, int section) {
    const int level = driver_eliminated_ ? section - 1 : section;
    return level * m + wire;
  };

  for (int i = 0; i < m; ++i) {
    // Series segments along the wire.
    for (int j = 1; j <= N; ++j) {
      const int b = row(i, j);
      tg.emplace_back(b, b, g_seg);
      if (j == 1 && driver_eliminated_) {
        // Segment to the ideal source: Dirichlet boundary folded into
        // the right-hand side.
        tb.emplace_back(b, i, g_seg);
      } else {
        const int a = row(i, j - 1);
        tg.emplace_back(a, a, g_seg);
        tg.emplace_back(a, b, -g_seg);
        tg.emplace_back(b, a, -g_seg);
      }
    }
    if (!driver_eliminated_) {
      const int d = row(i, 0);
      const double g_drv = 1.0 / spec_.driver_resistance;
      tg.emplace_back(d, d, g_drv);
      tb.emplace_back(d, i, g_drv);
    }
    // Ground and load capacitance on the wire body.
    for (int j = 1; j <= N; ++j) tc.emplace_back(row(i, j), row(i, j), c_ground);
    if (spec_.load_capacitance > 0.0)
      tc.emplace_back(row(i, N), row(i, N), spec_.load_capacitance);
    // Lateral coupling to the next wire.
    if (i + 1 < m && c_couple > 0.0) {
      for (int j = 1; j <= N; ++j) {
        const int a = row(i, j), b = row(i + 1, j);
        tc.emplace_back(a, a, c_couple);
        tc.emplace_back(b, b, c_couple);
        tc.emplace_back(a, b, -c_couple);
        tc.emplace_back(b, a, -c_couple);
      }
    }
  }

  conductance_.resize(n, n);
  conductance_.setFromTriplets(tg.begin(), tg.end());
  capacitance_.resize(n, n);
  capacitance_.setFromTriplets(tc.begin(), tc.end());
  input_map_.resize(n, m);
  input_map_.setFromTriplets(tb.begin(), tb.end());
}

int Network::node_index(int wire, int section) const {
  const int m = spec_.wire_count;
  if (wire < 0 || wire >= m || section < 0 || section > spec_.segments)
    throw Error("node index out of range");
  if (driver_eliminated_) {
    if (section == 0) throw Error("driver node is a boundary, not an unknown");
    return (section - 1) * m + wire;
  }
  return section * m + wire;
}

Trace simulate(const Network& net, const TransitionPattern& pattern, const SimOptions& opts) {
  pattern.validate();
  const BusSpec& spec = net.spec();
  if (pattern.width() != spec.wire_count)
    throw InvalidPatternError("pattern width does not match the bus");

  const double lambda = spec.lambda();
  const double dt = opts.dt > 0.0 ? opts.dt : spec.tau0_intrinsic() / 500.0;
  const double t_end =
      opts.t_end > 0.0 ? opts.t_end : 60.0 * (1.0 + 3.0 * lambda) * spec.tau_diffusion();
  const double rec =
      opts.record_interval > 0.0 ? opts.record_interval : std::max(dt, t_end / 65536.0);
  const int stride = std::max(1, static_cast<int>(std::llround(rec / dt)));
  const long steps = std::max<long>(1, static_cast<long>(std::ceil(t_end / dt)));

  const int n = net.node_count();
  const int m = spec.wire_count;

  Eigen::SparseMatrix<double> a = net.capacitance() * (2.0 / dt) + net.conductance();
  Eigen::SparseMatrix<double> b = net.capacitance() * (2.0 / dt) - net.conductance();
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  solver.compute(a);
  if (solver.info() != Eigen::Success)
    throw Error("transient system matrix is singular or not factorizable");

  Eigen::VectorXd source(m), dc(n);
  for (int i = 0; i < m; ++i) source[i] = pattern.final_state[i];
  for (int i = 0; i < m; ++i) {
    for (int j = net.driver_eliminated() ? 1 : 0; j <= spec.segments; ++j)
      dc[net.node_index(i, j)] = source[i];
  }

  // Initial state: DC solution of the initial codeword.
  Eigen::VectorXd x(n);
  for (int i = 0; i < m; ++i) {
    for (int j = net.driver_eliminated() ? 1 : 0; j <= spec.segments; ++j)
      x[net.node_index(i, j)] = pattern.initial[i];
  }

  const Eigen::VectorXd forcing = 2.0 * (net.input_map() * source);

  Trace trace;
  trace.voltages.resize(m);
  trace.dc_targets.resize(m);
  for (int i = 0; i < m; ++i) trace.dc_targets[i] = pattern.final_state[i];

  auto record = [&](double t) {
    trace.times.push_back(t);
    for (int i = 0; i < m; ++i) trace.voltages[i].push_back(x[net.far_node(i)]);
  };
  record(0.0);

  const double settle_floor = 10.0 * (1.0 + 3.0 * lambda) * spec.tau_diffusion();
  for (long k = 1; k <= steps; ++k) {
    const Eigen::VectorXd rhs = b * x + forcing;
    x = solver.solve(rhs);
    const double t = k * dt;
    if (k % stride == 0 || k == steps) {
      record(t);
      if (opts.early_stop && t > settle_floor &&
          (x - dc).lpNorm<Eigen::Infinity>() < 1e-5)
        break;
    }
  }
  return trace;
}

double extract_crossing(const Trace& trace, int wire, double threshold) {
  if (wire < 0 || wire >= static_cast<int>(trace.voltages.size()))
    throw Error("wire index out of range");
  const auto& v = trace.voltages[wire];
  if (v.size() < 2) throw Error("trace too short");
  if (std::abs(v.back() - trace.dc_targets[wire]) > 1e-4)
    throw NotSettledError("trace did not settle to its DC target");
  for (size_t i = v.size() - 1; i >= 1; --i) {
    const double a = v[i - 1] - threshold, b = v[i] - threshold;
    if (a * b <= 0.0 && a != b) {
      const double frac = a / (a - b);
      return trace.times[i - 1] + frac * (trace.times[i] - trace.times[i - 1]);
    }
  }
  throw NoCrossingError("trace never crosses the threshold");
}

Trace superpose(const std::vector<const Trace*>& traces, const std::vector<double>& weights) {
  if (traces.size() != weights.size() || traces.empty())
    throw Error("traces and weights must be nonempty and equal length");
  const Trace& first = *traces.front();
  for (const Trace* t : traces) {
    if (t->times.size() != first.times.size() ||
        t->voltages.size() != first.voltages.size())
      throw GridMismatchError("trace grids differ");
    for (size_t i = 0; i < t->times.size(); ++i)
      if (t->times[i] != first.times[i]) throw GridMismatchError("trace grids differ");
  }
  Trace out;
  out.times = first.times;
  out.voltages.assign(first.voltages.size(), std::vector<double>(first.times.size(), 0.0));
  out.dc_targets.assign(first.voltages.size(), 0.0);
  for (size_t k = 0; k < traces.size(); ++k) {
    const double w = weights[k];
    for (size_t wire = 0; wire < out.voltages.size(); ++wire) {
      const auto& src = traces[k]->voltages[wire];
      auto& dst = out.voltages[wire];
      for (size_t i = 0; i < src.size(); ++i) dst[i] += w * src[i];
      out.dc_targets[wire] += w * traces[k]->dc_targets[wire];
    }
  }
  return out;
}

std::vector<DelayEstimate> worst_delay_sim(const TransitionPattern& pattern, const BusSpec& spec,
                                           const SimOptions& opts) {
  const DeltaVector delta = delta_of(pattern);
  const BusClassification classes = classify_bus(delta);
  std::vector<DelayEstimate> out;
  bool any = false;
  for (int d : delta.deltas) any |= d != 0;
  if (!any) return out;

  Network net(spec);
  Trace trace = simulate(net, pattern, opts);
  for (int k = 0; k < pattern.width(); ++k) {
    if (delta.deltas[k] == 0) continue;
    DelayEstimate est;
    est.wire = k;
    est.source = "simulator";
    est.cls = classes.per_wire[k];
    est.value = extract_crossing(trace, k);
    out.push_back(est);
  }
  return out;
}

StepResponseBank::StepResponseBank(const BusSpec& spec, const SimOptions& opts)
    : wires_(spec.wire_count) {
  Network net(spec);
  unit_.resize(wires_);
  const int half = (wires_ + 1) / 2;
  for (int k = 0; k < half; ++k) {
    TransitionPattern p;
    p.initial.assign(wires_, 0);
    p.final_state.assign(wires_, 0);
    p.final_state[k] = 1;
    unit_[k] = simulate(net, p, opts);
  }
  // Mirror symmetry: the response to a step on wire m-1-k is the
  // spatial mirror of the response to a step on wire k.
  for (int k = half; k < wires_; ++k) {
    const Trace& src = unit_[wires_ - 1 - k];
    Trace t;
    t.times = src.times;
    t.voltages.resize(wires_);
    t.dc_targets.resize(wires_);
    for (int w = 0; w < wires_; ++w) {
      t.voltages[w] = src.voltages[wires_ - 1 - w];
      t.dc_targets[w] = src.dc_targets[wires_ - 1 - w];
    }
    unit_[k] = std::move(t);
  }
  // Early stopping may truncate runs at different points; keep the
  // common prefix so superposition stays on one grid.
  size_t len = unit_[0].times.size();
  for (const Trace& t : unit_) len = std::min(len, t.times.size());
  for (Trace& t : unit_) {
    t.times.resize(len);
    for (auto& v : t.voltages) v.resize(len);
  }
  times_ = unit_[0].times;
}

std::vector<double> StepResponseBank::victim_samples(const std::vector<int>& deltas,
                                                     int victim) const {
  if (static_cast<int>(deltas.size()) != wires_) throw Error("delta width mismatch");
  if (victim < 0 || victim >= wires_) throw Error("victim index out of range");
  const double init = deltas[victim] < 0 ? 1.0 : 0.0;
  std::vector<double> v(times_.size(), init);
  for (int k = 0; k < wires_; ++k) {
    const int d = deltas[k];
    if (d == 0) continue;
    const auto& s = unit_[k].voltages[victim];
    for (size_t i = 0; i < v.size(); ++i) v[i] += d * s[i];
  }
  return v;
}

double StepResponseBank::delay(const std::vector<int>& deltas, int victim,
                               double threshold) const {
  if (deltas[victim] == 0) throw NoTransitionError("victim does not transition");
  const std::vector<double> v = victim_samples(deltas, victim);
  for (size_t i = v.size() - 1; i >= 1; --i) {
    const double a = v[i - 1] - threshold, b = v[i] - threshold;
    if (a * b <= 0.0 && a != b) {
      const double frac = a / (a - b);
      return times_[i - 1] + frac * (times_[i] - times_[i - 1]);
    }
  }
  throw NoCrossingError("superposed trace never crosses the threshold");
}

void write_spice_netlist(const BusSpec& spec, const TransitionPattern& pattern,
                         std::ostream& os) {
  spec.validate();
  pattern.validate();
  if (pattern.width() != spec.wire_count)
    throw InvalidPatternError("pattern width does not match the bus");
  const int m = spec.wire_count;
  const int N = spec.segments;
  const double r_seg = spec.r * spec.length / N;
  const double c_ground = spec.c * spec.length / N;
  const double c_couple = spec.cc * spec.length / N;

  os << "* segmented coupled-bus RC network, " << m << " wires x " << N << " sections\n";
  for (int i = 1; i <= m; ++i) {
    const double v0 = pattern.initial[i - 1];
    const double v1 = pattern.final_state[i - 1];
    os << "V" << i << " W" << i << "SRC 0 PWL(0 " << v0 << " 1e-15 " << v1 << ")\n";
    if (spec.driver_resistance > 0.0)
      os << "RS" << i << " W" << i << "SRC W" << i << "N0 " << spec.driver_resistance << "\n";
    else
      os << "RS" << i << " W" << i << "SRC W" << i << "N0 1e-6\n";
    for (int j = 1; j <= N; ++j) {
      os << "R" << i << "_" << j << " W" << i << "N" << j - 1 << " W" << i << "N" << j << " "
         << r_seg << "\n";
      os << "C" << i << "_" << j << " W" << i << "N" << j << " 0 " << c_ground << "\n";
    }
    if (spec.load_capacitance > 0.0)
      os << "CL" << i << " W" << i << "N" << N << " 0 " << spec.load_capacitance << "\n";
  }
  if (c_couple > 0.0) {
    for (int i = 1; i < m; ++i)
      for (int j = 1; j <= N; ++j)
        os << "CC" << i << "_" << j << " W" << i << "N" << j << " W" << i + 1 << "N" << j << " "
           << c_couple << "\n";
  }
  const double t_end = 60.0 * (1.0 + 3.0 * spec.lambda()) * spec.tau_diffusion();
  os << ".tran " << spec.tau0_intrinsic() / 500.0 << " " << t_end << "\n.end\n";
}

std::string network_summary_json(const BusSpec& spec) {
  spec.validate();
  const bool eliminated = spec.driver_resistance == 0.0;
  nlohmann::json j{
      {"wires", spec.wire_count},
      {"segments", spec.segments},
      {"unknown_nodes",
       spec.wire_count * (eliminated ? spec.segments : spec.segments + 1)},
      {"lambda", spec.lambda()},
      {"resistance_ohm_per_wire", spec.total_resistance()},
      {"ground_capacitance_farad_per_wire", spec.total_capacitance()},
      {"coupling_capacitance_farad_per_pair", spec.cc * spec.length},
      {"driver_resistance_ohm", spec.driver_resistance},
      {"load_capacitance_farad", spec.load_capacitance},
  };
  return j.dump(2);
}

}  // namespace xtalk
