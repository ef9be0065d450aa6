#include "xtalk/models.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace xtalk {

namespace {

constexpr double kPi = std::numbers::pi;

/// Victim waveform from modal initial/final conditions, keeping the
/// slowest spatial term of each mode.
ModalExpansion modal_window(const TransitionPattern& window, int victim, const BusSpec& spec,
                            bool buffered) {
  DeltaVector d = delta_of(window);
  if (d.deltas[victim] == 0) throw NoTransitionError("observed wire does not transition");
  const auto modes = eigenmodes(window.width(), spec.lambda());
  const auto ratios = BufferRatios::from_spec(spec);
  ModalExpansion out;
  out.offset = window.final_state[victim];
  for (const auto& mode : modes) {
    double du = 0.0;
    for (int j = 0; j < window.width(); ++j) du += d.deltas[j] * mode.shape[j];
    const double weight = du * mode.shape[victim] / mode.norm_squared;
    if (std::abs(weight) < 1e-14) continue;
    if (buffered) {
      const auto slm = single_line_mode(mode.eigenvalue, ratios, spec.total_resistance(),
                                        spec.total_capacitance());
      out.terms.emplace_back(weight * slm.gain, slm.time_constant);
    } else {
      out.terms.emplace_back(weight * 4.0 / kPi, mode.eigenvalue * spec.tau_diffusion());
    }
  }
  return out;
}

void require_width(const TransitionPattern& p, int w, const char* what) {
  if (p.width() != w) throw InvalidPatternError(std::string(what) + " window needs " +
                                               std::to_string(w) + " wires");
}

}  // namespace

ModalExpansion three_wire_waveform(const TransitionPattern& pattern, const BusSpec& spec,
                                   bool buffered) {
  require_width(pattern, 3, "three-wire");
  spec.validate();
  return modal_window(pattern, 1, spec, buffered);
}

ModalExpansion five_wire_waveform(const TransitionPattern& pattern, const BusSpec& spec,
                                  bool buffered) {
  require_width(pattern, 5, "five-wire");
  spec.validate();
  DeltaVector d0 = delta_of(pattern);
  if (d0.deltas[2] == 0) throw NoTransitionError("observed wire does not transition");
  const bool falling = d0.deltas[2] < 0;
  const TransitionPattern norm = normalize_rising(pattern, 2);
  const auto& d = delta_of(norm).deltas;

  // Coefficients (in units of the unbuffered 4/pi amplitude) at the
  // three retained rates 1, 1+3lambda/2, 1+3lambda.
  std::array<double, 3> b{0.0, 0.0, 0.0};
  double w2, w4;
  if (d[0] == -1 && d[4] == -1) {
    // Outer pair falls with the rising victim: shielded base pattern
    // with the halved equivalent coupling, corrected by the immediate
    // neighbors' own transitions.
    b[0] = -1.0 / 3.0;
    b[1] = 4.0 / 3.0;
    w2 = d[1];
    w4 = d[3];
  } else {
    // Uniform base pattern; neighbor deviations from all-rising.
    b[0] = 1.0;
    w2 = d[1] - 1.0;
    w4 = d[3] - 1.0;
  }
  b[0] += (w2 + w4) / 3.0;
  b[2] -= (w2 + w4) / 3.0;

  const std::array<double, 3> rates{1.0, 1.0 + 1.5 * spec.lambda(), 1.0 + 3.0 * spec.lambda()};
  const auto ratios = BufferRatios::from_spec(spec);
  ModalExpansion out;
  out.offset = pattern.final_state[2];
  const double sign = falling ? -1.0 : 1.0;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(b[i]) < 1e-14) continue;
    if (buffered) {
      const auto slm = single_line_mode(rates[i], ratios, spec.total_resistance(),
                                        spec.total_capacitance());
      out.terms.emplace_back(sign * b[i] * slm.gain, slm.time_constant);
    } else {
      out.terms.emplace_back(sign * b[i] * 4.0 / kPi, rates[i] * spec.tau_diffusion());
    }
  }
  return out;
}

ModalExpansion boundary_waveform(const TransitionPattern& pattern, const BusSpec& spec,
                                 BoundaryWire which, bool buffered) {
  spec.validate();
  if (which == BoundaryWire::wire1) {
    require_width(pattern, 3, "wire-1");
    return modal_window(pattern, 0, spec, buffered);
  }
  require_width(pattern, 4, "wire-2");
  return modal_window(pattern, 1, spec, buffered);
}

TransitionPattern worst_pattern(CrosstalkClass cls, WindowModel model) {
  static const std::array<const char*, 5> three{"uuu", "uu-", "-u-", "du-", "dud"};
  static const std::array<const char*, 5> five{"duuud", "d-uud", "d-u-d", "u-udu", "ududu"};
  static const std::array<const char*, 3> b1{"uud", "u-d", "udd"};
  static const std::array<const char*, 5> b2{"uuud", "-uud", "duud", "du-u", "dudu"};
  switch (model) {
    case WindowModel::three_wire: return TransitionPattern::parse(three[cls.index]);
    case WindowModel::five_wire: return TransitionPattern::parse(five[cls.index]);
    case WindowModel::boundary1:
      if (cls.index > 2) throw ModelError("edge wire supports classes 0C-2C only");
      return TransitionPattern::parse(b1[cls.index]);
    case WindowModel::boundary2: return TransitionPattern::parse(b2[cls.index]);
  }
  throw ModelError("unknown window model");
}

double table_delay(CrosstalkClass cls, WindowModel model, const BusSpec& spec, bool buffered) {
  spec.validate();
  const double lam = spec.lambda();
  const double tau = spec.tau_diffusion();
  const int i = cls.index;

  if (!buffered) {
    switch (model) {
      case WindowModel::three_wire: {
        const std::array<double, 5> t{std::log(8.0 / kPi) * tau, std::log(16.0 / kPi) * tau,
                                      std::log(16.0 / (3.0 * kPi)) * (1 + 3 * lam) * tau,
                                      std::log(8.0 / kPi) * (1 + 3 * lam) * tau,
                                      std::log(32.0 / (3.0 * kPi)) * (1 + 3 * lam) * tau};
        return t[i];
      }
      case WindowModel::five_wire: {
        const std::array<double, 5> t{0.165 * (1 + 3 * lam) * tau, 0.384 * (1 + 3 * lam) * tau,
                                      std::log(32.0 / (3.0 * kPi)) * (1 + 1.5 * lam) * tau,
                                      std::log(8.0 / kPi) * (1 + 3 * lam) * tau,
                                      std::log(32.0 / (3.0 * kPi)) * (1 + 3 * lam) * tau};
        return t[i];
      }
      case WindowModel::boundary1: {
        if (i > 2) throw ModelError("edge wire supports classes 0C-2C only");
        const std::array<double, 3> t{0.783 * (1 + lam) * tau,
                                      std::log(8.0 / kPi) * (1 + lam) * tau,
                                      1.094 * (1 + lam) * tau};
        return t[i];
      }
      case WindowModel::boundary2: {
        const double s2 = std::sqrt(2.0);
        const std::array<double, 5> t{std::log(8.0 / kPi) * tau, 0.427 * (1 + 2 * lam) * tau,
                                      std::log(8.0 / kPi) * (1 + 2 * lam) * tau,
                                      1.441 * (1 + 2 * lam) * tau,
                                      6.540 * (1 + (2 - s2) * lam) * tau};
        return t[i];
      }
    }
    throw ModelError("unknown window model");
  }

  const auto ratios = BufferRatios::from_spec(spec);
  const double r_tot = spec.total_resistance();
  const double c_tot = spec.total_capacitance();
  switch (model) {
    case WindowModel::three_wire: {
      const auto m1 = single_line_mode(1.0, ratios, r_tot, c_tot);
      const auto m2 = single_line_mode(1.0 + 3.0 * lam, ratios, r_tot, c_tot);
      const std::array<double, 5> t{
          std::log(2.0 * m1.gain) * m1.time_constant, std::log(4.0 * m1.gain) * m1.time_constant,
          std::log(4.0 * m2.gain / 3.0) * m2.time_constant,
          std::log(2.0 * m2.gain) * m2.time_constant,
          std::log(8.0 * m2.gain / 3.0) * m2.time_constant};
      return t[i];
    }
    case WindowModel::five_wire: {
      const auto m2 = single_line_mode(1.0 + 1.5 * lam, ratios, r_tot, c_tot);
      const auto m3 = single_line_mode(1.0 + 3.0 * lam, ratios, r_tot, c_tot);
      // 50% roots of the three-term expansions under the rate-doubling
      // substitution between the two slow modes.
      const double f1 = -std::log(0.25 + 0.5 * std::sqrt(0.25 + 1.5 / m3.gain));
      const double f2 = -std::log(0.125 + 0.5 * std::sqrt(0.0625 + 1.5 / m3.gain));
      const std::array<double, 5> t{f1 * m3.time_constant, f2 * m3.time_constant,
                                    std::log(8.0 * m2.gain / 3.0) * m2.time_constant,
                                    std::log(2.0 * m3.gain) * m3.time_constant,
                                    std::log(8.0 * m3.gain / 3.0) * m3.time_constant};
      return t[i];
    }
    case WindowModel::boundary1:
    case WindowModel::boundary2: {
      const BoundaryWire which =
          model == WindowModel::boundary1 ? BoundaryWire::wire1 : BoundaryWire::wire2;
      const auto wave = boundary_waveform(worst_pattern(cls, model), spec, which, true);
      return crossing_time(wave);
    }
  }
  throw ModelError("unknown window model");
}

namespace {

TransitionPattern subpattern(const TransitionPattern& p, std::initializer_list<int> idx) {
  TransitionPattern out;
  for (int i : idx) {
    out.initial.push_back(p.initial[i]);
    out.final_state.push_back(p.final_state[i]);
  }
  return out;
}

struct WindowPlan {
  WindowModel model;
  TransitionPattern window;
  const char* tag;
};

WindowPlan plan_for_wire(const TransitionPattern& p, int k) {
  const int m = p.width();
  if (m >= 5) {
    if (k == 0) return {WindowModel::boundary1, subpattern(p, {0, 1, 2}), "boundary1"};
    if (k == 1) return {WindowModel::boundary2, subpattern(p, {0, 1, 2, 3}), "boundary2"};
    if (k == m - 2)
      return {WindowModel::boundary2, subpattern(p, {m - 1, m - 2, m - 3, m - 4}), "boundary2"};
    if (k == m - 1)
      return {WindowModel::boundary1, subpattern(p, {m - 1, m - 2, m - 3}), "boundary1"};
    return {WindowModel::five_wire, subpattern(p, {k - 2, k - 1, k, k + 1, k + 2}), "five-wire"};
  }
  if (m == 4) {
    if (k == 0) return {WindowModel::boundary1, subpattern(p, {0, 1, 2}), "boundary1"};
    if (k == 1) return {WindowModel::boundary2, subpattern(p, {0, 1, 2, 3}), "boundary2"};
    if (k == 2) return {WindowModel::boundary2, subpattern(p, {3, 2, 1, 0}), "boundary2"};
    return {WindowModel::boundary1, subpattern(p, {3, 2, 1}), "boundary1"};
  }
  if (m == 3) {
    if (k == 0) return {WindowModel::boundary1, subpattern(p, {0, 1, 2}), "boundary1"};
    if (k == 1) return {WindowModel::three_wire, subpattern(p, {0, 1, 2}), "three-wire"};
    return {WindowModel::boundary1, subpattern(p, {2, 1, 0}), "boundary1"};
  }
  // Two-wire bus: pad with a steady far wire and use the edge model.
  WindowPlan plan{WindowModel::boundary1,
                  k == 0 ? subpattern(p, {0, 1}) : subpattern(p, {1, 0}), "boundary1"};
  plan.window.initial.push_back(0);
  plan.window.final_state.push_back(0);
  return plan;
}

}  // namespace

std::vector<DelayEstimate> bus_delay_profile(const TransitionPattern& pattern,
                                             const BusSpec& spec, const ProfileOptions& opts) {
  pattern.validate();
  spec.validate();
  const DeltaVector delta = delta_of(pattern);
  const BusClassification classes = classify_bus(delta);
  const int m = pattern.width();

  std::vector<DelayEstimate> out;
  for (int k = 0; k < m; ++k) {
    if (delta.deltas[k] == 0) continue;
    DelayEstimate est;
    est.wire = k;
    est.cls = classes.per_wire[k];

    if (m == 1) {
      est.source = "single-line";
      if (opts.paper_table) {
        if (opts.buffered) {
          const auto slm = single_line_mode(1.0, BufferRatios::from_spec(spec),
                                            spec.total_resistance(), spec.total_capacitance());
          est.value = std::log(2.0 * slm.gain) * slm.time_constant;
        } else {
          est.value = std::log(8.0 / kPi) * spec.tau_diffusion();
        }
      } else {
        ModalExpansion wave = modal_window(pattern, 0, spec, opts.buffered);
        est.value = crossing_time(wave);
      }
      out.push_back(est);
      continue;
    }

    WindowPlan plan = plan_for_wire(pattern, k);
    est.source = plan.tag;
    if (opts.paper_table) {
      est.value = table_delay(est.cls, plan.model, spec, opts.buffered);
    } else {
      ModalExpansion wave;
      switch (plan.model) {
        case WindowModel::three_wire:
          wave = three_wire_waveform(plan.window, spec, opts.buffered);
          break;
        case WindowModel::five_wire:
          wave = five_wire_waveform(plan.window, spec, opts.buffered);
          break;
        case WindowModel::boundary1:
          wave = boundary_waveform(plan.window, spec, BoundaryWire::wire1, opts.buffered);
          break;
        case WindowModel::boundary2:
          wave = boundary_waveform(plan.window, spec, BoundaryWire::wire2, opts.buffered);
          break;
      }
      est.value = crossing_time(wave);
    }
    out.push_back(est);
  }
  return out;
}

}  // namespace xtalk
