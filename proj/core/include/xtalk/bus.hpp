#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "xtalk/errors.hpp"

namespace xtalk {

/// Electrical and structural description of a coupled bus.
/// Units are SI throughout (ohm, farad, meter, second); report layers
/// convert to ps / fF / mm for display.
struct BusSpec {
  int wire_count = 1;
  double r = 0.0;       // series resistance per meter
  double c = 0.0;       // ground capacitance per meter
  double cc = 0.0;      // coupling capacitance per meter
  double length = 0.0;  // wire length in meters
  double driver_resistance = 0.0;
  double load_capacitance = 0.0;
  int segments = 100;

  double lambda() const { return cc / c; }
  double total_resistance() const { return r * length; }
  double total_capacitance() const { return c * length; }

  /// Distributed single-wire constant r*c*L^2/2.
  double tau0_intrinsic() const { return 0.5 * r * c * length * length; }

  /// Dominant-mode time constant (8/pi^2) * tau0_intrinsic.
  double tau_diffusion() const;

  /// Lumped driver+wire delay (R_S + R/2)*C used by the baseline model.
  double tau0_baseline() const {
    return (driver_resistance + 0.5 * total_resistance()) * total_capacitance();
  }

  void validate() const;
};

/// Per-wire transition environment category; the delay factor is (1 + index*lambda).
struct CrosstalkClass {
  int index = 0;

  CrosstalkClass() = default;
  explicit CrosstalkClass(int i) : index(i) {
    if (i < 0 || i > 4) throw ModelError("crosstalk class index out of range: " + std::to_string(i));
  }

  std::string label() const { return std::to_string(index) + "C"; }
  auto operator<=>(const CrosstalkClass&) const = default;
};

struct DeltaVector;

/// Initial and final logic states of every wire.
struct TransitionPattern {
  std::vector<int> initial;
  std::vector<int> final_state;

  int width() const { return static_cast<int>(initial.size()); }
  void validate() const;

  /// Accepts either direction strings over {u,d,-} ("duud") or explicit
  /// bit strings "101>010".
  static TransitionPattern parse(std::string_view text);

  static TransitionPattern from_delta(const DeltaVector& delta);

  /// Direction string: 'u' rising, 'd' falling, '-' steady.
  std::string arrows() const;
  /// Explicit "initial>final" bit-string form.
  std::string bits() const;
};

/// Per-wire transition directions, entries in {-1, 0, +1}.
struct DeltaVector {
  std::vector<int> deltas;

  int width() const { return static_cast<int>(deltas.size()); }
};

/// Delay of one wire under one evaluator.
struct DelayEstimate {
  int wire = 0;  // 0-based
  double value = 0.0;
  std::string source;
  CrosstalkClass cls;
};

DeltaVector delta_of(const TransitionPattern& pattern);

/// k is 0-based. Class of a steady wire is 0C; internal wires use
/// 2 - d_k*(d_{k-1}+d_{k+1}), boundary wires 1 - d_k*d_neighbor.
CrosstalkClass classify_wire(const DeltaVector& delta, int k);

struct BusClassification {
  std::vector<CrosstalkClass> per_wire;
  CrosstalkClass max;
};

BusClassification classify_bus(const DeltaVector& delta);

/// Lumped prior-work estimate (1 + class*lambda) * tau0_baseline.
DelayEstimate baseline_delay(const DeltaVector& delta, int k, const BusSpec& spec);

/// Complements every bit when wire k falls, so that wire k rises.
/// Class of every wire is preserved.
TransitionPattern normalize_rising(const TransitionPattern& pattern, int k);

}  // namespace xtalk
