#pragma once

#include <vector>

#include "xtalk/bus.hpp"
#include "xtalk/modal.hpp"

namespace xtalk {

enum class WindowModel { three_wire, five_wire, boundary1, boundary2 };

enum class BoundaryWire { wire1, wire2 };

/// Middle-wire waveform of a three-wire window. Wire 2 must transition.
ModalExpansion three_wire_waveform(const TransitionPattern& pattern, const BusSpec& spec,
                                   bool buffered);

/// Middle-wire waveform of a five-wire window, assembled from the
/// shielded reducible pattern plus single-transition corrections on the
/// immediate neighbors. Far-wire deviations from the base pattern are
/// neglected. Wire 3 must transition.
ModalExpansion five_wire_waveform(const TransitionPattern& pattern, const BusSpec& spec,
                                  bool buffered);

/// Edge-wire waveform: wire-1 model over a 3-wire window (victim first),
/// wire-2 model over a 4-wire window (victim second).
ModalExpansion boundary_waveform(const TransitionPattern& pattern, const BusSpec& spec,
                                 BoundaryWire which, bool buffered);

/// Worst transition pattern of a class under a window model, victim rising.
TransitionPattern worst_pattern(CrosstalkClass cls, WindowModel model);

/// Printed closed-form delay for a class under a window model. The scalar
/// coefficients bake in large-coupling approximations; numeric
/// crossing_time on the corresponding waveform is the default elsewhere.
/// Buffered boundary rows have no closed scalar and fall back to the
/// numeric crossing of the substituted worst-pattern expansion.
double table_delay(CrosstalkClass cls, WindowModel model, const BusSpec& spec, bool buffered);

struct ProfileOptions {
  bool buffered = true;
  bool paper_table = false;  // printed scalar formulas instead of root-finding
};

/// One estimate per transitioning wire: interior wires through the
/// five-wire window, the outer two wire pairs through the edge models,
/// narrow buses through the three-wire/edge fallbacks.
std::vector<DelayEstimate> bus_delay_profile(const TransitionPattern& pattern,
                                             const BusSpec& spec,
                                             const ProfileOptions& opts = {});

}  // namespace xtalk
