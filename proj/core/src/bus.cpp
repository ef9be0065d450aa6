#include "xtalk/bus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace xtalk {

double BusSpec::tau_diffusion() const {
  return (8.0 / (std::numbers::pi * std::numbers::pi)) * tau0_intrinsic();
}

void BusSpec::validate() const {
  if (wire_count < 1) throw InvalidSpecError("wire_count must be >= 1");
  if (!(r > 0.0)) throw InvalidSpecError("r must be positive");
  if (!(c > 0.0)) throw InvalidSpecError("c must be positive");
  if (!(length > 0.0)) throw InvalidSpecError("length must be positive");
  if (cc < 0.0) throw InvalidSpecError("cc must be nonnegative");
  if (driver_resistance < 0.0) throw InvalidSpecError("driver_resistance must be nonnegative");
  if (load_capacitance < 0.0) throw InvalidSpecError("load_capacitance must be nonnegative");
  if (segments < 1) throw InvalidSpecError("segments must be >= 1");
}

void TransitionPattern::validate() const {
  if (initial.size() != final_state.size())
    throw InvalidPatternError("initial and final lengths differ");
  if (initial.empty()) throw InvalidPatternError("empty pattern");
  auto is_bit = [](int b) { return b == 0 || b == 1; };
  if (!std::all_of(initial.begin(), initial.end(), is_bit) ||
      !std::all_of(final_state.begin(), final_state.end(), is_bit))
    throw InvalidPatternError("pattern entries must be bits");
}

TransitionPattern TransitionPattern::parse(std::string_view text) {
  TransitionPattern p;
  auto sep = text.find('>');
  if (sep != std::string_view::npos) {
    std::string_view a = text.substr(0, sep), b = text.substr(sep + 1);
    if (a.size() != b.size() || a.empty())
      throw InvalidPatternError("bit-string halves must be nonempty and equal length: " +
                                std::string(text));
    for (char ch : a) {
      if (ch != '0' && ch != '1') throw InvalidPatternError("bad bit character in pattern");
      p.initial.push_back(ch - '0');
    }
    for (char ch : b) {
      if (ch != '0' && ch != '1') throw InvalidPatternError("bad bit character in pattern");
      p.final_state.push_back(ch - '0');
    }
    return p;
  }
  if (text.empty()) throw InvalidPatternError("empty pattern string");
  for (char ch : text) {
    switch (ch) {
      case 'u': p.initial.push_back(0); p.final_state.push_back(1); break;
      case 'd': p.initial.push_back(1); p.final_state.push_back(0); break;
      case '-': p.initial.push_back(0); p.final_state.push_back(0); break;
      default: throw InvalidPatternError(std::string("bad direction character '") + ch + "'");
    }
  }
  return p;
}

TransitionPattern TransitionPattern::from_delta(const DeltaVector& delta) {
  TransitionPattern p;
  for (int d : delta.deltas) {
    if (d < -1 || d > 1) throw InvalidPatternError("delta entries must be in {-1,0,1}");
    p.initial.push_back(d < 0 ? 1 : 0);
    p.final_state.push_back(d > 0 ? 1 : 0);
  }
  return p;
}

std::string TransitionPattern::arrows() const {
  std::string s;
  for (size_t i = 0; i < initial.size(); ++i) {
    int d = final_state[i] - initial[i];
    s += d > 0 ? 'u' : d < 0 ? 'd' : '-';
  }
  return s;
}

std::string TransitionPattern::bits() const {
  std::string s;
  for (int b : initial) s += char('0' + b);
  s += '>';
  for (int b : final_state) s += char('0' + b);
  return s;
}

DeltaVector delta_of(const TransitionPattern& pattern) {
  pattern.validate();
  DeltaVector d;
  d.deltas.resize(pattern.initial.size());
  for (size_t i = 0; i < pattern.initial.size(); ++i)
    d.deltas[i] = pattern.final_state[i] - pattern.initial[i];
  return d;
}

CrosstalkClass classify_wire(const DeltaVector& delta, int k) {
  const int m = delta.width();
  if (k < 0 || k >= m) throw Error("wire index out of range");
  const int dk = delta.deltas[k];
  if (dk == 0) return CrosstalkClass(0);
  if (m == 1) return CrosstalkClass(0);
  if (k == 0) return CrosstalkClass(1 - dk * delta.deltas[1]);
  if (k == m - 1) return CrosstalkClass(1 - dk * delta.deltas[m - 2]);
  return CrosstalkClass(2 - dk * (delta.deltas[k - 1] + delta.deltas[k + 1]));
}

BusClassification classify_bus(const DeltaVector& delta) {
  BusClassification out;
  out.per_wire.reserve(delta.width());
  for (int k = 0; k < delta.width(); ++k) {
    out.per_wire.push_back(classify_wire(delta, k));
    out.max = std::max(out.max, out.per_wire.back());
  }
  return out;
}

DelayEstimate baseline_delay(const DeltaVector& delta, int k, const BusSpec& spec) {
  spec.validate();
  DelayEstimate est;
  est.wire = k;
  est.source = "baseline";
  est.cls = classify_wire(delta, k);
  if (delta.deltas[k] == 0) return est;
  est.value = (1.0 + est.cls.index * spec.lambda()) * spec.tau0_baseline();
  return est;
}

TransitionPattern normalize_rising(const TransitionPattern& pattern, int k) {
  DeltaVector d = delta_of(pattern);
  if (k < 0 || k >= d.width()) throw Error("wire index out of range");
  if (d.deltas[k] == 0) throw NoTransitionError("wire does not transition");
  if (d.deltas[k] > 0) return pattern;
  TransitionPattern out = pattern;
  for (auto& b : out.initial) b = 1 - b;
  for (auto& b : out.final_state) b = 1 - b;
  return out;
}

}  // namespace xtalk
