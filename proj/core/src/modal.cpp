#include "xtalk/modal.hpp"

#include <cmath>
#include <numbers>

namespace xtalk {

double ModalExpansion::evaluate(double t) const {
  double v = offset;
  for (const auto& [a, tau] : terms) v -= a * std::exp(-t / tau);
  return v;
}

double ModalExpansion::max_time_constant() const {
  double mx = 0.0;
  for (const auto& [a, tau] : terms) mx = std::max(mx, tau);
  return mx;
}

std::vector<Eigenmode> eigenmodes(int m, double lambda) {
  if (m < 1) throw ModelError("eigenmodes: wire count must be >= 1");
  if (lambda < 0.0) throw ModelError("eigenmodes: lambda must be >= 0");
  const double pi = std::numbers::pi;
  std::vector<Eigenmode> modes;
  modes.reserve(m);
  for (int k = 0; k < m; ++k) {
    Eigenmode mode;
    mode.eigenvalue = 1.0 + 2.0 * lambda * (1.0 - std::cos(k * pi / m));
    mode.shape.resize(m);
    const double scale = std::cos(k * pi / (2.0 * m));
    for (int j = 0; j < m; ++j)
      mode.shape[j] = std::cos(k * pi * (2 * j + 1) / (2.0 * m)) / scale;
    for (double s : mode.shape) mode.norm_squared += s * s;
    modes.push_back(std::move(mode));
  }
  return modes;
}

BufferRatios BufferRatios::from_spec(const BusSpec& spec) {
  BufferRatios r;
  r.r_t = spec.driver_resistance / spec.total_resistance();
  r.c_t = spec.load_capacitance / spec.total_capacitance();
  return r;
}

SingleLineMode single_line_mode(double p, const BufferRatios& ratios, double total_r,
                                double total_c) {
  if (p <= 0.0) throw ModelError("single_line_mode: eigenvalue must be positive");
  const double pi = std::numbers::pi;
  const double ct_scaled = ratios.c_t / p;  // C_L / (p C)
  SingleLineMode out;
  out.gain = 1.01 * (ratios.r_t + ct_scaled + 1.0) / (ratios.r_t + ct_scaled + pi / 4.0);
  out.time_constant = p * total_r * total_c *
                      (ratios.r_t * ct_scaled + ratios.r_t + ct_scaled + 4.0 / (pi * pi)) / 1.04;
  return out;
}

double crossing_time(const ModalExpansion& wave, double threshold) {
  if (wave.terms.empty()) throw NoCrossingError("constant waveform never crosses");
  const double t_hi = 50.0 * wave.max_time_constant();
  const int scan = 20000;
  double prev_t = 0.0;
  double prev_v = wave.evaluate(0.0);
  double lo = -1.0, hi = -1.0;
  for (int i = 1; i <= scan; ++i) {
    const double t = t_hi * i / scan;
    const double v = wave.evaluate(t);
    if ((prev_v - threshold) * (v - threshold) <= 0.0 && prev_v != v) {
      lo = prev_t;
      hi = t;
    }
    prev_t = t;
    prev_v = v;
  }
  if (lo < 0.0) throw NoCrossingError("threshold not crossed inside bracket");
  double flo = wave.evaluate(lo) - threshold;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = wave.evaluate(mid) - threshold;
    if (flo * fmid <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fmid;
    }
    if (hi - lo <= 1e-9 * hi) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace xtalk
