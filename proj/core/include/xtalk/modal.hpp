#pragma once

#include <vector>

#include "xtalk/bus.hpp"

namespace xtalk {

/// Victim waveform as offset minus a finite sum of decaying exponentials:
///   V(t) = offset - sum_i amplitude_i * exp(-t / time_constant_i)
struct ModalExpansion {
  double offset = 0.0;
  std::vector<std::pair<double, double>> terms;  // (amplitude, time constant)

  double evaluate(double t) const;
  double max_time_constant() const;
};

/// One decoupled mode of the normalized capacitance matrix C/c.
struct Eigenmode {
  double eigenvalue = 0.0;        // p = 1 + 2*lambda*(1 - cos(k*pi/m))
  std::vector<double> shape;      // scaled so shape[0] = 1
  double norm_squared = 0.0;
};

/// Closed-form modes of the tridiagonal matrix with diagonal
/// (1+lambda, 1+2lambda, ..., 1+2lambda, 1+lambda) and off-diagonal
/// -lambda, in ascending eigenvalue order.
std::vector<Eigenmode> eigenmodes(int m, double lambda);

/// Driver/load ratios entering the buffered single-mode response.
struct BufferRatios {
  double r_t = 0.0;  // R_S / R
  double c_t = 0.0;  // C_L / C

  static BufferRatios from_spec(const BusSpec& spec);
};

struct SingleLineMode {
  double gain = 0.0;           // amplitude factor B
  double time_constant = 0.0;  // seconds
};

/// Amplitude and time constant of one buffered mode at eigenvalue p:
///   B = 1.01 (R_T + C_T' + 1) / (R_T + C_T' + pi/4)
///   tau = p R C (R_T C_T' + R_T + C_T' + (2/pi)^2) / 1.04
/// with C_T' = C_L / (p C).
SingleLineMode single_line_mode(double p, const BufferRatios& ratios, double total_r,
                                double total_c);

/// Largest root of V(t) = threshold on [0, 50 * max tau], bisected to
/// 1e-9 relative tolerance. Throws NoCrossingError when the waveform
/// never reaches the threshold inside the bracket.
double crossing_time(const ModalExpansion& wave, double threshold = 0.5);

}  // namespace xtalk
