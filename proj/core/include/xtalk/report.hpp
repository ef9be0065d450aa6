#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "xtalk/modal.hpp"
#include "xtalk/simulator.hpp"

namespace xtalk {

/// A rectangular report with a fixed column order; renders identically
/// for identical inputs.
struct ReportTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_text() const;
  std::string to_csv() const;
  /// Array of objects keyed by the header names.
  std::string to_json() const;
  std::string render(const std::string& format) const;
};

/// Seconds to picoseconds with two decimals, the table convention.
std::string format_ps(double seconds);
std::string format_percent(double fraction);

void write_trace_csv(const Trace& trace, std::ostream& os);
void write_waveform_csv(const ModalExpansion& wave, double t_end, int samples,
                        std::ostream& os);

}  // namespace xtalk
