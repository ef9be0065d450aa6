#include "xtalk/report.hpp"

#include <algorithm>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

namespace xtalk {

std::string ReportTable::to_text() const {
  std::vector<size_t> width(header.size(), 0);
  for (size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& row : rows)
    for (size_t i = 0; i < row.size() && i < width.size(); ++i)
      width[i] = std::max(width[i], row[i].size());

  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) os << "  ";
      os << cells[i];
      for (size_t pad = cells[i].size(); pad < width[i] && i + 1 < cells.size(); ++pad)
        os << ' ';
    }
    os << '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  return os.str();
}

std::string ReportTable::to_csv() const {
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
      if (!quote) {
        os << cells[i];
      } else {
        os << '"';
        for (char ch : cells[i]) {
          if (ch == '"') os << '"';
          os << ch;
        }
        os << '"';
      }
    }
    os << '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  return os.str();
}

std::string ReportTable::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (size_t i = 0; i < header.size() && i < row.size(); ++i) obj[header[i]] = row[i];
    arr.push_back(obj);
  }
  return arr.dump(2);
}

std::string ReportTable::render(const std::string& format) const {
  if (format == "table") return to_text();
  if (format == "csv") return to_csv();
  if (format == "json") return to_json();
  throw Error("unknown output format: " + format);
}

std::string format_ps(double seconds) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", seconds * 1e12);
  return buf;
}

std::string format_percent(double fraction) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f%%", fraction * 100.0);
  return buf;
}

void write_trace_csv(const Trace& trace, std::ostream& os) {
  os << "t_seconds";
  for (size_t w = 0; w < trace.voltages.size(); ++w) os << ",wire" << w + 1;
  os << '\n';
  char buf[64];
  for (size_t i = 0; i < trace.times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.9e", trace.times[i]);
    os << buf;
    for (const auto& v : trace.voltages) {
      std::snprintf(buf, sizeof buf, "%.9e", v[i]);
      os << ',' << buf;
    }
    os << '\n';
  }
}

void write_waveform_csv(const ModalExpansion& wave, double t_end, int samples,
                        std::ostream& os) {
  if (samples < 2) throw Error("waveform export needs at least two samples");
  os << "t_seconds,v_normalized\n";
  char buf[64];
  for (int i = 0; i < samples; ++i) {
    const double t = t_end * i / (samples - 1);
    std::snprintf(buf, sizeof buf, "%.9e,%.9e", t, wave.evaluate(t));
    os << buf << '\n';
  }
}

}  // namespace xtalk
