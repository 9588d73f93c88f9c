#include "cascade/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace cascade {

namespace {

std::string chars_to_string(double value, std::chars_format fmt, int precision) {
  char buf[64];
  std::to_chars_result res =
      precision < 0 ? std::to_chars(buf, buf + sizeof buf, value, fmt)
                    : std::to_chars(buf, buf + sizeof buf, value, fmt, precision);
  if (res.ec != std::errc{})
    throw std::runtime_error("number formatting failed");
  return std::string(buf, res.ptr);
}

// Minimal quoting: only fields containing a comma, quote, or newline get
// wrapped, so numeric columns stay clean.
std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
  std::string quoted = "\"";
  for (char c : raw) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string join_warnings(const std::vector<std::string>& warnings) {
  std::string joined;
  for (size_t k = 0; k < warnings.size(); ++k) {
    if (k) joined += ';';
    joined += warnings[k];
  }
  return joined;
}

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void close_csv(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return chars_to_string(value, std::chars_format::general, -1);
}

std::string format_double_12(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return chars_to_string(value, std::chars_format::general, 12);
}

void write_populations_csv(const std::filesystem::path& path,
                           const std::vector<double>& times,
                           const std::vector<RealVector>& populations) {
  if (times.size() != populations.size())
    throw std::invalid_argument("time grid and population rows disagree in length");
  if (times.empty()) throw std::invalid_argument("nothing to write: empty trajectory");

  const Eigen::Index n = populations.front().size();
  std::ofstream out = open_csv(path);
  out << "time";
  for (Eigen::Index i = 1; i <= n; ++i) out << ",p" << i;
  out << '\n';
  for (size_t k = 0; k < times.size(); ++k) {
    if (populations[k].size() != n)
      throw std::invalid_argument("population rows disagree in atom count");
    out << format_double_12(times[k]);
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_double_12(populations[k](i));
    out << '\n';
  }
  close_csv(out, path);
}

void write_efficiency_csv(const std::filesystem::path& path, const EfficiencyTrace& trace) {
  const size_t rows = trace.times.size();
  if (trace.pump.size() != rows || trace.extraction_pumped.size() != rows ||
      trace.extraction_unpumped.size() != rows || trace.chi.size() != rows)
    throw std::invalid_argument("efficiency trace columns disagree in length");

  std::ofstream out = open_csv(path);
  out << "time,P,E_pumped,E_unpumped,chi\n";
  for (size_t k = 0; k < rows; ++k) {
    out << format_double_12(trace.times[k]) << ',' << format_double_12(trace.pump[k]) << ','
        << format_double_12(trace.extraction_pumped[k]) << ','
        << format_double_12(trace.extraction_unpumped[k]) << ','
        << format_double_12(trace.chi[k]) << '\n';
  }
  close_csv(out, path);
}

void write_scan_csv(const std::filesystem::path& path, const ScanResult& result) {
  const size_t rows = result.values.size();
  if (result.chi.size() != rows || result.warnings.size() != rows)
    throw std::invalid_argument("scan result columns disagree in length");

  std::ofstream out = open_csv(path);
  out << csv_field(result.parameter) << ",chi_stationary,warnings\n";
  for (size_t k = 0; k < rows; ++k) {
    out << format_double_12(result.values[k]) << ',' << format_double_12(result.chi[k])
        << ',' << csv_field(join_warnings(result.warnings[k])) << '\n';
  }
  close_csv(out, path);
}

void write_bias_compare_csv(const std::filesystem::path& path,
                            const std::vector<std::string>& directions,
                            const std::vector<double>& chi,
                            const std::vector<std::vector<std::string>>& warnings) {
  const size_t rows = directions.size();
  if (chi.size() != rows || warnings.size() != rows)
    throw std::invalid_argument("bias comparison columns disagree in length");

  std::ofstream out = open_csv(path);
  out << "direction,chi_stationary,warnings\n";
  for (size_t k = 0; k < rows; ++k) {
    out << csv_field(directions[k]) << ',' << format_double_12(chi[k]) << ','
        << csv_field(join_warnings(warnings[k])) << '\n';
  }
  close_csv(out, path);
}

}  // namespace cascade
