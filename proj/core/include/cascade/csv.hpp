#pragma once

// Deterministic CSV emission. Fixed schemas, '.' decimal separator, 12
// significant digits for figure data, '\n' line endings, no locale and no
// clock anywhere, so repeated runs produce byte-identical files.

#include <filesystem>
#include <string>
#include <vector>

#include "cascade/scan.hpp"
#include "cascade/transport.hpp"
#include "cascade/types.hpp"

namespace cascade {

// Shortest representation that round-trips (rate tables, manifests).
std::string format_double(double value);
// Fixed 12 significant digits for figure data; NaN prints as "nan".
std::string format_double_12(double value);

// columns: time,p1,...,pN
void write_populations_csv(const std::filesystem::path& path,
                           const std::vector<double>& times,
                           const std::vector<RealVector>& populations);

// columns: time,P,E_pumped,E_unpumped,chi
void write_efficiency_csv(const std::filesystem::path& path,
                          const EfficiencyTrace& trace);

// columns: param,chi_stationary,warnings (warnings ';'-joined per point)
void write_scan_csv(const std::filesystem::path& path, const ScanResult& result);

// columns: direction,chi_stationary,warnings
void write_bias_compare_csv(const std::filesystem::path& path,
                            const std::vector<std::string>& directions,
                            const std::vector<double>& chi,
                            const std::vector<std::vector<std::string>>& warnings);

}  // namespace cascade
