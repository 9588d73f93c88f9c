#pragma once

// Plain-CSV rate tables, the ingestion path for externally computed rates.
//
// Format (UTF-8): a header line
//   # N=<int> mode=<uni|rec> gamma_in=<float> gamma_out=<float>
// followed by rows `i,j,gamma,g` with 1-based indices. Off-diagonal rows may
// be omitted (the entries are zero); every diagonal entry must be present
// with g = 0. The writer emits rows sorted by (i, j), skips zero
// off-diagonals, and prints shortest-round-trip numbers, so save -> load is
// exact and load -> save reproduces a canonical file byte for byte.
//
// A `uni` table's bias is inferred from which triangle is populated: strictly
// upper (or no off-diagonals at all) reads as downstream, strictly lower as
// upstream, both at once is an error.

#include <filesystem>

#include "cascade/rates.hpp"

namespace cascade {

RateSet load_rate_table(const std::filesystem::path& path);
void save_rate_table(const RateSet& rates, const std::filesystem::path& path);

}  // namespace cascade
