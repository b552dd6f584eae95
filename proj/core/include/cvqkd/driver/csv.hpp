#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cvqkd/driver/run.hpp"

namespace cvqkd::driver {

// Fixed column set, stamped per row in the trailing "schema" column. Wall
// time is opt-in because it breaks byte-level reproducibility of the file.
inline constexpr int kCsvSchema = 1;

std::string csv_header(bool with_timings = false);
std::string csv_row(const ResultRow& row, bool with_timings = false);
std::string csv_string(const std::vector<ResultRow>& rows,
                       bool with_timings = false);
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows,
               bool with_timings = false);

}  // namespace cvqkd::driver
