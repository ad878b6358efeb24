#pragma once

#include <string>
#include <vector>

// CSV serialization used by the experiment runners: comma separator, '.'
// decimal point, LF line endings, one header row, and shortest round-trip
// number formatting so fixture files are bit-exact across platforms.

namespace qcost::cli {

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;  ///< each row sized like header
};

/// Render with LF endings and a trailing newline.
std::string to_csv(const Table& table);

}  // namespace qcost::cli
