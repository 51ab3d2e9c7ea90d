#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace blockmax {

// Minimal CSV support: header row required, numeric fields parsed
// locale-independently, parse errors report the line number.

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

CsvTable read_csv(std::istream& in);

// series files: a "value" column, rows in time order
std::vector<double> read_value_series(std::istream& in);

// daily files: columns (season_index, day_index, value), both indices 1-based
struct DailyData {
  std::size_t seasons = 0;
  std::size_t r = 0;
  std::vector<double> values;  // season-major
};
DailyData read_daily_csv(std::istream& in);

// covariate files: columns (season_index, x), 1-based season index
std::vector<double> read_covariate_csv(std::istream& in);

}  // namespace blockmax
