#include "blockmax/csvio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <stdexcept>

namespace blockmax {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    std::string field = pos == std::string::npos ? line.substr(start)
                                                 : line.substr(start, pos - start);
    // trim spaces and a trailing CR
    while (!field.empty() && (field.back() == ' ' || field.back() == '\r' || field.back() == '\t'))
      field.pop_back();
    std::size_t b = 0;
    while (b < field.size() && (field[b] == ' ' || field[b] == '\t')) ++b;
    fields.push_back(field.substr(b));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return fields;
}

double parse_number(const std::string& field, std::size_t line_no) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw std::runtime_error("csv line " + std::to_string(line_no) +
                             ": cannot parse number from '" + field + "'");
  }
  return value;
}

std::size_t column_index(const CsvTable& t, const std::string& name) {
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
  };
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (lower(t.header[i]) == name) return i;
  }
  throw std::runtime_error("csv: required column '" + name + "' not found");
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty input (header required)");
  ++line_no;
  table.header = split_line(line);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_line(line);
    if (fields.size() != table.header.size()) {
      throw std::runtime_error("csv line " + std::to_string(line_no) +
                               ": expected " + std::to_string(table.header.size()) +
                               " fields, got " + std::to_string(fields.size()));
    }
    std::vector<double> row(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) row[i] = parse_number(fields[i], line_no);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<double> read_value_series(std::istream& in) {
  const CsvTable table = read_csv(in);
  const std::size_t col = column_index(table, "value");
  std::vector<double> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) out.push_back(row[col]);
  return out;
}

DailyData read_daily_csv(std::istream& in) {
  const CsvTable table = read_csv(in);
  const std::size_t cs = column_index(table, "season_index");
  const std::size_t cd = column_index(table, "day_index");
  const std::size_t cv = column_index(table, "value");
  std::size_t seasons = 0, r = 0;
  for (const auto& row : table.rows) {
    seasons = std::max(seasons, static_cast<std::size_t>(row[cs]));
    r = std::max(r, static_cast<std::size_t>(row[cd]));
  }
  if (seasons == 0 || r == 0 || table.rows.size() != seasons * r) {
    throw std::runtime_error("daily csv: need a complete seasons x days grid of rows");
  }
  DailyData data;
  data.seasons = seasons;
  data.r = r;
  data.values.assign(seasons * r, std::nan(""));
  for (const auto& row : table.rows) {
    const std::size_t s = static_cast<std::size_t>(row[cs]);
    const std::size_t d = static_cast<std::size_t>(row[cd]);
    if (s < 1 || s > seasons || d < 1 || d > r) {
      throw std::runtime_error("daily csv: season_index/day_index out of range");
    }
    data.values[(s - 1) * r + (d - 1)] = row[cv];
  }
  for (double v : data.values) {
    if (std::isnan(v)) throw std::runtime_error("daily csv: missing (season, day) entries");
  }
  return data;
}

std::vector<double> read_covariate_csv(std::istream& in) {
  const CsvTable table = read_csv(in);
  const std::size_t cs = column_index(table, "season_index");
  const std::size_t cx = column_index(table, "x");
  std::size_t seasons = 0;
  for (const auto& row : table.rows) {
    seasons = std::max(seasons, static_cast<std::size_t>(row[cs]));
  }
  if (seasons == 0 || table.rows.size() != seasons) {
    throw std::runtime_error("covariate csv: need one row per season");
  }
  std::vector<double> x(seasons, std::nan(""));
  for (const auto& row : table.rows) {
    x[static_cast<std::size_t>(row[cs]) - 1] = row[cx];
  }
  for (double v : x) {
    if (std::isnan(v)) throw std::runtime_error("covariate csv: missing season entries");
  }
  return x;
}

}  // namespace blockmax
