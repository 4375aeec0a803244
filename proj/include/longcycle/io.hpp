#pragma once

#include "longcycle/dgp.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace longcycle {

struct DatedSeries {
  std::vector<std::string> dates;
  Series series;
};

/// Reads a `date,value` CSV with header. Throws DataError naming the line on
/// malformed rows.
DatedSeries read_series_csv(std::istream& in, const std::string& source = "<stream>");
DatedSeries read_series_csv(const std::filesystem::path& path);

/// Writes `date,value` with 17 significant digits; dates default to 1..n.
void write_series_csv(std::ostream& out, const DatedSeries& data);

/// Seasonal period implied by the date labels: 4 for quarterly (YYYYQq or
/// month steps of 3), 12 for monthly, 0 otherwise.
int infer_period(const std::vector<std::string>& dates);

/// Natural log of every value. Throws DataError for non-positive values.
std::vector<double> log_transform(const std::vector<double>& v);

/// printf("%.17g").
std::string format_double(double v);

}  // namespace longcycle
