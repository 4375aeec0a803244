#include "longcycle/io.hpp"

#include "longcycle/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <optional>
#include <regex>

namespace longcycle {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Months since year 0 for "YYYY-MM[-DD]" labels.
std::optional<int> month_index(const std::string& date) {
  static const std::regex ymd(R"((\d{4})-(\d{1,2})(-\d{1,2})?)");
  std::smatch m;
  if (!std::regex_match(date, m, ymd)) return std::nullopt;
  return std::stoi(m[1]) * 12 + std::stoi(m[2]) - 1;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

DatedSeries read_series_csv(std::istream& in, const std::string& source) {
  DatedSeries out;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (t != "date,value") {
        throw DataError(source + ":" + std::to_string(lineno) + ": expected header 'date,value'");
      }
      continue;
    }
    const auto comma = t.find(',');
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos) {
      throw DataError(source + ":" + std::to_string(lineno) + ": expected two fields");
    }
    const std::string date = trim(t.substr(0, comma));
    const std::string value = trim(t.substr(comma + 1));
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0' || !std::isfinite(v)) {
      throw DataError(source + ":" + std::to_string(lineno) + ": bad value '" + value + "'");
    }
    out.dates.push_back(date);
    out.series.values.push_back(v);
  }
  if (!header_seen) throw DataError(source + ": empty file");
  return out;
}

DatedSeries read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  auto out = read_series_csv(in, path.string());
  out.series.name = path.stem().string();
  return out;
}

void write_series_csv(std::ostream& out, const DatedSeries& data) {
  out << "date,value\n";
  const auto& v = data.series.values;
  for (std::size_t t = 0; t < v.size(); ++t) {
    const std::string date = t < data.dates.size() ? data.dates[t] : std::to_string(t + 1);
    out << date << ',' << format_double(v[t]) << '\n';
  }
}

int infer_period(const std::vector<std::string>& dates) {
  if (dates.size() < 2) return 0;
  static const std::regex quarter(R"(\d{4}[-:]?[Qq][1-4])");
  if (std::regex_match(dates[0], quarter) && std::regex_match(dates[1], quarter)) return 4;
  const auto a = month_index(dates[0]);
  const auto b = month_index(dates[1]);
  if (!a || !b) return 0;
  switch (*b - *a) {
    case 3: return 4;
    case 1: return 12;
    default: return 0;
  }
}

std::vector<double> log_transform(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      throw DataError("log transform needs positive values (entry " + std::to_string(i + 1) + ")");
    }
    out[i] = std::log(v[i]);
  }
  return out;
}

}  // namespace longcycle
