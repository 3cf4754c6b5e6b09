#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace halfspace {

/// Every number written by the tools goes through here: 12 significant
/// digits, "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double value);

/// Rounds to the 12 significant digits that format_number prints.
double round_significant(double value);

/// Comma-separated file with a header row.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(std::span<const double> values);
  void row(std::initializer_list<double> values) {
    row(std::span<const double>(values.begin(), values.size()));
  }

 private:
  std::ostream& out_;
  std::size_t columns_;
};

/// Whitespace-separated plot data: '# name1 name2 ...' then one line per
/// row. All columns must have equal length; zero rows gives a header-only
/// file.
void write_columns(const std::filesystem::path& path,
                   const std::vector<std::string>& names,
                   const std::vector<std::vector<double>>& columns);

}  // namespace halfspace
