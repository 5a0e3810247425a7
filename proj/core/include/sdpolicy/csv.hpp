#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sdpolicy::io {

/// Numeric table with a header row. All data cells must parse as doubles.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t cols() const { return header.size(); }
  /// Column index for a header name; throws if absent.
  std::size_t column(const std::string& name) const;
};

Table read_csv(const std::string& path);
Table parse_csv(const std::string& text);

/// Shortest round-trip decimal formatting (std::to_chars), so that writing
/// the same doubles always produces identical bytes.
std::string format_double(double v);

void write_csv(std::ostream& os, const Table& table);
void write_csv_file(const std::string& path, const Table& table);

}  // namespace sdpolicy::io
