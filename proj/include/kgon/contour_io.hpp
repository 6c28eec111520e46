#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <kgon/geometry.hpp>

namespace kgon::io {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

double parse_double(const std::string& text);

/// Reads "x,y" or whitespace-separated "x y" lines; blank lines and lines starting with '#' are skipped.
/// Throws Error{ParseError} with the offending line number.
std::vector<Point> read_points(std::istream& in);
std::vector<Point> read_points_file(const std::filesystem::path& path);

void write_points(std::ostream& out, std::span<const Point> points);
void write_points_file(const std::filesystem::path& path, std::span<const Point> points);

/// Comma-separated table with a header row. Quoting is not supported.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws Error{ParseError} if absent.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::filesystem::path& path);
void write_csv(std::ostream& out, const CsvTable& table);

}  // namespace kgon::io
