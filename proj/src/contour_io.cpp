#include <kgon/contour_io.hpp>

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <kgon/error.hpp>

namespace kgon::io {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(trim(field));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return in;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw Error(ErrorCode::ParseError, "cannot format number");
  return std::string(buf.data(), end);
}

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  double value = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || t.empty()) {
    throw Error(ErrorCode::ParseError, "not a number: '" + t + "'");
  }
  return value;
}

std::vector<Point> read_points(std::istream& in) {
  std::vector<Point> points;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<std::string> fields;
    if (t.find(',') != std::string::npos) {
      fields = split(t, ',');
    } else {
      std::istringstream ss(t);
      for (std::string f; ss >> f;) fields.push_back(f);
    }
    if (fields.size() != 2) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(lineno) + ": expected 'x,y' or 'x y', got '" + t + "'");
    }
    try {
      points.emplace_back(parse_double(fields[0]), parse_double(fields[1]));
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + e.message());
    }
  }
  return points;
}

std::vector<Point> read_points_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return read_points(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

void write_points(std::ostream& out, std::span<const Point> points) {
  for (const Point& p : points) out << format_double(p.real()) << ',' << format_double(p.imag()) << '\n';
}

void write_points_file(const std::filesystem::path& path, std::span<const Point> points) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  write_points(out, points);
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(ErrorCode::ParseError, "missing CSV column '" + name + "'");
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto fields = split(t, ',');
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw Error(ErrorCode::ParseError, "CSV row has " + std::to_string(fields.size()) +
                                             " fields, header has " +
                                             std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (!have_header) throw Error(ErrorCode::ParseError, "empty CSV");
  return table;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return read_csv(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

void write_csv(std::ostream& out, const CsvTable& table) {
  auto write_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  };
  write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
}

}  // namespace kgon::io
