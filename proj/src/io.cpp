#include "selectboost/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>

#include "selectboost/error.hpp"

namespace selectboost {

namespace {

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\"");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\"");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  const char* begin = cell.data();
  if (*begin == '+') ++begin;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

DesignTable read_design_csv(std::istream& in) {
  std::string line;
  DesignTable table;
  while (std::getline(in, line) && blank(line)) {
  }
  if (blank(line)) throw Error(ErrorCode::MalformedInput, "design CSV is empty");
  table.names = split_csv_line(line);
  const std::size_t width = table.names.size();

  std::vector<std::vector<double>> rows;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (blank(line)) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != width) {
      throw Error(ErrorCode::MalformedInput,
                  "design CSV line " + std::to_string(line_number) + ": expected " +
                      std::to_string(width) + " columns, found " + std::to_string(cells.size()),
                  line_number);
    }
    std::vector<double> row(width);
    for (std::size_t j = 0; j < width; ++j) {
      const auto value = parse_number(cells[j]);
      if (!value) {
        throw Error(ErrorCode::MalformedInput,
                    "design CSV line " + std::to_string(line_number) + ", column " +
                        std::to_string(j + 1) + " ('" + table.names[j] + "'): not a number: '" +
                        cells[j] + "'",
                    line_number);
      }
      row[j] = *value;
    }
    rows.push_back(std::move(row));
  }
  table.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return table;
}

DesignTable read_design_csv(const std::filesystem::path& path) {
  auto in = open(path);
  return read_design_csv(in);
}

Eigen::VectorXd read_response_csv(std::istream& in) {
  std::string line;
  std::vector<double> values;
  std::size_t line_number = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_number;
    if (blank(line)) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 1) {
      throw Error(ErrorCode::MalformedInput,
                  "response CSV line " + std::to_string(line_number) + ": expected a single column",
                  line_number);
    }
    const auto value = parse_number(cells[0]);
    if (!value) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw Error(ErrorCode::MalformedInput,
                  "response CSV line " + std::to_string(line_number) + ": not a number: '" +
                      cells[0] + "'",
                  line_number);
    }
    first = false;
    values.push_back(*value);
  }
  if (values.empty()) throw Error(ErrorCode::MalformedInput, "response CSV holds no values");
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Eigen::VectorXd read_response_csv(const std::filesystem::path& path) {
  auto in = open(path);
  return read_response_csv(in);
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_design_csv(std::ostream& out, const Eigen::MatrixXd& values,
                      const std::vector<std::string>& names) {
  for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
  out << '\n';
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) out << (j ? "," : "") << format_double(values(i, j));
    out << '\n';
  }
}

void write_response_csv(std::ostream& out, const Eigen::VectorXd& y, const std::string& name) {
  out << name << '\n';
  for (Eigen::Index i = 0; i < y.size(); ++i) out << format_double(y(i)) << '\n';
}

}  // namespace selectboost
