#pragma once

// Output formatting shared by the CLI and the check suite. Tables hold typed
// cells; every floating-point column X is expected to have a sibling X_err.
// Numbers are written in shortest round-trip form, so identical inputs give
// byte-identical files.

#include <array>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace minhyp::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Shortest decimal string that parses back to exactly x; "inf", "-inf",
/// "nan" for non-finite values.
std::string format_number(double x);

using Cell = std::variant<double, long long, std::string, bool>;

class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  /// Throws std::invalid_argument on a width mismatch.
  void add_row(std::vector<Cell> row);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  std::string to_csv() const;
  /// Array of row objects, keys in column order. Non-finite doubles become
  /// the strings used by format_number.
  Json to_json() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// Names of floating-point columns that lack an "_err" sibling.
std::vector<std::string> missing_error_columns(const Table& t);

/// {"schema": 1, "kind": kind, ...}.
Json document(const std::string& kind);

/// Stable two-space-indented dump with a trailing newline.
std::string dump(const Json& j);

Json number(double x);

// -- SVG ----------------------------------------------------------------------

struct Series {
  std::string label;
  std::vector<std::array<double, 2>> points;
  std::string stroke = "#1f77b4";
  bool dashed = false;
  bool markers = false;
};

struct Figure {
  std::string title;
  std::string x_label = "tanh(rho/2)";
  std::string y_label = "t";
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = -1.0;
  double y_max = 1.0;
  std::vector<Series> series;
  std::vector<double> reference_lines;  // horizontal, dashed grey
};

std::string to_svg(const Figure& fig);

/// Poincare-disk horizontal coordinate of a point at hyperbolic distance rho.
double disk_coordinate(double rho);

/// A fixed palette cycled by index.
std::string palette(std::size_t i);

/// Writes text to path, creating parent directories. Throws
/// std::runtime_error naming the path on failure.
void write_file(const std::string& path, const std::string& text);

}  // namespace minhyp::report
