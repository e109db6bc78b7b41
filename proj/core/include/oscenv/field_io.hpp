#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oscenv/grid.hpp"

namespace oscenv {

/// Shortest decimal text that round-trips to the same double.
[[nodiscard]] std::string format_double(double v);

/// Grid snapshot text format:
///
///   # t=<time> M=<M> L=<L> u1=[min,max] u2=[min,max]
///   L lines of M comma-separated values, row k = u2 index
///
/// Complex snapshots store the real block, a `# component=qi` line, then the
/// imaginary block.
[[nodiscard]] std::string grid_header(const Grid2D& grid, double t);
void write_field(std::ostream& os, const Field2D& field);
void write_field(const std::filesystem::path& path, const Field2D& field);
void write_complex_field(const std::filesystem::path& path, const ComplexField& field);

[[nodiscard]] Field2D read_field(std::istream& is);
[[nodiscard]] Field2D read_field(const std::filesystem::path& path);
[[nodiscard]] ComplexField read_complex_field(const std::filesystem::path& path);

/// Parses a grid header line; returns the grid and time.
[[nodiscard]] std::pair<Grid2D, double> parse_grid_header(std::string_view line);

/// A numeric CSV table. Missing entries are written as empty fields.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;

  void add_row(std::vector<std::optional<double>> row);
  [[nodiscard]] std::optional<std::size_t> column(std::string_view name) const;
};

void write_csv(std::ostream& os, const CsvTable& table);
void write_csv(const std::filesystem::path& path, const CsvTable& table);
[[nodiscard]] CsvTable read_csv(const std::filesystem::path& path);

/// Writes `content` to `path` (binary, truncating).
void write_text(const std::filesystem::path& path, std::string_view content);
[[nodiscard]] std::string read_text(const std::filesystem::path& path);

}  // namespace oscenv
