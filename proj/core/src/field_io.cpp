#include "oscenv/field_io.hpp"

#include <charconv>
#include <fstream>
#include <tuple>
#include <sstream>

#include "oscenv/errors.hpp"

namespace oscenv {

namespace {

double parse_double(std::string_view s, std::string_view what) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw FormatError("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  }
  return v;
}

// Value following `key` up to the next space (or `]` inclusive for ranges).
std::string_view header_value(std::string_view line, std::string_view key) {
  const auto pos = line.find(key);
  if (pos == std::string_view::npos) {
    throw FormatError("grid header lacks '" + std::string(key) + "': " + std::string(line));
  }
  auto rest = line.substr(pos + key.size());
  const auto stop = rest.find(' ');
  return rest.substr(0, stop);
}

std::pair<double, double> parse_range(std::string_view s, std::string_view what) {
  if (s.size() < 5 || s.front() != '[' || s.back() != ']') {
    throw FormatError("malformed range for " + std::string(what));
  }
  s = s.substr(1, s.size() - 2);
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) throw FormatError("malformed range for " + std::string(what));
  return {parse_double(s.substr(0, comma), what), parse_double(s.substr(comma + 1), what)};
}

// Rows are numbered from `first_line` for error messages; columns count values from 1.
void read_block(std::istream& is, const Grid2D& g, std::vector<double>& out, int first_line) {
  out.assign(g.size(), 0.0);
  std::string line;
  for (int k = 0; k < g.L; ++k) {
    const std::string where = "line " + std::to_string(first_line + k);
    if (!std::getline(is, line)) throw FormatError(where + ": snapshot truncated");
    std::string_view sv(line);
    for (int j = 0; j < g.M; ++j) {
      const auto comma = sv.find(',');
      if ((comma == std::string_view::npos) != (j == g.M - 1)) {
        throw FormatError(where + ": expected " + std::to_string(g.M) + " values");
      }
      try {
        out[g.index(j, k)] = parse_double(sv.substr(0, comma), "snapshot value");
      } catch (const FormatError& e) {
        throw FormatError(where + ", column " + std::to_string(j + 1) + ": " + e.what());
      }
      if (comma != std::string_view::npos) sv.remove_prefix(comma + 1);
    }
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw FormatError("cannot open for writing: " + path.string());
  return os;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open: " + path.string());
  return is;
}

void write_block(std::ostream& os, const Grid2D& g, const std::vector<double>& v) {
  std::string line;
  for (int k = 0; k < g.L; ++k) {
    line.clear();
    for (int j = 0; j < g.M; ++j) {
      if (j) line += ',';
      line += format_double(v[g.index(j, k)]);
    }
    line += '\n';
    os << line;
  }
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw FormatError("format_double failed");
  return {buf, ptr};
}

std::string grid_header(const Grid2D& g, double t) {
  return "# t=" + format_double(t) + " M=" + std::to_string(g.M) + " L=" +
         std::to_string(g.L) + " u1=[" + format_double(g.u1_min) + "," +
         format_double(g.u1_max) + "] u2=[" + format_double(g.u2_min) + "," +
         format_double(g.u2_max) + "]";
}

std::pair<Grid2D, double> parse_grid_header(std::string_view line) {
  if (line.rfind("# t=", 0) != 0) throw FormatError("not a grid header: " + std::string(line));
  const double t = parse_double(header_value(line, "t="), "t");
  const double m = parse_double(header_value(line, "M="), "M");
  const double l = parse_double(header_value(line, "L="), "L");
  const auto [a, b] = parse_range(header_value(line, "u1="), "u1");
  const auto [c, d] = parse_range(header_value(line, "u2="), "u2");
  try {
    return {Grid2D::make(a, b, c, d, static_cast<int>(m), static_cast<int>(l)), t};
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("invalid grid in header: ") + e.what());
  }
}

void write_field(std::ostream& os, const Field2D& f) {
  os << grid_header(f.grid, f.t) << '\n';
  write_block(os, f.grid, f.values);
}

void write_field(const std::filesystem::path& path, const Field2D& f) {
  auto os = open_out(path);
  write_field(os, f);
}

void write_complex_field(const std::filesystem::path& path, const ComplexField& f) {
  auto os = open_out(path);
  os << grid_header(f.grid, f.t) << '\n';
  write_block(os, f.grid, f.qr);
  os << "# component=qi\n";
  write_block(os, f.grid, f.qi);
}

Field2D read_field(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("line 1: empty snapshot");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  Grid2D g;
  double t = 0.0;
  try {
    std::tie(g, t) = parse_grid_header(line);
  } catch (const FormatError& e) {
    throw FormatError(std::string("line 1: ") + e.what());
  }
  Field2D f(g, t);
  read_block(is, g, f.values, 2);
  return f;
}

Field2D read_field(const std::filesystem::path& path) {
  auto is = open_in(path);
  try {
    return read_field(is);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

ComplexField read_complex_field(const std::filesystem::path& path) {
  auto is = open_in(path);
  try {
    Field2D re = read_field(is);
    std::string line;
    if (!std::getline(is, line) || line.rfind("# component=qi", 0) != 0) {
      throw FormatError("line " + std::to_string(re.grid.L + 2) +
                        ": missing '# component=qi' separator");
    }
    ComplexField q(re.grid, re.t);
    q.qr = std::move(re.values);
    read_block(is, q.grid, q.qi, re.grid.L + 3);
    return q;
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void CsvTable::add_row(std::vector<std::optional<double>> row) {
  if (row.size() != columns.size()) throw InvalidArgument("CsvTable: row width mismatch");
  rows.push_back(std::move(row));
}

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  return std::nullopt;
}

void write_csv(std::ostream& os, const CsvTable& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (row[i]) os << format_double(*row[i]);
    }
    os << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  auto os = open_out(path);
  write_csv(os, table);
}

CsvTable read_csv(const std::filesystem::path& path) {
  auto is = open_in(path);
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw FormatError(path.string() + ": empty CSV");
  std::stringstream hs(line);
  for (std::string col; std::getline(hs, col, ',');) t.columns.push_back(col);
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::optional<double>> row;
    std::string_view sv(line);
    while (true) {
      const auto comma = sv.find(',');
      const auto cell = sv.substr(0, comma);
      if (cell.empty() || cell == "\r") {
        row.emplace_back();
      } else {
        try {
          row.emplace_back(parse_double(cell, "CSV cell"));
        } catch (const FormatError& e) {
          throw FormatError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
      }
      if (comma == std::string_view::npos) break;
      sv.remove_prefix(comma + 1);
    }
    if (row.size() != t.columns.size()) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": wrong column count");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_text(const std::filesystem::path& path, std::string_view content) {
  auto os = open_out(path);
  os.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string read_text(const std::filesystem::path& path) {
  auto is = open_in(path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace oscenv
