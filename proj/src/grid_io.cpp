#include "qcw/grid_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "qcw/errors.hpp"

namespace qcw {

namespace {

constexpr const char* kMagic = "qcw-beltrami-grid";

// Next non-empty, non-comment line.
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

void write_grid(std::ostream& out, const BeltramiGrid& grid) {
  const Index m = grid.size();
  out << kMagic << " 1\n";
  out << "M " << m << "\n";
  out << std::setprecision(17) << "cell_size " << grid.cell_size() << "\n";
  const auto& s = grid.samples();
  for (Index r = 0; r < m; ++r)
    for (Index c = 0; c < m; ++c) out << s(r, c).real() << ' ' << s(r, c).imag() << '\n';
}

void write_grid_file(const std::string& path, const BeltramiGrid& grid) {
  std::ofstream out(path);
  if (!out) throw UsageError("write_grid_file: cannot open " + path);
  write_grid(out, grid);
  if (!out) throw UsageError("write_grid_file: write failed for " + path);
}

BeltramiGrid read_grid(std::istream& in) {
  std::string line, key;
  if (!next_line(in, line)) throw UsageError("read_grid: empty input");
  {
    std::istringstream ls(line);
    int version = 0;
    ls >> key >> version;
    if (key != kMagic || version != 1) throw UsageError("read_grid: bad header '" + line + "'");
  }
  Index m = 0;
  double h = 0;
  if (!next_line(in, line)) throw UsageError("read_grid: missing M");
  {
    std::istringstream ls(line);
    ls >> key >> m;
    if (key != "M" || !ls || m < 2) throw UsageError("read_grid: bad size line '" + line + "'");
  }
  if (!next_line(in, line)) throw UsageError("read_grid: missing cell_size");
  {
    std::istringstream ls(line);
    ls >> key >> h;
    if (key != "cell_size" || !ls) throw UsageError("read_grid: bad cell_size line '" + line + "'");
    if (std::abs(h - 2.0 / static_cast<double>(m)) > 1e-12)
      throw UsageError("read_grid: cell_size inconsistent with M");
  }
  Eigen::MatrixXcd s(m, m);
  for (Index r = 0; r < m; ++r)
    for (Index c = 0; c < m; ++c) {
      if (!next_line(in, line))
        throw UsageError("read_grid: expected " + std::to_string(m * m) + " samples");
      std::istringstream ls(line);
      double re = 0, im = 0;
      ls >> re >> im;
      if (!ls) throw UsageError("read_grid: malformed sample line '" + line + "'");
      s(r, c) = {re, im};
    }
  return BeltramiGrid(std::move(s));
}

BeltramiGrid read_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("read_grid_file: cannot open " + path);
  return read_grid(in);
}

}  // namespace qcw
