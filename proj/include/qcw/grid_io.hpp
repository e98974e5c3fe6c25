#pragma once

// Text grid file for Beltrami coefficients:
//
//   qcw-beltrami-grid 1
//   M <size>
//   cell_size <2/M>
//   <re> <im>            # M*M lines, row-major, row 0 at y = -1 + h/2,
//   ...                  # column 0 at x = -1 + h/2
//
// Numbers are written with 17 significant digits; '#' starts a comment line.

#include <iosfwd>
#include <string>

#include "qcw/beltrami.hpp"

namespace qcw {

void write_grid(std::ostream& out, const BeltramiGrid& grid);
void write_grid_file(const std::string& path, const BeltramiGrid& grid);

BeltramiGrid read_grid(std::istream& in);
BeltramiGrid read_grid_file(const std::string& path);

}  // namespace qcw
