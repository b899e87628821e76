#pragma once

// Flat text serialization of grid fields:
//   n,points,L
//   <n>,<points>,<L>
//   one value per line, row-major (last axis fastest)

#include "plate/spectral_field.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace plate {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_field(std::ostream& os, const SpectralField& f) {
  const auto& g = f.geometry();
  os << "n,points,L\n" << g.n << ',' << g.points_per_axis << ',' << format_double(g.half_width) << '\n';
  for (double v : f.values()) os << format_double(v) << '\n';
}

inline SpectralField read_field(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "n,points,L") throw std::runtime_error("field file: bad header line");
  if (!std::getline(is, line)) throw std::runtime_error("field file: missing geometry line");
  GridGeometry g;
  {
    std::istringstream ls(line);
    char c1 = 0, c2 = 0;
    if (!(ls >> g.n >> c1 >> g.points_per_axis >> c2 >> g.half_width) || c1 != ',' || c2 != ',')
      throw std::runtime_error("field file: malformed geometry line '" + line + "'");
  }
  auto grid = Grid::make(g);
  RealVector values;
  values.reserve(grid->size());
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(line, &used);
    } catch (const std::exception&) {
      throw std::runtime_error("field file: bad value '" + line + "'");
    }
    if (used != line.size()) throw std::runtime_error("field file: bad value '" + line + "'");
    values.push_back(v);
  }
  if (values.size() != grid->size())
    throw std::runtime_error("field file: expected " + std::to_string(grid->size()) + " values, got " +
                             std::to_string(values.size()));
  return SpectralField::from_values(std::move(grid), std::move(values));
}

}  // namespace plate
