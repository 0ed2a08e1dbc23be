#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gme/surface.hpp"

namespace gme {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 12 significant digits; NaN becomes the out-of-domain sentinel "NA".
inline std::string format_value(double v) {
  if (std::isnan(v)) return "NA";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline double parse_value(const std::string& s) {
  if (s == "NA") return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw IoError("malformed numeric field: '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw IoError("malformed numeric field: '" + s + "'");
  }
}

/// Rows are x-major with the second coordinate ascending; LF line endings.
inline void write_surface_csv(std::ostream& os, const SurfaceGrid& g) {
  os << (g.param == SurfaceGrid::Param::XRSquare ? "x,r,value" : "x,y,value")
     << "\n";
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      os << format_value(g.x_at(i)) << ',' << format_value(g.y_at(j)) << ','
         << format_value(g.at(i, j)) << "\n";
  if (!os) throw IoError("failed while writing surface CSV");
}

inline SurfaceGrid read_surface_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty CSV input");
  SurfaceGrid::Param param;
  if (line == "x,y,value")
    param = SurfaceGrid::Param::XYSimplex;
  else if (line == "x,r,value")
    param = SurfaceGrid::Param::XRSquare;
  else
    throw IoError("unrecognized CSV header: '" + line + "'");

  std::vector<std::string> xs;
  std::vector<double> vals;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw IoError("expected three CSV fields: '" + line + "'");
    xs.push_back(line.substr(0, c1));
    vals.push_back(parse_value(line.substr(c2 + 1)));
  }
  if (vals.empty()) throw IoError("CSV contains no data rows");

  std::size_t ny = 1;
  while (ny < xs.size() && xs[ny] == xs[0]) ++ny;
  if (vals.size() % ny != 0)
    throw IoError("CSV row count is not a whole number of x-blocks");
  const std::size_t nx = vals.size() / ny;

  SurfaceGrid g(param, static_cast<int>(nx), static_cast<int>(ny));
  g.values = std::move(vals);
  return g;
}

/// One abscissa column followed by one column per curve.
inline void write_curves_csv(std::ostream& os, const std::string& abscissa_name,
                             const std::vector<double>& abscissa,
                             const std::vector<std::string>& curve_names,
                             const std::vector<std::vector<double>>& curves) {
  if (curve_names.size() != curves.size())
    throw std::invalid_argument("write_curves_csv: name/column count mismatch");
  os << abscissa_name;
  for (const std::string& name : curve_names) os << ',' << name;
  os << "\n";
  for (std::size_t r = 0; r < abscissa.size(); ++r) {
    os << format_value(abscissa[r]);
    for (const auto& col : curves) os << ',' << format_value(col.at(r));
    os << "\n";
  }
  if (!os) throw IoError("failed while writing curves CSV");
}

}  // namespace gme
