#pragma once

#include <string>

#include "fdsmc/csv.hpp"

namespace fdsmc {

struct PlotSpec {
  enum class Kind { line, scatter };
  Kind kind = Kind::line;
  int xcol = 0;
  int ycol = 1;
  std::string title;
  std::string xlabel;
  std::string ylabel;
  int width = 800;
  int height = 560;
};

/// Parse "kind:xcol:ycol[:title]". Columns may be header names or 0-based
/// indices; kind is "line" or "scatter". Throws std::invalid_argument naming
/// the offending field.
PlotSpec parse_plot_spec(const std::string& text, const CsvTable& data);

/// Deterministic static plot: one polyline for a line plot, one circle per
/// data row for a scatter plot; rows with non-finite coordinates are
/// skipped. An empty table still yields a valid SVG with a "no data" note.
void write_plot_svg(const std::string& path, const CsvTable& data,
                    const PlotSpec& spec);

}  // namespace fdsmc
