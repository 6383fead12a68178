#pragma once

#include <string>
#include <vector>

#include "fdsmc/sim.hpp"

namespace fdsmc {

/// 17 significant digits — exact double round-trip.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;  // empty cells read back as NaN

  /// Column index by header name; -1 when absent.
  int column(const std::string& name) const;
  std::vector<double> col(int idx) const;
};

/// Plain CSV: optional `# ` comment lines, one header line, numeric rows.
/// NaN cells are written empty.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows,
               const std::vector<std::string>& comments = {});

/// Reads the format written above. Lines starting with '#' and blank lines
/// are skipped; a leading non-numeric line is taken as the header.
CsvTable read_csv(const std::string& path);

/// Canonical trajectory export. S cells are left empty on records where the
/// sliding controller was not active. `stride` keeps every stride-th record
/// (always starting at the first).
void write_trajectory_csv(const std::string& path, const Trajectory& tr,
                          int stride = 1);

}  // namespace fdsmc
