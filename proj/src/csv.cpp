#include "fdsmc/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fdsmc {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<double> CsvTable::col(int idx) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows)
    out.push_back(idx >= 0 && static_cast<std::size_t>(idx) < r.size()
                      ? r[static_cast<std::size_t>(idx)]
                      : std::numeric_limits<double>::quiet_NaN());
  return out;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

bool parse_cell(const std::string& cell, double& out) {
  if (cell.empty()) {
    out = std::numeric_limits<double>::quiet_NaN();
    return true;
  }
  char* end = nullptr;
  out = std::strtod(cell.c_str(), &end);
  return end != nullptr && *end == '\0' && end != cell.c_str();
}

}  // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows,
               const std::vector<std::string>& comments) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& c : comments) f << "# " << c << '\n';
  for (std::size_t i = 0; i < header.size(); ++i)
    f << header[i] << (i + 1 < header.size() ? "," : "");
  f << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (!std::isnan(r[i])) f << format_double(r[i]);
      if (i + 1 < r.size()) f << ',';
    }
    f << '\n';
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  CsvTable table;
  std::string line;
  bool saw_header_or_data = false;
  while (std::getline(f, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto cells = split(t);
    std::vector<double> row(cells.size());
    bool numeric = true;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (!parse_cell(cells[i], row[i])) {
        numeric = false;
        break;
      }
    if (!numeric && !saw_header_or_data) {
      table.header = cells;
      saw_header_or_data = true;
      continue;
    }
    if (!numeric)
      throw std::runtime_error("non-numeric row in " + path + ": " + t);
    saw_header_or_data = true;
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_trajectory_csv(const std::string& path, const Trajectory& tr,
                          int stride) {
  if (stride < 1) throw std::invalid_argument("csv stride must be >= 1");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << "t,theta1,theta2,omega1,omega2,tau1_applied,tau2_applied,"
       "tau1_cmd,tau2_cmd,S1,S2\n";
  for (std::size_t j = 0; j < tr.size(); j += static_cast<std::size_t>(stride)) {
    f << format_double(tr.t[j]) << ',' << format_double(tr.state[j].theta[0])
      << ',' << format_double(tr.state[j].theta[1]) << ','
      << format_double(tr.state[j].omega[0]) << ','
      << format_double(tr.state[j].omega[1]) << ','
      << format_double(tr.tau_applied[j][0]) << ','
      << format_double(tr.tau_applied[j][1]) << ','
      << format_double(tr.tau_cmd[j][0]) << ','
      << format_double(tr.tau_cmd[j][1]) << ',';
    if (tr.surface_valid[j])
      f << format_double(tr.surface[j][0]) << ','
        << format_double(tr.surface[j][1]);
    else
      f << ',';
    f << '\n';
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace fdsmc
