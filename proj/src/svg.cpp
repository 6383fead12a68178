#include "fdsmc/svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fdsmc {

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

int parse_col(const std::string& token, const CsvTable& data,
              const char* what) {
  const int named = data.column(token);
  if (named >= 0) return named;
  try {
    std::size_t used = 0;
    const int idx = std::stoi(token, &used);
    if (used == token.size() && idx >= 0 &&
        idx < static_cast<int>(data.header.size()))
      return idx;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument(std::string("plot spec ") + what +
                              " column not found: " + token);
}

}  // namespace

PlotSpec parse_plot_spec(const std::string& text, const CsvTable& data) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t pos = text.find(':', start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      start = text.size();
      break;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  if (start < text.size()) parts.push_back(text.substr(start));  // title, may contain ':'
  if (parts.size() < 3)
    throw std::invalid_argument("plot spec must be kind:xcol:ycol[:title]");

  PlotSpec spec;
  if (parts[0] == "line")
    spec.kind = PlotSpec::Kind::line;
  else if (parts[0] == "scatter")
    spec.kind = PlotSpec::Kind::scatter;
  else
    throw std::invalid_argument("plot spec kind must be line or scatter: " +
                                parts[0]);
  spec.xcol = parse_col(parts[1], data, "x");
  spec.ycol = parse_col(parts[2], data, "y");
  if (parts.size() > 3) spec.title = parts[3];
  if (spec.xcol < static_cast<int>(data.header.size()))
    spec.xlabel = data.header[static_cast<std::size_t>(spec.xcol)];
  if (spec.ycol < static_cast<int>(data.header.size()))
    spec.ylabel = data.header[static_cast<std::size_t>(spec.ycol)];
  return spec;
}

void write_plot_svg(const std::string& path, const CsvTable& data,
                    const PlotSpec& spec) {
  const double ml = 62, mr = 16, mt = 28, mb = 44;
  const double w = spec.width, h = spec.height;
  const double pw = w - ml - mr, ph = h - mt - mb;

  // finite data points, in row order
  std::vector<double> xs, ys;
  for (const auto& r : data.rows) {
    if (spec.xcol >= static_cast<int>(r.size()) ||
        spec.ycol >= static_cast<int>(r.size()))
      continue;
    const double x = r[static_cast<std::size_t>(spec.xcol)];
    const double y = r[static_cast<std::size_t>(spec.ycol)];
    if (std::isfinite(x) && std::isfinite(y)) {
      xs.push_back(x);
      ys.push_back(y);
    }
  }

  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  if (!xs.empty()) {
    xmin = xmax = xs[0];
    ymin = ymax = ys[0];
    for (std::size_t i = 1; i < xs.size(); ++i) {
      xmin = std::min(xmin, xs[i]);
      xmax = std::max(xmax, xs[i]);
      ymin = std::min(ymin, ys[i]);
      ymax = std::max(ymax, ys[i]);
    }
    const double xpad = xmax > xmin ? 0.05 * (xmax - xmin) : 1.0;
    const double ypad = ymax > ymin ? 0.05 * (ymax - ymin) : 1.0;
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;
  }
  auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto Y = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
    << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width
    << ' ' << spec.height << "\">\n";
  f << "<rect width=\"" << spec.width << "\" height=\"" << spec.height
    << "\" fill=\"white\"/>\n";
  if (!spec.title.empty())
    f << "<text x=\"" << px(w / 2) << "\" y=\"18\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\">"
      << xml_escape(spec.title) << "</text>\n";

  // axes box and ticks
  f << "<rect x=\"" << px(ml) << "\" y=\"" << px(mt) << "\" width=\"" << px(pw)
    << "\" height=\"" << px(ph)
    << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  const int nticks = 5;
  for (int i = 0; i < nticks; ++i) {
    const double fx = static_cast<double>(i) / (nticks - 1);
    const double xv = xmin + fx * (xmax - xmin);
    const double yv = ymin + fx * (ymax - ymin);
    f << "<line x1=\"" << px(X(xv)) << "\" y1=\"" << px(mt + ph) << "\" x2=\""
      << px(X(xv)) << "\" y2=\"" << px(mt + ph + 4)
      << "\" stroke=\"black\"/>\n";
    f << "<text x=\"" << px(X(xv)) << "\" y=\"" << px(mt + ph + 16)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"10\">"
      << tick_label(xv) << "</text>\n";
    f << "<line x1=\"" << px(ml - 4) << "\" y1=\"" << px(Y(yv)) << "\" x2=\""
      << px(ml) << "\" y2=\"" << px(Y(yv)) << "\" stroke=\"black\"/>\n";
    f << "<text x=\"" << px(ml - 7) << "\" y=\"" << px(Y(yv) + 3)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
      << tick_label(yv) << "</text>\n";
  }
  if (!spec.xlabel.empty())
    f << "<text x=\"" << px(ml + pw / 2) << "\" y=\"" << px(h - 8)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">"
      << xml_escape(spec.xlabel) << "</text>\n";
  if (!spec.ylabel.empty())
    f << "<text x=\"14\" y=\"" << px(mt + ph / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 14 "
      << px(mt + ph / 2) << ")\">" << xml_escape(spec.ylabel) << "</text>\n";

  if (xs.empty()) {
    f << "<text x=\"" << px(ml + pw / 2) << "\" y=\"" << px(mt + ph / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">no data</text>\n";
  } else if (spec.kind == PlotSpec::Kind::line) {
    f << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\" "
         "points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) f << ' ';
      f << px(X(xs[i])) << ',' << px(Y(ys[i]));
    }
    f << "\"/>\n";
  } else {
    for (std::size_t i = 0; i < xs.size(); ++i)
      f << "<circle cx=\"" << px(X(xs[i])) << "\" cy=\"" << px(Y(ys[i]))
        << "\" r=\"1.6\" fill=\"#1f77b4\"/>\n";
  }
  f << "</svg>\n";
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace fdsmc
