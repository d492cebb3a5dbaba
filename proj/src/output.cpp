#include "entrolab/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace entrolab {

std::string formatCsvDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string provenanceHeader(const std::string& configCanonical, std::uint64_t masterSeed) {
  std::ostringstream os;
  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a64(configCanonical)));
  os << "# entrolab 0.1.0\n";
  os << "# config-hash: " << hex << '\n';
  os << "# master-seed: " << masterSeed << '\n';
  return os.str();
}

void writeTextFile(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

int CsvTable::columnIndex(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<double> CsvTable::numericColumn(const std::string& name) const {
  const int idx = columnIndex(name);
  if (idx < 0) throw std::runtime_error("csv: no column named " + name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    double v = std::nan("");
    if (idx < static_cast<int>(row.size()) && !row[idx].empty())
      std::from_chars(row[idx].data(), row[idx].data() + row[idx].size(), v);
    out.push_back(v);
  }
  return out;
}

CsvTable readCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open csv: " + path.string());
  CsvTable table;
  std::string line;
  bool headerSeen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!headerSeen) {
      table.columns = cells;
      headerSeen = true;
    } else {
      table.rows.push_back(cells);
    }
  }
  return table;
}

namespace {

const char* kPalette[] = {"#1f6fb2", "#d1495b", "#3a9d6c", "#8d6cab", "#c98a2b", "#4d4d4d"};

std::string svgNum(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tickLabel(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace

void writeSvgLineChart(const std::filesystem::path& path, const std::string& title,
                       const std::string& xLabel, const std::string& yLabel,
                       const std::vector<SvgSeries>& series,
                       const std::optional<SvgHLine>& hline) {
  const double width = 800, height = 500;
  const double left = 70, right = 25, top = 40, bottom = 55;

  double xMin = 0, xMax = 1, yMin = 0, yMax = 1;
  bool any = false;
  for (const SvgSeries& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!any) {
        xMin = xMax = s.x[i];
        yMin = yMax = s.y[i];
        any = true;
      }
      xMin = std::min(xMin, s.x[i]);
      xMax = std::max(xMax, s.x[i]);
      yMin = std::min(yMin, s.y[i]);
      yMax = std::max(yMax, s.y[i]);
    }
  if (hline) {
    yMin = std::min(yMin, hline->y);
    yMax = std::max(yMax, hline->y);
  }
  if (xMax - xMin < 1e-12) xMax = xMin + 1;
  if (yMax - yMin < 1e-12) yMax = yMin + 1;
  const double yPad = 0.05 * (yMax - yMin);
  yMin -= yPad;
  yMax += yPad;

  auto mapX = [&](double x) { return left + (x - xMin) / (xMax - xMin) * (width - left - right); };
  auto mapY = [&](double y) {
    return height - bottom - (y - yMin) / (yMax - yMin) * (height - top - bottom);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"16\" "
        "font-family=\"sans-serif\">"
     << title << "</text>\n";

  // axes
  os << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right
     << "\" y2=\"" << height - bottom << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
     << height - bottom << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = xMin + (xMax - xMin) * i / 5.0;
    const double yv = yMin + (yMax - yMin) * i / 5.0;
    os << "<line x1=\"" << svgNum(mapX(xv)) << "\" y1=\"" << height - bottom << "\" x2=\""
       << svgNum(mapX(xv)) << "\" y2=\"" << height - bottom + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << svgNum(mapX(xv)) << "\" y=\"" << height - bottom + 20
       << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" << tickLabel(xv)
       << "</text>\n";
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << svgNum(mapY(yv)) << "\" x2=\"" << left
       << "\" y2=\"" << svgNum(mapY(yv)) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left - 8 << "\" y=\"" << svgNum(mapY(yv) + 4)
       << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << tickLabel(yv)
       << "</text>\n";
  }
  os << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 12
     << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << xLabel
     << "</text>\n";
  os << "<text x=\"18\" y=\"" << (top + height - bottom) / 2
     << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
        "transform=\"rotate(-90 18 "
     << (top + height - bottom) / 2 << ")\">" << yLabel << "</text>\n";

  if (hline) {
    os << "<line x1=\"" << left << "\" y1=\"" << svgNum(mapY(hline->y)) << "\" x2=\""
       << width - right << "\" y2=\"" << svgNum(mapY(hline->y))
       << "\" stroke=\"#555555\" stroke-dasharray=\"6,4\"/>\n";
    if (!hline->label.empty())
      os << "<text x=\"" << width - right - 4 << "\" y=\"" << svgNum(mapY(hline->y) - 5)
         << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\" fill=\"#555555\">"
         << hline->label << "</text>\n";
  }

  for (size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < series[s].x.size(); ++i) {
      if (!std::isfinite(series[s].x[i]) || !std::isfinite(series[s].y[i])) continue;
      os << svgNum(mapX(series[s].x[i])) << ',' << svgNum(mapY(series[s].y[i])) << ' ';
    }
    os << "\"/>\n";
    os << "<rect x=\"" << left + 10 << "\" y=\"" << top + 6 + 18 * s
       << "\" width=\"14\" height=\"4\" fill=\"" << color << "\"/>\n";
    os << "<text x=\"" << left + 30 << "\" y=\"" << top + 12 + 18 * s
       << "\" font-size=\"12\" font-family=\"sans-serif\">" << series[s].label << "</text>\n";
  }
  os << "</svg>\n";
  writeTextFile(path, os.str());
}

}  // namespace entrolab
