#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace entrolab {

std::string formatCsvDouble(double v);

std::uint64_t fnv1a64(const std::string& bytes);

/// Provenance comment block every emitted CSV starts with:
/// artifact version, hash of the canonical config text, master seed.
std::string provenanceHeader(const std::string& configCanonical, std::uint64_t masterSeed);

void writeTextFile(const std::filesystem::path& path, const std::string& content);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  int columnIndex(const std::string& name) const;  // -1 when absent
  std::vector<double> numericColumn(const std::string& name) const;
};

/// Parses a CSV file back (comment lines skipped); the SVG plots are derived
/// from already-written CSV data only.
CsvTable readCsv(const std::filesystem::path& path);

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct SvgHLine {
  double y = 0.0;
  std::string label;
};

void writeSvgLineChart(const std::filesystem::path& path, const std::string& title,
                       const std::string& xLabel, const std::string& yLabel,
                       const std::vector<SvgSeries>& series,
                       const std::optional<SvgHLine>& hline = std::nullopt);

}  // namespace entrolab
