#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "squidqnd/config.hpp"
#include "squidqnd/report.hpp"

namespace squidqnd {

/// 12 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double v);

/// '#'-prefixed lines: tool name and version, command, then every resolved config line.
std::vector<std::string> header_lines(const RunConfig& cfg, std::string_view command);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string render_csv(const std::vector<std::string>& header, const CsvTable& table);

/// Report as JSON text: stable key order, 9 significant digits, a leading
/// "_meta" object in place of a comment header.
std::string render_report_json(const FeasibilityReport& report, const RunConfig& cfg);

/// Writes through a temporary file and renames it into place.
void write_file(const std::string& path, std::string_view content);

}  // namespace squidqnd
