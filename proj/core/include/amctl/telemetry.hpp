#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "amctl/scenario.hpp"

namespace amctl {

/// Comma-separated header, 29 columns.
const std::vector<std::string>& telemetry_columns();

void write_telemetry_header(std::ostream& out);
/// Floats with 9 significant digits.
void write_telemetry_row(std::ostream& out, const TelemetryRow& row);
void write_telemetry_csv(std::ostream& out, const std::vector<TelemetryRow>& rows);

/// Throws Error(kConfig) on a malformed file.
std::vector<TelemetryRow> read_telemetry_csv(std::istream& in);

}  // namespace amctl
