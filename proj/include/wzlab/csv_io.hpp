#pragma once

#include <string>

namespace wzlab {

/// Floats in CSV output carry 17 significant digits so reruns are
/// byte-reproducible.
std::string format_float(double v);

/// Write-to-temp then atomic rename; no partial file is ever visible.
void write_file_atomic(const std::string& path, const std::string& content);

/// Comment header line "# wzlab <command> <iso timestamp>". Data consumers
/// strip lines starting with "# " (the "#summary," rows carry no space).
std::string timestamp_header(const std::string& command);

}  // namespace wzlab
