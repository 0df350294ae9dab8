#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace openslice::report {

/// Fixed 12-significant-digit formatting shared by the SVG emitters, so
/// figures are byte-stable and every printed number can be matched against
/// the sibling JSON.
std::string format_sig(double value);

/// Writes the full content, creating parent directories. Throws IoError
/// naming the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

/// One CSV line from already-formatted cells; no quoting, cells must not
/// contain commas.
std::string csv_line(const std::vector<std::string>& cells);

} // namespace openslice::report
