#pragma once

#include <map>
#include <string>
#include <vector>

namespace gw2::io {

/// RFC-style CSV quoting: fields containing separators, quotes or newlines
/// are wrapped and inner quotes doubled.
std::string csv_escape(const std::string& field);

std::string csv_line(const std::vector<std::string>& fields);

/// key=value configuration file; '#' starts a comment, blank lines ignored.
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// Output directory resolution: explicit path wins, then GW2_OUTPUT_DIR,
/// then the current directory.
std::string resolve_output_dir(const std::string& explicit_dir);

}  // namespace gw2::io
