#pragma once

#include <string>

namespace dbcs {

std::string read_file(const std::string& path);

/// Writes via a temp file in the same directory, then renames over the target.
void write_file_atomic(const std::string& path, const std::string& content);

/// True when the DBCS_LOG environment variable is set and non-empty.
bool log_enabled();
void log_line(const std::string& msg);

}  // namespace dbcs
