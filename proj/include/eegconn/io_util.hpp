#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace eegconn {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

/// Strict double parse of the whole token. Throws FormatError on failure
/// (message includes `context`). Accepts nan/inf spellings; finiteness is
/// checked by callers that require it.
double parse_double(std::string_view token, const std::string& context);

/// Splits on commas; no quoting or escaping (channel names and tokens in
/// this project never contain commas).
std::vector<std::string> split_csv_line(std::string_view line);

/// Reads a whole file; throws IoError if it cannot be opened.
std::string read_text_file(const std::string& path);

/// Writes the buffer atomically-ish (truncate + write); throws IoError.
void write_text_file(const std::string& path, std::string_view content);

}  // namespace eegconn
