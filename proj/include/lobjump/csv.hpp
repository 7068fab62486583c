#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lobjump {

// Minimal CSV plumbing for the pipeline's artifact files. All formats here
// are plain comma-separated fields without quoting, UTF-8, LF endings,
// mandatory header row. Doubles are written with %.17g so artifacts are
// byte-deterministic and round-trip exactly.

std::string format_double(double v);

std::vector<std::string> split_csv_line(std::string_view line);

int64_t parse_int(std::string_view field, const std::string& context, uint64_t line_no);
double parse_double(std::string_view field, const std::string& context, uint64_t line_no);

// Reads all lines of a text file; throws DataError if the file is missing.
std::vector<std::string> read_lines(const std::string& path);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace lobjump
