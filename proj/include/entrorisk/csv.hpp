#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace entrorisk::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Strict comma-separated reader: no quoting, no escaping; every row must have
// exactly as many fields as the header. Leading lines starting with '#' are
// metadata and are skipped. Throws IoError with file/row context.
Table read_file(const std::filesystem::path& path);

std::vector<std::string> split_fields(const std::string& line);

// Shortest representation that round-trips exactly (std::to_chars),
// locale-independent.
std::string format_double(double x);

// Strict full-field parse; `context` feeds the error message.
double parse_double(const std::string& field, const std::string& context);

}  // namespace entrorisk::csv
