#include "entrorisk/csv.hpp"

#include <charconv>
#include <fstream>

#include "entrorisk/errors.hpp"

namespace entrorisk::csv {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

Table read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  Table t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header && (line.empty() || line[0] == '#')) continue;
    if (!have_header) {
      t.header = split_fields(line);
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != t.header.size())
      throw IoError("'" + path.string() + "': row " +
                    std::to_string(t.rows.size() + 1) + " has " +
                    std::to_string(fields.size()) + " fields, expected " +
                    std::to_string(t.header.size()));
    t.rows.push_back(std::move(fields));
  }
  if (!have_header) throw IoError("'" + path.string() + "': no header row");
  return t;
}

std::string format_double(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& field, const std::string& context) {
  if (field.empty()) throw IoError("missing value at " + context);
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last)
    throw IoError("malformed number '" + field + "' at " + context);
  return value;
}

}  // namespace entrorisk::csv
