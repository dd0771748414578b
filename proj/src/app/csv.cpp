#include "lcca/app/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace lcca::app {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header, const Matrix& values) {
  if (static_cast<Index>(header.size()) != values.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "header width does not match the table");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (Index r = 0; r < values.rows(); ++r) {
    for (Index c = 0; c < values.cols(); ++c) out << (c ? "," : "") << format_double(values(r, c));
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Parse, path.string() + ":1: missing header row");
  for (const auto& h : split(line)) t.header.push_back(trim(h));

  std::vector<double> cells;
  Index rows = 0;
  Index line_no = 1;
  const std::size_t width = t.header.size();
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() != width) {
      throw Error(ErrorCode::Parse, path.string() + ":" + std::to_string(line_no) + ": expected " +
                                        std::to_string(width) + " fields, found " + std::to_string(fields.size()));
    }
    for (const auto& f : fields) {
      const std::string s = trim(f);
      double v = 0.0;
      const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw Error(ErrorCode::Parse, path.string() + ":" + std::to_string(line_no) + ": not a number: '" + s + "'");
      }
      cells.push_back(v);
    }
    ++rows;
  }
  t.values.resize(rows, static_cast<Index>(width));
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < static_cast<Index>(width); ++c) t.values(r, c) = cells[static_cast<std::size_t>(r) * width + c];
  return t;
}

}  // namespace lcca::app
