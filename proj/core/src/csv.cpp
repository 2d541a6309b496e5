#include "muso/csv.hpp"

#include <cstdio>

#include "muso/errors.hpp"

namespace muso {

std::string fmt_double(double x) {
  char buf[64];
  // Find the shortest precision that round-trips; keeps CSVs readable and
  // still byte-exact.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == x) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : out_(path, std::ios::binary), width_(header.size()) {
  if (!out_) throw io_error("cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < header.size(); ++i)
    out_ << header[i] << (i + 1 < header.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != width_) throw consistency_error("csv row width mismatch");
  for (std::size_t i = 0; i < fields.size(); ++i)
    out_ << fields[i] << (i + 1 < fields.size() ? "," : "\n");
  if (!out_) throw io_error("csv write failed");
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw io_error("write failed for " + path.string());
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace muso
