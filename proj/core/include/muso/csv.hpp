#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace muso {

/// Shortest round-trippable decimal form of a double ("%.17g" trimmed),
/// byte-stable across runs.
std::string fmt_double(double x);

/// Minimal CSV emitter with a fixed header and '\n' line endings. All file
/// output in the library goes through this or write_text so emitted bytes
/// are reproducible.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  void row(const std::vector<std::string>& fields);

  static std::string field(double x) { return fmt_double(x); }
  static std::string field(int x) { return std::to_string(x); }
  static std::string field(std::uint64_t x) { return std::to_string(x); }
  static std::string field(const std::string& s) { return s; }

 private:
  std::ofstream out_;
  std::size_t width_;
};

void write_text(const std::filesystem::path& path, const std::string& content);

/// FNV-1a 64-bit hash, used to fingerprint the canonical config.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace muso
