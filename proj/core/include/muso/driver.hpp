#pragma once

#include <filesystem>
#include <string>

#include "muso/config.hpp"

namespace muso {

inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitProperty = 1;   // an asserted property failed
inline constexpr int kExitIo = 2;         // missing file, parse error, unwritable output
inline constexpr int kExitValidation = 3; // config constraint violated
inline constexpr int kExitInternal = 4;

enum class Command { VerifyFamily, VerifySpace, GreenCheck, GradCheck, Solve, Sweep };

/// Throws validation_error for an unknown name.
Command parse_command(const std::string& name);
std::string command_name(Command cmd);

/// Runs one command, writing artifacts (CSVs, manifest, config echo, schema
/// README) into out_dir. Returns kExitOk or kExitProperty; I/O and internal
/// failures are thrown.
int run_command(Command cmd, const RunConfig& cfg, const std::filesystem::path& out_dir);

/// CLI entry: parses the command name and config file, maps every outcome to
/// the exit-code contract. Messages go to stderr.
int run_from_files(const std::string& command, const std::filesystem::path& config_path,
                   const std::filesystem::path& out_dir) noexcept;

}  // namespace muso
