#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace rhwb::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

/// Parses `args` (without the program name), runs the subcommand and writes
/// the report to --out, or to `out` when no path is given. Diagnostics go
/// to `err`. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes through a temporary file in the same directory and renames it
/// into place.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace rhwb::cli
