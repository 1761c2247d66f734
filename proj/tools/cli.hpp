#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hyperboot::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum Exit : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kBudget = 3 };

/// Runs one invocation; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// FNV-1a, 16 lowercase hex digits.
std::string digest(const std::string& bytes);

/// Digest of a file's bytes, or "missing".
std::string file_digest(const std::string& path);

}  // namespace hyperboot::cli
