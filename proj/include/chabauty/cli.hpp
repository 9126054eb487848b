#pragma once

// Command-line front end. run() never prints; tools/main.cpp does.

#include <string>
#include <vector>

#include <json.hpp>

namespace chabauty::cli {

enum ExitCode { kOk = 0, kUsage = 2, kParse = 3, kNumeric = 4 };

struct CommandResult {
  int exit_code = kOk;
  nlohmann::json payload;  // command output, or {"error": ..., "code": ...}
  std::string text;        // what goes to stdout
  std::string error;       // what goes to stderr

  bool ok() const { return exit_code == kOk; }
};

/// args excludes the program name.
CommandResult run(const std::vector<std::string>& args);

}  // namespace chabauty::cli
