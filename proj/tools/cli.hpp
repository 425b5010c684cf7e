#pragma once

#include <atomic>
#include <ostream>
#include <string>
#include <vector>

namespace pkc::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kUsageError = 2,
  kOracleLimit = 3,
  kInterrupted = 130,
};

/// Runs the command line `args` (args[0] is the program name). `stop` is
/// polled between MicroKC calls; when it is set the partial report is
/// printed and kInterrupted returned.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::atomic<bool>* stop = nullptr);

}  // namespace pkc::cli
