#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blanket::cli {

enum ExitCode { kOk = 0, kSolverError = 1, kUsageError = 2 };

/// Entry point shared by the rbp binary and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_solve(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_bench(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_gen(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blanket::cli
