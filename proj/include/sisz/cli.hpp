#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sisz::cli {

// Stable exit-code contract.
enum ExitCode : int { kSuccess = 0, kInternal = 1, kUsage = 2, kFailed = 3, kIo = 4 };

// args excludes the program name. Reports go to out, notes and errors to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace sisz::cli
