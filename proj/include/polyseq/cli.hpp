#pragma once

#include <string>
#include <vector>

namespace polyseq {

// Exit codes: 0 success, 1 failed check with data still emitted, 2 usage,
// parse or module errors (nothing on stdout).
struct CommandResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

// argv[0] is the program name.
CommandResult run(const std::vector<std::string>& argv);

} // namespace polyseq
