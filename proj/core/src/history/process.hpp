#pragma once

#include <string>
#include <vector>

namespace reusemine::detail {

struct ProcessResult {
    int exit_status = -1;  // -1 when the process could not be started or was killed
    std::string out;
    std::string err;
};

// Runs argv[0] (looked up on PATH) with `input` on stdin and captures stdout
// and stderr.
ProcessResult run_process(const std::vector<std::string>& argv, const std::string& input = {});

} // namespace reusemine::detail
