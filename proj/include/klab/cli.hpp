#pragma once

#include <string>
#include <vector>

namespace klab::cli {

enum ExitCode : int { ok = 0, verdict_false = 1, input_error = 2, cap_exceeded = 3 };

struct Result {
    int exit_code = ok;
    std::string out;  // report, or help text
    std::string err;  // one-line diagnostic on failure
};

/// args excludes the program name, e.g. {"tot", "--input", "cube.json"}.
/// Reads the input document from stdin when --input is absent or "-".
Result run(const std::vector<std::string>& args);

const std::vector<std::string>& commands();

}  // namespace klab::cli
