#pragma once

#include <string>
#include <vector>

namespace bratteli::cli {

enum Exit : int {
    Ok = 0,
    Internal = 1,
    Config = 2,        // bad parameters, malformed documents, window too small
    Undetermined = 3,  // a series or comparison could not be certified
};

struct CliResult {
    int exit_code = Ok;
    std::string out;
    std::string err;
};

// args excludes the program name
CliResult run(const std::vector<std::string>& args);

}  // namespace bratteli::cli
