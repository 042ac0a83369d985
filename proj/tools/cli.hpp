#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace logspiral::cli {

inline constexpr int schema_version = 1;

// args excludes the program name. Data goes to out (or --out files), diagnostics to err.
// Exit status: 0 ok, 1 verification failure, 2 usage error, 3 library error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace logspiral::cli
