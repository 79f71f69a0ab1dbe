#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ncg::cli {

// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kNegative = 1;
inline constexpr int kInputError = 2;

// args excludes the program name. Reports go to --out or `out`; input
// errors are written to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncg::cli
