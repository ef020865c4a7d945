#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace asmtree::cli {

// Exit codes: 0 success, 1 computation refused (caps, disconnected graph,
// vanishing leading coefficient), 2 bad input. Results go to `out`,
// diagnostics to `err` only.
inline constexpr int kOk = 0;
inline constexpr int kRefused = 1;
inline constexpr int kBadInput = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace asmtree::cli
