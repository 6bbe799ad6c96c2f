#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ctxlab::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_guardrail = 2;

/// Runs one command (args exclude the program name), writing the JSON envelope to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ctxlab::cli
