#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mq::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_format = 1;
inline constexpr int exit_domain = 2;
inline constexpr int exit_usage = 64;

// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mq::cli
