#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parweigh/core.hpp"

namespace parweigh::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;  // verification or solve said no
inline constexpr int kUsage = 2;
inline constexpr int kGuard = 3;  // instance too large or out of range

// args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

// Play-mode weighing syntax: "A: 1 2 v 3 4; B: 5 v 6". Scales not named
// stay idle. Returns nullopt with a message in `error` on bad input.
std::optional<ParallelWeighing> parse_weighing_text(std::string_view text, int scales,
                                                    std::string* error = nullptr);
std::string format_weighing(const ParallelWeighing& w);

}  // namespace parweigh::cli
