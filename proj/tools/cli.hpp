#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace polycube::cli {

enum ExitCode : int {
    kOk = 0,
    kClaimFailed = 2,
    kBudgetExhausted = 3,
    kInputError = 4,
};

/// Accepts "600s", "10m", "1.5h", "250ms" or a bare number of seconds.
std::chrono::milliseconds parse_duration(const std::string& text);

std::uint64_t fnv1a64(std::string_view bytes);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace polycube::cli
