#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hermlat/genus.hpp"

namespace hermlat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIO = 3;

struct Command {
    std::string subcommand;
    std::optional<long> p;
    std::optional<int> n;
    std::optional<Ring> ring;
    std::optional<int> det;  // 1 or 2
    std::optional<std::string> gram;
    int precision = 64;
    bool json = false;
    bool strict = false;
    uint64_t seed = 20240601;
    int index = 1;
    std::optional<std::string> q;
    bool parallel = false;
};

// Throws Error(UsageError) on anything malformed.
Command parse_command(const std::vector<std::string>& argv);

// Dispatches a parsed command; returns the process exit code.
int run(const Command& cmd, std::ostream& out, std::ostream& err);

// parse_command + run with error-to-exit-code mapping.
int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

int exit_code_for(ErrorCode code);

}  // namespace hermlat::cli
