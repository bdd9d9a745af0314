#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace alphaexp::cli {

enum exit_code : int { ok = 0, check_failed = 1, usage_error = 2 };

enum class OutputFormat { csv, json };

/// start:stop:count[:log]
struct Grid {
    double start;
    double stop;
    std::size_t count;
    bool log_spacing = false;

    static Grid parse(std::string_view text);
    std::vector<double> values() const;
};

struct RunConfig {
    std::vector<std::string> alphas{"2"};
    unsigned precision_bits = 256;
    std::uint64_t seed = 7;
    OutputFormat format = OutputFormat::csv;
    Grid grid{0.0, 1.0, 2};
    int sig_digits = 15;
};

/// Runs the command line; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace alphaexp::cli
