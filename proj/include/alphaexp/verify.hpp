#pragma once

// Runtime self-checks behind `alphaexp verify`: each suite compares library
// results with closed forms, brute-force sums or Monte Carlo oracles.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace alphaexp {

struct Check {
    std::string suite;
    std::string name;
    double target;
    double measured;
    double tolerance;   // pass iff |measured - target| <= tolerance (or the stated relation)
    bool passed;
};

struct VerifyConfig {
    std::string alpha = "2";
    unsigned precision_bits = 256;
    std::uint64_t seed = 7;
    std::size_t n_samples = 1'000'000;
    double beta = 3.0;
    double mu = 1.0;
    std::uint64_t M = 30;
};

const std::vector<std::string_view>& suite_names();

/// Runs one suite ("codec", "pressure", "khintchine", "moran", "subseq") or "all".
std::vector<Check> run_suite(std::string_view suite, const VerifyConfig& config);

}  // namespace alphaexp
