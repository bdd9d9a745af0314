#pragma once

// Digit sequences with prescribed digits on an index subsequence I = {m_1 < m_2 < ...}:
// d_{m_i} = f(i) on I, and free digits (bounded by M for B_M) on the complement.
// Indices are 1-based throughout.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "alphaexp/expansion.hpp"
#include "alphaexp/measures.hpp"

namespace alphaexp {

class SubsequencePattern {
public:
    struct Builtin {
        double mu;   // n-th free index is n + ceil(sqrt(2 mu n)); f(i) = i
    };
    struct EvenIndices {
        std::uint32_t value;   // I = {2, 4, 6, ...}, f(i) = value
    };
    struct ExplicitList {
        std::vector<std::uint64_t> indices;   // strictly increasing, >= 1
        std::vector<std::uint32_t> values;    // non-decreasing, >= 1
    };

    /// The worked example with k_n = n + ceil(sqrt(2 mu n)) and f(i) = i.
    static SubsequencePattern builtin_example(double mu);
    static SubsequencePattern even_indices(std::uint32_t value, double mu = 0.0);
    static SubsequencePattern explicit_list(std::vector<std::uint64_t> indices,
                                            std::vector<std::uint32_t> values, double mu);
    static SubsequencePattern unconstrained(double mu = 0.0);

    bool constrained(std::uint64_t index) const;
    /// |I ∩ {1..k}|
    std::uint64_t constrained_count(std::uint64_t k) const;
    /// f(rank) for the rank-th constrained index (rank >= 1).
    std::uint32_t value_at_rank(std::uint64_t rank) const;
    /// sum_{i=1}^{count} f(i), exact.
    std::uint64_t value_sum(std::uint64_t count) const;

    /// Nominal mu carried with the pattern (builtin: its parameter).
    double mu() const noexcept { return mu_; }
    const std::string& description() const noexcept { return description_; }

private:
    using Rule = std::variant<Builtin, EvenIndices, ExplicitList>;
    SubsequencePattern(Rule rule, double mu, std::string description);

    Rule rule_;
    double mu_;
    std::string description_;
};

/// ceil(sqrt(v)) for v >= 0, exact for representable v.
std::uint64_t ceil_sqrt(long double v);

/// Smallest k with exactly n free indices in {1..k}; k >= n.
std::uint64_t k_of_n(const SubsequencePattern& pattern, std::uint64_t n);

struct MuEstimate {
    double kn_ratio;   // k_n / n
    double mu_n;       // (1/n) sum_{i=1}^{k_n - n} f(m_i)
};
MuEstimate mu_estimate(const SubsequencePattern& pattern, std::uint64_t n);

struct HypothesisReport {
    bool admissible;
    std::vector<std::uint64_t> ladder;      // n values examined, increasing
    std::vector<MuEstimate> estimates;
    std::string reason;
};

/// Checks the asymptotic hypotheses (k_n/n -> 1, mu_n Cauchy) on n = depth/10^j.
HypothesisReport check_hypotheses(const SubsequencePattern& pattern,
                                  std::uint64_t depth = 10'000'000, double ratio_tol = 1e-2,
                                  double mu_tol = 1e-2);

/// Table law p_j = ((alpha-1)/alpha^{j+mu})^{d_M} on {1..M}.
DigitLaw bm_free_law(double mu, std::uint64_t M, const AlphaParams& params);

/// Length-n_total sequence: f on I, i.i.d. bm_free_law(pattern.mu(), M) digits on the complement.
DigitPrefix sample_bm(const SubsequencePattern& pattern, std::uint64_t M, const AlphaParams& params,
                      std::size_t n_total, std::uint64_t seed);

/// log mu(Î(d_1..d_n)) / log |Î(d_1..d_n)| over the first k_n indices, n = free indices seen.
double bm_local_dimension(const DigitPrefix& prefix, const SubsequencePattern& pattern, double mu,
                          std::uint64_t M, const AlphaParams& params);

/// Pattern config: `key = value` lines, '#' comments.
///   kind    = builtin-example | explicit-list | even-indices | unconstrained
///   mu      = <real>            (builtin parameter, or nominal mu for the others)
///   M       = <int>             (0 or absent: smallest M with |d_M - d| < 1e-6)
///   depth   = <int>             (prefix-validation depth, default 10^7)
///   indices = 2,5,9             (explicit-list)
///   values  = 1,2,3             (explicit-list; even-indices takes a single value)
struct PatternConfig {
    SubsequencePattern pattern;
    std::uint64_t M = 0;
    std::uint64_t depth = 10'000'000;
};
PatternConfig parse_pattern_config(std::string_view text);

}  // namespace alphaexp
