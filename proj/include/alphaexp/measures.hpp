#pragma once

// Product (i.i.d.) digit laws realizing the Lebesgue and Gibbs measures on
// cylinders, reproducible samplers, and Birkhoff / local-dimension estimators.

#include <cstdint>
#include <vector>

#include "alphaexp/expansion.hpp"
#include "alphaexp/spectra.hpp"

namespace alphaexp {

/// Probability mass function j -> p_j on the positive integers.
///
/// Lebesgue and Gibbs laws are geometric, p_j = (1-r) r^{j-1}; for the Lebesgue law
/// r = 1/alpha and p_j = (alpha-1)/alpha^j is exactly the first-level cylinder length.
/// Finite laws carry an explicit table on {1, ..., M}.
class DigitLaw {
public:
    enum class Kind { lebesgue, gibbs, finite };

    static DigitLaw lebesgue(const AlphaParams& params);
    static DigitLaw gibbs(GibbsParams gp, const AlphaParams& params);
    /// weights[j-1] = p_j; must be positive and sum to 1 within 1e-12.
    static DigitLaw finite(std::vector<double> weights);

    Kind kind() const noexcept { return kind_; }
    /// Geometric ratio r (geometric kinds only).
    double ratio() const;
    /// Largest digit with positive mass, 0 when unbounded.
    std::uint32_t support_max() const noexcept;

    double mass(std::uint32_t digit) const;
    /// log p_j; -infinity outside the support.
    double log_mass(std::uint32_t digit) const;
    double total_mass() const;
    double mean() const;
    double variance() const;

    /// log of the product mass of a prefix; throws std::domain_error on a zero-mass digit.
    double log_prefix_mass(const DigitPrefix& prefix) const;

    /// Inverse CDF: the digit j with F(j-1) < u <= F(j), u in (0,1].
    std::uint32_t quantile(double u) const;
    /// The digit j with S(j) < v <= S(j-1), S = 1 - F; used by the sampler, v in (0,1].
    std::uint32_t survival_quantile(double v) const;

private:
    DigitLaw() = default;

    Kind kind_ = Kind::lebesgue;
    double log_r_ = 0.0;       // geometric kinds
    double log_1mr_ = 0.0;
    double log_am1_ = 0.0;     // lebesgue: log(alpha-1), log(alpha)
    double log_alpha_ = 0.0;
    std::vector<double> weights_;
    std::vector<double> cumulative_;
};

DigitLaw lebesgue_law(const AlphaParams& params);
DigitLaw gibbs_law(GibbsParams gp, const AlphaParams& params);

/// Seed of the independent stream `index` derived from `seed` (splitmix64).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// Digits are drawn in fixed-size chunks; chunk k uses stream_seed(seed, k), so the
/// result does not depend on how chunks are spread over worker threads.
inline constexpr std::size_t sample_chunk_size = 1u << 16;

/// n i.i.d. digits from the law, deterministic in `seed`.
DigitPrefix sample_digits(const DigitLaw& law, std::size_t n, std::uint64_t seed);

/// (1/n) sum d_i.
double birkhoff_mean(const DigitPrefix& prefix);

/// log mu(I(d_1..d_n)) / log |I(d_1..d_n)|.
double local_dimension(const DigitPrefix& prefix, const DigitLaw& law, const AlphaParams& params);

}  // namespace alphaexp
