#include "alphaexp/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

namespace alphaexp {

namespace {

constexpr std::uint32_t max_digit = std::numeric_limits<std::uint32_t>::max() - 1;

double unit_open_closed(std::mt19937_64& gen)
{
    return static_cast<double>((gen() >> 11) + 1) * 0x1p-53;
}

template <class Body>
void for_each_chunk(std::size_t chunks, Body body)
{
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min(hw, chunks);
    if (workers <= 1) {
        for (std::size_t k = 0; k < chunks; ++k) {
            body(k);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([=, &body] {
            for (std::size_t k = w; k < chunks; k += workers) {
                body(k);
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
}

}  // namespace

DigitLaw DigitLaw::lebesgue(const AlphaParams& params)
{
    DigitLaw law;
    law.kind_ = Kind::lebesgue;
    law.log_r_ = -params.log_alpha();
    law.log_1mr_ = params.log_alpha_minus_one() - params.log_alpha();
    law.log_am1_ = params.log_alpha_minus_one();
    law.log_alpha_ = params.log_alpha();
    return law;
}

DigitLaw DigitLaw::gibbs(GibbsParams gp, const AlphaParams& params)
{
    if (!std::isfinite(gp.t) || !std::isfinite(gp.q) || !gp.admissible(params)) {
        throw std::domain_error("gibbs law: inadmissible (t,q)");
    }
    DigitLaw law;
    law.kind_ = Kind::gibbs;
    law.log_r_ = gp.log_ratio(params);
    law.log_1mr_ = std::log(-std::expm1(law.log_r_));
    return law;
}

DigitLaw DigitLaw::finite(std::vector<double> weights)
{
    if (weights.empty()) {
        throw std::domain_error("finite law: empty table");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw std::domain_error("finite law: weights must be positive");
        }
        total += w;
    }
    if (std::fabs(total - 1.0) > 1e-12) {
        throw std::domain_error("finite law: weights must sum to 1");
    }
    DigitLaw law;
    law.kind_ = Kind::finite;
    law.cumulative_.resize(weights.size());
    std::partial_sum(weights.begin(), weights.end(), law.cumulative_.begin());
    law.weights_ = std::move(weights);
    return law;
}

double DigitLaw::ratio() const
{
    if (kind_ == Kind::finite) {
        throw std::logic_error("finite law has no geometric ratio");
    }
    return std::exp(log_r_);
}

std::uint32_t DigitLaw::support_max() const noexcept
{
    return kind_ == Kind::finite ? static_cast<std::uint32_t>(weights_.size()) : 0;
}

double DigitLaw::log_mass(std::uint32_t digit) const
{
    if (digit < 1) {
        return -std::numeric_limits<double>::infinity();
    }
    switch (kind_) {
    case Kind::lebesgue: return log_am1_ - static_cast<double>(digit) * log_alpha_;
    case Kind::gibbs: return log_1mr_ + static_cast<double>(digit - 1) * log_r_;
    case Kind::finite:
        if (digit > weights_.size()) {
            return -std::numeric_limits<double>::infinity();
        }
        return std::log(weights_[digit - 1]);
    }
    return -std::numeric_limits<double>::infinity();
}

double DigitLaw::mass(std::uint32_t digit) const
{
    if (kind_ == Kind::finite) {
        return digit >= 1 && digit <= weights_.size() ? weights_[digit - 1] : 0.0;
    }
    return std::exp(log_mass(digit));
}

double DigitLaw::total_mass() const
{
    return kind_ == Kind::finite ? cumulative_.back() : 1.0;
}

double DigitLaw::mean() const
{
    if (kind_ != Kind::finite) {
        return -1.0 / std::expm1(log_r_);
    }
    double m = 0.0;
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        m += static_cast<double>(j + 1) * weights_[j];
    }
    return m;
}

double DigitLaw::variance() const
{
    if (kind_ != Kind::finite) {
        const double one_minus_r = -std::expm1(log_r_);
        return std::exp(log_r_) / (one_minus_r * one_minus_r);
    }
    const double m = mean();
    double v = 0.0;
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        const double dev = static_cast<double>(j + 1) - m;
        v += dev * dev * weights_[j];
    }
    return v;
}

double DigitLaw::log_prefix_mass(const DigitPrefix& prefix) const
{
    const auto n = static_cast<double>(prefix.size());
    const auto s = static_cast<double>(prefix.digit_sum());
    switch (kind_) {
    case Kind::lebesgue: return n * log_am1_ - s * log_alpha_;
    case Kind::gibbs: return n * log_1mr_ + (s - n) * log_r_;
    case Kind::finite: {
        double acc = 0.0;
        for (auto d : prefix.digits()) {
            if (d > weights_.size()) {
                throw std::domain_error("digit outside the support of the law");
            }
            acc += std::log(weights_[d - 1]);
        }
        return acc;
    }
    }
    return 0.0;
}

std::uint32_t DigitLaw::quantile(double u) const
{
    if (!(u > 0.0 && u <= 1.0)) {
        throw std::domain_error("quantile: u must lie in (0,1]");
    }
    if (kind_ == Kind::finite) {
        const double target = u * cumulative_.back();
        const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), target);
        const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
        return static_cast<std::uint32_t>(std::min(idx, weights_.size() - 1) + 1);
    }
    // F(j) = 1 - r^j, so J is the least j with r^j <= 1 - u
    const double k = std::ceil(std::log1p(-u) / log_r_);
    if (!(k < static_cast<double>(max_digit))) {
        return max_digit;
    }
    return static_cast<std::uint32_t>(std::max(k, 1.0));
}

std::uint32_t DigitLaw::survival_quantile(double v) const
{
    if (!(v > 0.0 && v <= 1.0)) {
        throw std::domain_error("survival_quantile: v must lie in (0,1]");
    }
    if (kind_ == Kind::finite) {
        const double target = (1.0 - v) * cumulative_.back();
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
        const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
        return static_cast<std::uint32_t>(std::min(idx, weights_.size() - 1) + 1);
    }
    // P(J > k) = r^k, so J = 1 + floor(log v / log r)
    const double k = std::floor(std::log(v) / log_r_);
    if (!(k < static_cast<double>(max_digit))) {
        return max_digit;
    }
    return static_cast<std::uint32_t>(k) + 1;
}

DigitLaw lebesgue_law(const AlphaParams& params)
{
    return DigitLaw::lebesgue(params);
}

DigitLaw gibbs_law(GibbsParams gp, const AlphaParams& params)
{
    return DigitLaw::gibbs(gp, params);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

DigitPrefix sample_digits(const DigitLaw& law, std::size_t n, std::uint64_t seed)
{
    if (n < 1) {
        throw std::domain_error("sample_digits: n must be >= 1");
    }
    std::vector<DigitPrefix::digit_type> digits(n);
    const std::size_t chunks = (n + sample_chunk_size - 1) / sample_chunk_size;
    for_each_chunk(chunks, [&](std::size_t k) {
        std::mt19937_64 gen(stream_seed(seed, k));
        const std::size_t begin = k * sample_chunk_size;
        const std::size_t end = std::min(n, begin + sample_chunk_size);
        for (std::size_t i = begin; i < end; ++i) {
            digits[i] = law.survival_quantile(unit_open_closed(gen));
        }
    });
    return DigitPrefix(std::move(digits));
}

double birkhoff_mean(const DigitPrefix& prefix)
{
    if (prefix.empty()) {
        throw std::domain_error("birkhoff_mean: empty prefix");
    }
    return static_cast<double>(prefix.digit_sum()) / static_cast<double>(prefix.size());
}

double local_dimension(const DigitPrefix& prefix, const DigitLaw& law, const AlphaParams& params)
{
    if (prefix.empty()) {
        throw std::domain_error("local_dimension: empty prefix");
    }
    return law.log_prefix_mass(prefix) / log_cylinder_length(prefix, params);
}

}  // namespace alphaexp
