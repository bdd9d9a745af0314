#include "alphaexp/levelsets.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "alphaexp/spectra.hpp"

namespace alphaexp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t builtin_free_index(double mu, std::uint64_t n)
{
    if (n == 0) {
        return 0;
    }
    return n + ceil_sqrt(2.0L * static_cast<long double>(mu) * static_cast<long double>(n));
}

/// Number of free indices in {1..k} for the builtin rule.
std::uint64_t builtin_free_count(double mu, std::uint64_t k)
{
    std::uint64_t lo = 0;   // builtin_free_index(lo) <= k
    std::uint64_t hi = k + 1;
    while (lo + 1 < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (builtin_free_index(mu, mid) <= k) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

}  // namespace

std::uint64_t ceil_sqrt(long double v)
{
    if (!(v >= 0.0L)) {
        throw std::domain_error("ceil_sqrt: negative argument");
    }
    auto s = static_cast<std::uint64_t>(std::ceil(std::sqrt(v)));
    while (s > 0 && static_cast<long double>(s - 1) * static_cast<long double>(s - 1) >= v) {
        --s;
    }
    while (static_cast<long double>(s) * static_cast<long double>(s) < v) {
        ++s;
    }
    return s;
}

SubsequencePattern::SubsequencePattern(Rule rule, double mu, std::string description)
    : rule_(std::move(rule)), mu_(mu), description_(std::move(description))
{
}

SubsequencePattern SubsequencePattern::builtin_example(double mu)
{
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        throw std::domain_error("builtin pattern: mu must be >= 0");
    }
    std::ostringstream os;
    os << "builtin-example: k_n = n + ceil(sqrt(2*" << mu << "*n)), f(i) = i";
    return SubsequencePattern(Builtin{mu}, mu, os.str());
}

SubsequencePattern SubsequencePattern::even_indices(std::uint32_t value, double mu)
{
    if (value < 1) {
        throw std::domain_error("pattern values must be >= 1");
    }
    return SubsequencePattern(EvenIndices{value}, mu,
                              "even-indices: I = 2N, f = " + std::to_string(value));
}

SubsequencePattern SubsequencePattern::explicit_list(std::vector<std::uint64_t> indices,
                                                     std::vector<std::uint32_t> values, double mu)
{
    if (indices.size() != values.size()) {
        throw std::invalid_argument("explicit pattern: indices and values differ in length");
    }
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] < 1 || (i && indices[i] <= indices[i - 1])) {
            throw std::domain_error("explicit pattern: indices must be strictly increasing and >= 1");
        }
        if (values[i] < 1 || (i && values[i] < values[i - 1])) {
            throw std::domain_error("explicit pattern: values must be increasing and >= 1");
        }
    }
    const std::string desc = "explicit-list: " + std::to_string(indices.size()) + " constrained indices";
    return SubsequencePattern(ExplicitList{std::move(indices), std::move(values)}, mu, desc);
}

SubsequencePattern SubsequencePattern::unconstrained(double mu)
{
    return SubsequencePattern(ExplicitList{}, mu, "unconstrained: I = {}");
}

bool SubsequencePattern::constrained(std::uint64_t index) const
{
    if (index < 1) {
        throw std::domain_error("indices are 1-based");
    }
    return constrained_count(index) != constrained_count(index - 1);
}

std::uint64_t SubsequencePattern::constrained_count(std::uint64_t k) const
{
    return std::visit(overloaded{
                          [k](const Builtin& b) { return k - builtin_free_count(b.mu, k); },
                          [k](const EvenIndices&) { return k / 2; },
                          [k](const ExplicitList& e) {
                              return static_cast<std::uint64_t>(
                                  std::upper_bound(e.indices.begin(), e.indices.end(), k)
                                  - e.indices.begin());
                          },
                      },
                      rule_);
}

std::uint32_t SubsequencePattern::value_at_rank(std::uint64_t rank) const
{
    if (rank < 1) {
        throw std::domain_error("ranks are 1-based");
    }
    return std::visit(overloaded{
                          [rank](const Builtin&) {
                              if (rank > 0xFFFFFFFFull) {
                                  throw std::overflow_error("prescribed digit exceeds 32 bits");
                              }
                              return static_cast<std::uint32_t>(rank);
                          },
                          [](const EvenIndices& e) { return e.value; },
                          [rank](const ExplicitList& e) {
                              if (rank > e.values.size()) {
                                  throw std::out_of_range("rank beyond the explicit list");
                              }
                              return e.values[rank - 1];
                          },
                      },
                      rule_);
}

std::uint64_t SubsequencePattern::value_sum(std::uint64_t count) const
{
    return std::visit(overloaded{
                          [count](const Builtin&) { return count * (count + 1) / 2; },
                          [count](const EvenIndices& e) { return count * e.value; },
                          [count](const ExplicitList& e) {
                              if (count > e.values.size()) {
                                  throw std::out_of_range("count beyond the explicit list");
                              }
                              std::uint64_t s = 0;
                              for (std::uint64_t i = 0; i < count; ++i) {
                                  s += e.values[i];
                              }
                              return s;
                          },
                      },
                      rule_);
}

std::uint64_t k_of_n(const SubsequencePattern& pattern, std::uint64_t n)
{
    if (n < 1) {
        throw std::domain_error("k_of_n: n must be >= 1");
    }
    // least fixed point of k = n + |I ∩ {1..k}|
    std::uint64_t k = n;
    for (;;) {
        const std::uint64_t next = n + pattern.constrained_count(k);
        if (next == k) {
            return k;
        }
        k = next;
    }
}

MuEstimate mu_estimate(const SubsequencePattern& pattern, std::uint64_t n)
{
    const std::uint64_t k = k_of_n(pattern, n);
    const auto dn = static_cast<double>(n);
    return {static_cast<double>(k) / dn, static_cast<double>(pattern.value_sum(k - n)) / dn};
}

HypothesisReport check_hypotheses(const SubsequencePattern& pattern, std::uint64_t depth,
                                  double ratio_tol, double mu_tol)
{
    HypothesisReport report{true, {}, {}, {}};
    for (std::uint64_t n = depth; n >= 1 && report.ladder.size() < 4; n /= 10) {
        report.ladder.insert(report.ladder.begin(), n);
    }
    for (std::uint64_t n : report.ladder) {
        report.estimates.push_back(mu_estimate(pattern, n));
    }
    if (report.estimates.size() < 2) {
        report.admissible = false;
        report.reason = "validation depth too small";
        return report;
    }
    const auto& e = report.estimates;
    const std::size_t last = e.size() - 1;
    if (e[last].kn_ratio - 1.0 > ratio_tol) {
        report.admissible = false;
        report.reason = "k_n/n does not approach 1";
        return report;
    }
    for (std::size_t i = 1; i < e.size(); ++i) {
        if (e[i].kn_ratio > e[i - 1].kn_ratio + 1e-12) {
            report.admissible = false;
            report.reason = "k_n/n is not settling";
            return report;
        }
    }
    // Cauchy test over the last decade; the ceilings in k_n make earlier increments uneven.
    const double step = std::fabs(e[last].mu_n - e[last - 1].mu_n);
    if (step > mu_tol * std::max(1.0, std::fabs(e[last].mu_n))) {
        report.admissible = false;
        report.reason = "mu_n is not Cauchy at the validation depth";
    }
    return report;
}

DigitLaw bm_free_law(double mu, std::uint64_t M, const AlphaParams& params)
{
    const double d = subseq_dimension_finite(mu, M, params);
    std::vector<double> weights(M);
    for (std::uint64_t j = 1; j <= M; ++j) {
        weights[j - 1] = std::exp(
            d * (params.log_alpha_minus_one() - (static_cast<double>(j) + mu) * params.log_alpha()));
    }
    return DigitLaw::finite(std::move(weights));
}

DigitPrefix sample_bm(const SubsequencePattern& pattern, std::uint64_t M, const AlphaParams& params,
                      std::size_t n_total, std::uint64_t seed)
{
    if (M < 1) {
        throw std::domain_error("sample_bm: M must be >= 1");
    }
    const std::uint64_t n_free = n_total - pattern.constrained_count(n_total);
    std::vector<DigitPrefix::digit_type> free_digits;
    if (n_free > 0) {
        free_digits = sample_digits(bm_free_law(pattern.mu(), M, params), n_free, seed).digits();
    }
    std::vector<DigitPrefix::digit_type> out;
    out.reserve(n_total);
    std::uint64_t rank = 0;
    std::size_t next_free = 0;
    for (std::uint64_t i = 1; i <= n_total; ++i) {
        if (pattern.constrained(i)) {
            out.push_back(pattern.value_at_rank(++rank));
        } else {
            out.push_back(free_digits[next_free++]);
        }
    }
    return DigitPrefix(std::move(out));
}

double bm_local_dimension(const DigitPrefix& prefix, const SubsequencePattern& pattern, double mu,
                          std::uint64_t M, const AlphaParams& params)
{
    std::uint64_t rank = 0;
    std::uint64_t n_free = 0;
    std::uint64_t free_sum = 0;
    std::size_t k_n = 0;   // index of the last free position
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        const auto d = prefix[i];
        if (pattern.constrained(i + 1)) {
            if (d != pattern.value_at_rank(++rank)) {
                throw std::invalid_argument("prefix disagrees with the pattern at index "
                                            + std::to_string(i + 1));
            }
        } else {
            if (d > M) {
                throw std::domain_error("free digit exceeds M (zero mass)");
            }
            ++n_free;
            free_sum += d;
            k_n = i + 1;
        }
    }
    if (n_free == 0) {
        throw std::domain_error("bm_local_dimension: prefix has no free positions");
    }
    const double d_M = subseq_dimension_finite(mu, M, params);
    const auto n = static_cast<double>(n_free);
    const double log_mass = d_M
        * (n * params.log_alpha_minus_one()
           - (static_cast<double>(free_sum) + n * mu) * params.log_alpha());
    return log_mass / log_cylinder_length(prefix.first(k_n), params);
}

namespace {

std::string_view strip(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::uint64_t parse_count(std::string_view key, std::string_view v)
{
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) {
        throw std::invalid_argument("pattern config: bad integer for '" + std::string(key) + "'");
    }
    return out;
}

template <class Int>
std::vector<Int> parse_list(std::string_view key, std::string_view v)
{
    std::vector<Int> out;
    while (!v.empty()) {
        const auto comma = v.find(',');
        const std::uint64_t x = parse_count(key, strip(v.substr(0, comma)));
        if (x > std::numeric_limits<Int>::max()) {
            throw std::out_of_range("pattern config: value too large in '" + std::string(key) + "'");
        }
        out.push_back(static_cast<Int>(x));
        if (comma == std::string_view::npos) {
            break;
        }
        v.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

PatternConfig parse_pattern_config(std::string_view text)
{
    std::string kind = "builtin-example";
    double mu = 1.0;
    std::uint64_t M = 0;
    std::uint64_t depth = 10'000'000;
    std::vector<std::uint64_t> indices;
    std::vector<std::uint32_t> values;

    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = strip(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("pattern config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string_view key = strip(line.substr(0, eq));
        const std::string_view val = strip(line.substr(eq + 1));
        if (key == "kind") {
            kind = std::string(val);
        } else if (key == "mu") {
            mu = parse_rational(val).get_d();
        } else if (key == "M") {
            M = parse_count(key, val);
        } else if (key == "depth") {
            depth = parse_count(key, val);
        } else if (key == "indices") {
            indices = parse_list<std::uint64_t>(key, val);
        } else if (key == "values") {
            values = parse_list<std::uint32_t>(key, val);
        } else {
            throw std::invalid_argument("pattern config: unknown key '" + std::string(key) + "'");
        }
    }

    auto make = [&]() {
        if (kind == "builtin-example") {
            return SubsequencePattern::builtin_example(mu);
        }
        if (kind == "explicit-list") {
            return SubsequencePattern::explicit_list(indices, values, mu);
        }
        if (kind == "even-indices") {
            return SubsequencePattern::even_indices(values.empty() ? 1u : values.front(), mu);
        }
        if (kind == "unconstrained") {
            return SubsequencePattern::unconstrained(mu);
        }
        throw std::invalid_argument("pattern config: unknown kind '" + kind + "'");
    };
    return PatternConfig{make(), M, depth};
}

}  // namespace alphaexp
